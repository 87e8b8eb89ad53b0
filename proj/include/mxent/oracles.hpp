#pragma once

// Reference computations that share no code path with the spectral
// Loewner machinery: quadrature over resolvents and finite differences.

#include <cstddef>

#include "mxent/calculus.hpp"
#include "mxent/linalg.hpp"
#include "mxent/quadrature.hpp"

namespace mxent::oracle {

/// (log t - log s) / (t - s) as the integral over [0, 1] of
/// (lambda t + (1 - lambda) s)^{-1}.
inline double log_kernel_quadrature(double s, double t, std::size_t nodes = 64) {
  const auto rule = gauss_legendre(nodes);
  return integrate_unit(rule, [s, t](double lam) { return 1.0 / (lam * t + (1.0 - lam) * s); });
}

/// Tr H* D log(A)[H] as the integral over [0, inf) of
/// Tr H (A + lambda)^{-1} H (A + lambda)^{-1}, with lambda = u / (1 - u).
/// Equals quad_form(t_log_t, A, H) since (t log t)' = log t + 1.
inline double log_quad_form_resolvent(const HermitianMatrix& a, const HermitianMatrix& h,
                                      std::size_t nodes = 128) {
  if (a.dim() != h.dim()) throw InputError("log_quad_form_resolvent: dimension mismatch");
  const auto rule = gauss_legendre(nodes);
  const Eigen::Index n = a.dim();
  const Matrix id = Matrix::Identity(n, n);
  return integrate_unit(rule, [&](double u) {
    const double lam = u / (1.0 - u);
    const double jac = 1.0 / ((1.0 - u) * (1.0 - u));
    Eigen::LLT<Matrix> llt(a.matrix() + lam * id);
    if (llt.info() != Eigen::Success)
      throw DomainError("log_quad_form_resolvent: A + lambda is not positive definite");
    const Matrix r = llt.solve(id);
    const Matrix hr = h.matrix() * r;
    return (hr * hr).trace().real() * jac;
  });
}

/// Central difference (g(A + eps H) - g(A - eps H)) / (2 eps).
inline Matrix frechet_central_difference(const ScalarFunction::Fn& g, const HermitianMatrix& a,
                                         const HermitianMatrix& h, double eps) {
  auto eval = [&g](const HermitianMatrix& x) {
    const auto spec = eigh(x);
    require_positive_spectrum(spec.eigenvalues, "frechet_central_difference");
    return spectral_map(g, spec).matrix();
  };
  return (eval(a + eps * h) - eval(a - eps * h)) / (2.0 * eps);
}

}  // namespace mxent::oracle
