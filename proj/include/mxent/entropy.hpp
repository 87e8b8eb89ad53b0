#pragma once

// Von Neumann entropy and the entropy-gap functional
//   G(rho) = d2^{-1} Tr f(d2 rho) - Tr f(rho_1),   rho_1 = Tr_2 rho,
// with its second differential by a spectral route and a finite-difference
// route.

#include <cmath>
#include <sstream>
#include <string>

#include "mxent/bipartite.hpp"
#include "mxent/calculus.hpp"
#include "mxent/errors.hpp"
#include "mxent/linalg.hpp"

namespace mxent {

/// S(rho) = -sum lambda_i log lambda_i. No trace normalization is assumed.
inline double von_neumann_entropy(const HermitianMatrix& rho) {
  const auto spec = eigh(rho);
  require_positive_spectrum(spec.eigenvalues, "von_neumann_entropy");
  double s = 0.0;
  for (Eigen::Index i = 0; i < spec.dim(); ++i) s -= spec.eigenvalues(i) * std::log(spec.eigenvalues(i));
  return s;
}

struct EntropyGapSpec {
  ScalarFunction function;
  BipartiteSpace space;
};

namespace detail {
inline void require_composite(const HermitianMatrix& x, const BipartiteSpace& space, const char* what) {
  if (x.dim() != space.dim())
    throw InputError(std::string(what) + ": expected dimension " + std::to_string(space.dim()) +
                     ", got " + std::to_string(x.dim()));
}
}  // namespace detail

inline double entropy_gap(const HermitianMatrix& rho, const EntropyGapSpec& spec) {
  detail::require_composite(rho, spec.space, "entropy_gap");
  const double d2 = static_cast<double>(spec.space.d2());
  return trace_function(spec.function, d2 * rho) / d2 -
         trace_function(spec.function, partial_trace_2(rho, spec.space));
}

/// d^2 G(rho)(h, h) = d2 Tr h Df'(d2 rho)[h] - Tr h_1 Df'(rho_1)[h_1].
inline double second_differential_spectral(const HermitianMatrix& rho, const HermitianMatrix& h,
                                           const EntropyGapSpec& spec) {
  detail::require_composite(rho, spec.space, "second_differential_spectral");
  detail::require_composite(h, spec.space, "second_differential_spectral");
  const double d2 = static_cast<double>(spec.space.d2());
  return d2 * quad_form(spec.function, d2 * rho, h) -
         quad_form(spec.function, partial_trace_2(rho, spec.space),
                   partial_trace_2(h, spec.space));
}

/// (G(rho + step h) - 2 G(rho) + G(rho - step h)) / step^2.
/// Throws DomainError when rho +/- step h leaves the positive definite cone.
inline double second_differential_fd(const HermitianMatrix& rho, const HermitianMatrix& h,
                                     const EntropyGapSpec& spec, double step) {
  if (!(step > 0.0)) throw InputError("second_differential_fd: step must be positive");
  detail::require_composite(rho, spec.space, "second_differential_fd");
  detail::require_composite(h, spec.space, "second_differential_fd");
  const HermitianMatrix plus = rho + step * h;
  const HermitianMatrix minus = rho - step * h;
  if (!(min_eigenvalue(plus) > 0.0) || !(min_eigenvalue(minus) > 0.0)) {
    std::ostringstream os;
    os << "second_differential_fd: rho +/- " << step
       << " h is not positive definite; reduce the step";
    throw DomainError(os.str());
  }
  return (entropy_gap(plus, spec) - 2.0 * entropy_gap(rho, spec) + entropy_gap(minus, spec)) /
         (step * step);
}

inline constexpr double kDefaultFdStep = 1e-4;
inline constexpr int kMaxStepHalvings = 10;

/// second_differential_fd, halving the step (at most kMaxStepHalvings
/// times) until rho +/- step h is positive definite.
inline double second_differential_fd_adaptive(const HermitianMatrix& rho, const HermitianMatrix& h,
                                              const EntropyGapSpec& spec,
                                              double step = kDefaultFdStep) {
  for (int k = 0;; ++k) {
    try {
      return second_differential_fd(rho, h, spec, step);
    } catch (const DomainError&) {
      if (k >= kMaxStepHalvings) throw;
      step *= 0.5;
    }
  }
}

}  // namespace mxent
