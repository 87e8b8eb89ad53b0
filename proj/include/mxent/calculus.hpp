#pragma once

// Spectral functional calculus: f(A), divided differences, Loewner matrices
// and first Frechet derivatives of matrix functions.

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mxent/errors.hpp"
#include "mxent/linalg.hpp"

namespace mxent {

/// A real function on (0, inf) together with its first two derivatives.
struct ScalarFunction {
  using Fn = std::function<double(double)>;

  std::string name;
  Fn f;
  Fn f1;
  Fn f2;
  std::vector<double> params;
  // Optional exact Tr f(A) that bypasses the eigendecomposition.
  std::function<double(const HermitianMatrix&)> trace_shortcut = {};

  /// f(t) = t log t. The canonical matrix entropy.
  static ScalarFunction t_log_t() {
    return {"t_log_t", [](double t) { return t * std::log(t); },
            [](double t) { return std::log(t) + 1.0; }, [](double t) { return 1.0 / t; }, {}};
  }

  /// f(t) = t^p for p in [1, 2].
  static ScalarFunction power(double p) {
    if (!(p >= 1.0 && p <= 2.0))
      throw InputError("power: exponent must lie in [1, 2], got " + std::to_string(p));
    return {"power", [p](double t) { return std::pow(t, p); },
            [p](double t) { return p * std::pow(t, p - 1.0); },
            [p](double t) { return p == 1.0 ? 0.0 : p * (p - 1.0) * std::pow(t, p - 2.0); },
            {p}};
  }

  static ScalarFunction log() {
    return {"log", [](double t) { return std::log(t); }, [](double t) { return 1.0 / t; },
            [](double t) { return -1.0 / (t * t); }, {}};
  }

  static ScalarFunction identity() {
    return {"identity", [](double t) { return t; }, [](double) { return 1.0; },
            [](double) { return 0.0; }, {}, [](const HermitianMatrix& a) { return a.trace(); }};
  }

  static ScalarFunction square() {
    return {"square", [](double t) { return t * t; }, [](double t) { return 2.0 * t; },
            [](double) { return 2.0; }, {}};
  }

  /// f(t) = t^3. Not a matrix entropy; kept for falsification runs.
  static ScalarFunction cube() {
    return {"cube", [](double t) { return t * t * t; }, [](double t) { return 3.0 * t * t; },
            [](double t) { return 6.0 * t; }, {}};
  }

  /// Look up a built-in by name. `p` is used by "power" only.
  static ScalarFunction by_name(const std::string& name, double p = 1.5) {
    if (name == "t_log_t") return t_log_t();
    if (name == "power") return power(p);
    if (name == "log") return log();
    if (name == "identity") return identity();
    if (name == "square") return square();
    if (name == "cube") return cube();
    throw InputError("unknown function '" + name + "'");
  }

  /// Human-readable label including parameters, e.g. "power(1.5)".
  std::string label() const {
    if (params.empty()) return name;
    std::ostringstream os;
    os << name << '(';
    for (std::size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << params[i];
    os << ')';
    return os.str();
  }
};

/// Selects f or f' of a ScalarFunction for first-order calculus.
enum class Which { f, f1 };

inline void require_positive_spectrum(const RealVector& eigenvalues, const char* what) {
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (!(eigenvalues(i) > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << what << ": eigenvalue " << i << " = " << eigenvalues(i)
         << " is not strictly positive";
      throw DomainError(os.str());
    }
  }
}

/// U diag(g(lambda_i)) U* for an arbitrary callable g.
template <class Fn>
HermitianMatrix spectral_map(Fn&& g, const SpectralDecomposition& spec) {
  RealVector values(spec.dim());
  for (Eigen::Index i = 0; i < spec.dim(); ++i) values(i) = g(spec.eigenvalues(i));
  return HermitianMatrix(spec.basis * values.cast<Complex>().asDiagonal() * spec.basis.adjoint());
}

inline HermitianMatrix matrix_function(const ScalarFunction& fn, const HermitianMatrix& a) {
  const auto spec = eigh(a);
  require_positive_spectrum(spec.eigenvalues, "matrix_function");
  return spectral_map(fn.f, spec);
}

/// Trace of f(A), evaluated from the spectrum.
inline double trace_function(const ScalarFunction& fn, const HermitianMatrix& a) {
  if (fn.trace_shortcut) return fn.trace_shortcut(a);
  const auto spec = eigh(a);
  require_positive_spectrum(spec.eigenvalues, "trace_function");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < spec.dim(); ++i) sum += fn.f(spec.eigenvalues(i));
  return sum;
}

/// Relative gap below which a divided difference is replaced by the
/// derivative at the midpoint.
inline constexpr double kConfluentThreshold = 1e-7;

/// First divided difference (g(t) - g(s)) / (t - s), with confluent value
/// dg((s + t) / 2) when |t - s| <= kConfluentThreshold * max(s, t).
template <class G, class DG>
double divided_difference(G&& g, DG&& dg, double s, double t) {
  if (!(s > 0.0) || !(t > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "divided_difference: arguments must be positive, got (" << s << ", " << t << ")";
    throw DomainError(os.str());
  }
  if (std::abs(t - s) > kConfluentThreshold * std::max(s, t)) return (g(t) - g(s)) / (t - s);
  return dg(0.5 * (s + t));
}

/// Matrix of divided differences of g over pairs of eigenvalues.
struct LoewnerMatrix {
  RealVector eigenvalues;
  RealMatrix entries;
};

inline LoewnerMatrix loewner(const ScalarFunction& fn, Which which,
                             const SpectralDecomposition& spec) {
  require_positive_spectrum(spec.eigenvalues, "loewner");
  const auto& g = which == Which::f ? fn.f : fn.f1;
  const auto& dg = which == Which::f ? fn.f1 : fn.f2;
  const Eigen::Index n = spec.dim();
  LoewnerMatrix out{spec.eigenvalues, RealMatrix(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    out.entries(j, j) = dg(spec.eigenvalues(j));
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = divided_difference(g, dg, spec.eigenvalues(j), spec.eigenvalues(i));
      out.entries(i, j) = v;
      out.entries(j, i) = v;
    }
  }
  return out;
}

namespace detail {
inline void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& h, const char* what) {
  if (a.dim() != h.dim())
    throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                     " vs " + std::to_string(h.dim()) + ")");
}
}  // namespace detail

/// Frechet derivative of A -> g(A) in direction H, where g is f or f'.
/// In the eigenbasis of A it is the Schur product of the Loewner matrix
/// with U* H U.
inline HermitianMatrix frechet_derivative(const ScalarFunction& fn, Which which,
                                          const HermitianMatrix& a, const HermitianMatrix& h) {
  detail::require_same_dim(a, h, "frechet_derivative");
  const auto spec = eigh(a);
  const auto k = loewner(fn, which, spec);
  const Matrix rotated = spec.basis.adjoint() * h.matrix() * spec.basis;
  const Matrix weighted = k.entries.cast<Complex>().cwiseProduct(rotated);
  return HermitianMatrix(spec.basis * weighted * spec.basis.adjoint());
}

/// Tr H* Df'(A)[H] = sum_ij |(U* H U)_ij|^2 f'^[1](lambda_i, lambda_j).
inline double quad_form(const ScalarFunction& fn, const HermitianMatrix& a,
                        const HermitianMatrix& h) {
  detail::require_same_dim(a, h, "quad_form");
  const auto spec = eigh(a);
  const auto k = loewner(fn, Which::f1, spec);
  const Matrix rotated = spec.basis.adjoint() * h.matrix() * spec.basis;
  double sum = 0.0;
  for (Eigen::Index j = 0; j < rotated.cols(); ++j)
    for (Eigen::Index i = 0; i < rotated.rows(); ++i)
      sum += std::norm(rotated(i, j)) * k.entries(i, j);
  return sum;
}

}  // namespace mxent
