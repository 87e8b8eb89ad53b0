#pragma once

// Operators on H1 (x) H2: partial traces, embeddings and the conditional
// expectation onto B(H1) (x) 1.

#include <string>

#include "mxent/errors.hpp"
#include "mxent/linalg.hpp"

namespace mxent {

/// Dimensions of a bipartite space. Composite index (a, i) -> a * d2 + i.
class BipartiteSpace {
 public:
  BipartiteSpace(Eigen::Index d1, Eigen::Index d2) : d1_(d1), d2_(d2) {
    if (d1 < 1 || d2 < 1) throw InputError("BipartiteSpace: dimensions must be positive");
    if (d1 > kMaxDimension || d2 > kMaxDimension || d1 * d2 > kMaxDimension)
      throw InputError("BipartiteSpace: composite dimension " + std::to_string(d1) + "*" +
                       std::to_string(d2) + " exceeds " + std::to_string(kMaxDimension));
  }

  Eigen::Index d1() const { return d1_; }
  Eigen::Index d2() const { return d2_; }
  Eigen::Index dim() const { return d1_ * d2_; }

  friend bool operator==(const BipartiteSpace&, const BipartiteSpace&) = default;

 private:
  Eigen::Index d1_;
  Eigen::Index d2_;
};

namespace detail {
inline void require_dim(const Matrix& x, Eigen::Index n, const char* what) {
  require_square(x, what);
  if (x.rows() != n)
    throw InputError(std::string(what) + ": expected dimension " + std::to_string(n) + ", got " +
                     std::to_string(x.rows()));
}
}  // namespace detail

/// Tr_2 X: result(a, b) = sum_j X((a, j), (b, j)).
inline Matrix partial_trace_2(const Matrix& x, const BipartiteSpace& space) {
  detail::require_dim(x, space.dim(), "partial_trace_2");
  const Eigen::Index d1 = space.d1();
  const Eigen::Index d2 = space.d2();
  Matrix out = Matrix::Zero(d1, d1);
  for (Eigen::Index b = 0; b < d1; ++b)
    for (Eigen::Index a = 0; a < d1; ++a) out(a, b) = x.block(a * d2, b * d2, d2, d2).trace();
  return out;
}

inline HermitianMatrix partial_trace_2(const HermitianMatrix& x, const BipartiteSpace& space) {
  return HermitianMatrix(partial_trace_2(x.matrix(), space));
}

/// Tr_1 X: result(i, j) = sum_a X((a, i), (a, j)).
inline Matrix partial_trace_1(const Matrix& x, const BipartiteSpace& space) {
  detail::require_dim(x, space.dim(), "partial_trace_1");
  const Eigen::Index d1 = space.d1();
  const Eigen::Index d2 = space.d2();
  Matrix out = Matrix::Zero(d2, d2);
  for (Eigen::Index a = 0; a < d1; ++a) out += x.block(a * d2, a * d2, d2, d2);
  return out;
}

inline HermitianMatrix partial_trace_1(const HermitianMatrix& x, const BipartiteSpace& space) {
  return HermitianMatrix(partial_trace_1(x.matrix(), space));
}

/// A (x) 1_{d2}; the adjoint of partial_trace_2.
inline Matrix embed_1(const Matrix& a, const BipartiteSpace& space) {
  detail::require_dim(a, space.d1(), "embed_1");
  return kron(a, Matrix::Identity(space.d2(), space.d2()));
}

inline HermitianMatrix embed_1(const HermitianMatrix& a, const BipartiteSpace& space) {
  return HermitianMatrix(embed_1(a.matrix(), space));
}

/// Conditional expectation onto B(H1) (x) 1: pi_1(X) = d2^{-1} Tr_2(X) (x) 1.
/// Trace preserving and idempotent; d2 * pi_1(rho) = rho_1 (x) 1.
inline Matrix pi_1(const Matrix& x, const BipartiteSpace& space) {
  return embed_1(partial_trace_2(x, space), space) / static_cast<double>(space.d2());
}

inline HermitianMatrix pi_1(const HermitianMatrix& x, const BipartiteSpace& space) {
  return HermitianMatrix(pi_1(x.matrix(), space));
}

}  // namespace mxent
