#pragma once

// Mixed-unitary channels X -> sum_i p_i u_i* X u_i, including the
// conditional expectations used as test subjects: pinchings and pi_1.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mxent/bipartite.hpp"
#include "mxent/errors.hpp"
#include "mxent/linalg.hpp"
#include "mxent/rng.hpp"

namespace mxent {

class MixedUnitaryChannel {
 public:
  struct Term {
    double weight;
    Matrix unitary;
  };

  static constexpr double kWeightTolerance = 1e-12;
  static constexpr double kUnitarityTolerance = 1e-10;
  static constexpr double kIdempotenceTolerance = 1e-8;

  MixedUnitaryChannel(Eigen::Index dim, std::vector<Term> terms, std::string kind = "mixed_unitary")
      : dim_(dim), terms_(std::move(terms)), kind_(std::move(kind)) {
    if (dim_ < 1) throw InputError("MixedUnitaryChannel: dim must be positive");
    if (terms_.empty()) throw InputError("MixedUnitaryChannel: no terms");
    double total = 0.0;
    const Matrix id = Matrix::Identity(dim_, dim_);
    for (const auto& t : terms_) {
      if (!(t.weight >= 0.0)) throw InputError("MixedUnitaryChannel: negative weight");
      if (t.unitary.rows() != dim_ || t.unitary.cols() != dim_)
        throw InputError("MixedUnitaryChannel: unitary has wrong dimension");
      if ((t.unitary.adjoint() * t.unitary - id).norm() > kUnitarityTolerance)
        throw InputError("MixedUnitaryChannel: term is not unitary");
      total += t.weight;
    }
    if (std::abs(total - 1.0) > kWeightTolerance)
      throw InputError("MixedUnitaryChannel: weights sum to " + std::to_string(total));
    is_conditional_expectation_ = idempotence_residual() <= kIdempotenceTolerance;
  }

  Eigen::Index dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::string& kind() const { return kind_; }
  bool is_conditional_expectation() const { return is_conditional_expectation_; }

  Matrix operator()(const Matrix& x) const {
    require_square(x, "apply_channel");
    if (x.rows() != dim_)
      throw InputError("apply_channel: dimension mismatch (" + std::to_string(x.rows()) + " vs " +
                       std::to_string(dim_) + ")");
    Matrix out = Matrix::Zero(dim_, dim_);
    for (const auto& t : terms_) out.noalias() += t.weight * (t.unitary.adjoint() * x * t.unitary);
    return out;
  }

  HermitianMatrix operator()(const HermitianMatrix& x) const {
    return HermitianMatrix((*this)(x.matrix()));
  }

  /// Probe inputs: every matrix unit for dim <= 8, otherwise 2*dim fixed
  /// Gaussian matrices (a generic spanning sample for a linear map check).
  std::vector<Matrix> probe_basis() const {
    std::vector<Matrix> probes;
    if (dim_ <= 8) {
      for (Eigen::Index i = 0; i < dim_; ++i)
        for (Eigen::Index j = 0; j < dim_; ++j) {
          Matrix e = Matrix::Zero(dim_, dim_);
          e(i, j) = 1.0;
          probes.push_back(std::move(e));
        }
    } else {
      RngStream rng(0x5eed, static_cast<std::uint64_t>(dim_));
      for (Eigen::Index k = 0; k < 2 * dim_; ++k) probes.push_back(random_gaussian_matrix(dim_, rng));
    }
    return probes;
  }

  /// max over probes of ||Phi(Phi(X)) - Phi(X)||_F.
  double idempotence_residual() const {
    double worst = 0.0;
    for (const auto& p : probe_basis()) {
      const Matrix once = (*this)(p);
      worst = std::max(worst, ((*this)(once) - once).norm());
    }
    return worst;
  }

 private:
  Eigen::Index dim_;
  std::vector<Term> terms_;
  std::string kind_;
  bool is_conditional_expectation_ = false;
};

inline Matrix apply_channel(const MixedUnitaryChannel& phi, const Matrix& x) { return phi(x); }
inline HermitianMatrix apply_channel(const MixedUnitaryChannel& phi, const HermitianMatrix& x) {
  return phi(x);
}

inline MixedUnitaryChannel identity_channel(Eigen::Index dim) {
  return MixedUnitaryChannel(dim, {{1.0, Matrix::Identity(dim, dim)}}, "identity");
}

/// Generalized Pauli (clock and shift) operator X^j Z^k on C^d.
inline Matrix weyl_operator(Eigen::Index d, Eigen::Index j, Eigen::Index k) {
  Matrix w = Matrix::Zero(d, d);
  for (Eigen::Index m = 0; m < d; ++m) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((k * m) % d) /
                         static_cast<double>(d);
    w((m + j) % d, m) = std::polar(1.0, angle);
  }
  return w;
}

/// pi_1 written as the uniform average over the d2^2 unitaries 1 (x) X^j Z^k.
/// The Weyl operators form a unitary 1-design, so the average of
/// W* Y W over them is Tr(Y)/d2 times the identity on H2.
inline MixedUnitaryChannel pi_1_as_channel(const BipartiteSpace& space) {
  const Eigen::Index d2 = space.d2();
  const Matrix id1 = Matrix::Identity(space.d1(), space.d1());
  const double w = 1.0 / static_cast<double>(d2 * d2);
  std::vector<MixedUnitaryChannel::Term> terms;
  terms.reserve(static_cast<std::size_t>(d2 * d2));
  for (Eigen::Index j = 0; j < d2; ++j)
    for (Eigen::Index k = 0; k < d2; ++k) terms.push_back({w, kron(id1, weyl_operator(d2, j, k))});
  return MixedUnitaryChannel(space.dim(), std::move(terms), "pi_1");
}

inline constexpr int kMaxPinchingBlocks = 8;

/// Pinching onto the blocks of `labels` (block index per basis vector of the
/// rotated frame V), realized as an average of V D_s V* over the diagonal
/// sign unitaries D_s with block 0 fixed to +1.
inline MixedUnitaryChannel pinching(const Matrix& v, const std::vector<int>& labels) {
  require_square(v, "pinching");
  const Eigen::Index dim = v.rows();
  if (static_cast<Eigen::Index>(labels.size()) != dim)
    throw InputError("pinching: one block label per basis vector required");
  int blocks = 0;
  for (int l : labels) {
    if (l < 0) throw InputError("pinching: negative block label");
    blocks = std::max(blocks, l + 1);
  }
  if (blocks > kMaxPinchingBlocks)
    throw InputError("pinching: at most " + std::to_string(kMaxPinchingBlocks) + " blocks");
  const std::uint32_t patterns = 1u << (blocks - 1);
  const double w = 1.0 / static_cast<double>(patterns);
  std::vector<MixedUnitaryChannel::Term> terms;
  terms.reserve(patterns);
  for (std::uint32_t s = 0; s < patterns; ++s) {
    RealVector signs(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const int b = labels[static_cast<std::size_t>(i)];
      signs(i) = (b > 0 && ((s >> (b - 1)) & 1u)) ? -1.0 : 1.0;
    }
    terms.push_back({w, v * signs.cast<Complex>().asDiagonal() * v.adjoint()});
  }
  return MixedUnitaryChannel(dim, std::move(terms), "pinching");
}

/// Pinching in a Haar-random frame onto a random partition of the basis
/// into between 1 and min(dim, 8) nonempty blocks.
inline MixedUnitaryChannel random_pinching(Eigen::Index dim, RngStream& rng) {
  if (dim < 1) throw InputError("random_pinching: dim must be positive");
  const Matrix v = random_unitary(dim, rng);
  const auto max_blocks = std::min<Eigen::Index>(dim, kMaxPinchingBlocks);
  const auto blocks = static_cast<int>(rng.uniform_int(1, max_blocks));
  // Shuffle indices, then cut the shuffled list into `blocks` nonempty runs.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
  std::vector<bool> cut(static_cast<std::size_t>(dim), false);
  for (int placed = 0; placed < blocks - 1;) {
    const auto pos = static_cast<std::size_t>(rng.uniform_int(1, dim - 1));
    if (!cut[pos]) {
      cut[pos] = true;
      ++placed;
    }
  }
  std::vector<int> labels(static_cast<std::size_t>(dim));
  int current = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (cut[i]) ++current;
    labels[static_cast<std::size_t>(order[i])] = current;
  }
  return pinching(v, labels);
}

/// Random weights (normalized uniforms) on `n_terms` Haar unitaries.
inline MixedUnitaryChannel random_mixed_unitary(Eigen::Index dim, int n_terms, RngStream& rng) {
  if (n_terms < 1) throw InputError("random_mixed_unitary: need at least one term");
  std::vector<double> w(static_cast<std::size_t>(n_terms));
  double total = 0.0;
  for (auto& x : w) {
    x = rng.uniform(0.05, 1.0);
    total += x;
  }
  std::vector<MixedUnitaryChannel::Term> terms;
  for (double x : w) terms.push_back({x / total, random_unitary(dim, rng)});
  // Renormalize against rounding in the division.
  double sum = 0.0;
  for (const auto& t : terms) sum += t.weight;
  terms.front().weight += 1.0 - sum;
  return MixedUnitaryChannel(dim, std::move(terms), "mixed_unitary");
}

}  // namespace mxent
