#include <gtest/gtest.h>

#include "mxent/channel.hpp"
#include "test_support.hpp"

using namespace mxent;
using mxent::testing::MatrixNear;

namespace {

std::vector<Matrix> matrix_units(Eigen::Index n) {
  std::vector<Matrix> out;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      out.push_back(e);
    }
  return out;
}

void expect_trace_preserving_and_unital(const MixedUnitaryChannel& phi, RngStream& rng) {
  const Eigen::Index n = phi.dim();
  EXPECT_TRUE(MatrixNear(phi(Matrix(Matrix::Identity(n, n))), Matrix::Identity(n, n), 1e-10));
  for (int k = 0; k < 3; ++k) {
    const Matrix x = random_gaussian_matrix(n, rng);
    EXPECT_LE(std::abs(phi(x).trace() - x.trace()), 1e-10);
  }
  const auto h = random_hermitian(n, rng, 1.0);
  const Matrix y = phi(h.matrix());
  EXPECT_LE((y - y.adjoint()).norm(), 1e-12);
}

}  // namespace

TEST(MixedUnitaryChannel, Validation) {
  const Matrix id = Matrix::Identity(2, 2);
  EXPECT_THROW(MixedUnitaryChannel(2, {}), InputError);
  EXPECT_THROW(MixedUnitaryChannel(2, {{0.5, id}}), InputError);
  EXPECT_THROW(MixedUnitaryChannel(2, {{1.5, id}, {-0.5, id}}), InputError);
  EXPECT_THROW(MixedUnitaryChannel(2, {{1.0, Matrix(2.0 * id)}}), InputError);
  EXPECT_THROW(MixedUnitaryChannel(2, {{1.0, Matrix(Matrix::Identity(3, 3))}}), InputError);
}

TEST(MixedUnitaryChannel, IdentityChannel) {
  const auto phi = identity_channel(3);
  RngStream rng(1, 0);
  const Matrix x = random_gaussian_matrix(3, rng);
  EXPECT_EQ(phi(x), x);
  EXPECT_TRUE(phi.is_conditional_expectation());
  EXPECT_THROW(apply_channel(phi, Matrix(Matrix::Identity(2, 2))), InputError);
}

TEST(Pi1AsChannel, TrivialSecondFactor) {
  const auto phi = pi_1_as_channel(BipartiteSpace(3, 1));
  ASSERT_EQ(phi.terms().size(), 1u);
  EXPECT_TRUE(MatrixNear(phi.terms()[0].unitary, Matrix::Identity(3, 3), 0.0));
  RngStream rng(2, 0);
  const Matrix x = random_gaussian_matrix(3, rng);
  EXPECT_TRUE(MatrixNear(phi(x), x, 1e-15));
}

TEST(Pi1AsChannel, AgreesWithPi1OnMatrixUnits) {
  for (Eigen::Index d1 = 1; d1 <= 4; ++d1)
    for (Eigen::Index d2 = 1; d2 <= 4; ++d2) {
      const BipartiteSpace space(d1, d2);
      const auto phi = pi_1_as_channel(space);
      EXPECT_EQ(phi.terms().size(), static_cast<std::size_t>(d2 * d2));
      for (const auto& t : phi.terms()) EXPECT_DOUBLE_EQ(t.weight, 1.0 / static_cast<double>(d2 * d2));
      EXPECT_TRUE(phi.is_conditional_expectation()) << d1 << "x" << d2;
      for (const auto& e : matrix_units(space.dim()))
        EXPECT_TRUE(MatrixNear(phi(e), pi_1(e, space), 1e-10)) << d1 << "x" << d2;
    }
}

TEST(Pinching, SingleBlockIsIdentity) {
  RngStream rng(3, 0);
  const Matrix v = random_unitary(4, rng);
  const auto phi = pinching(v, {0, 0, 0, 0});
  EXPECT_EQ(phi.terms().size(), 1u);
  const Matrix x = random_gaussian_matrix(4, rng);
  EXPECT_TRUE(MatrixNear(phi(x), x, 1e-13));
}

TEST(Pinching, DiagonalPinching) {
  const auto phi = pinching(Matrix::Identity(4, 4), {0, 1, 2, 3});
  EXPECT_EQ(phi.terms().size(), 8u);
  RngStream rng(4, 0);
  const Matrix x = random_gaussian_matrix(4, rng);
  const Matrix diag = x.diagonal().asDiagonal();
  EXPECT_TRUE(MatrixNear(phi(x), diag, 1e-15));
  EXPECT_TRUE(phi.is_conditional_expectation());
}

TEST(Pinching, BlockStructure) {
  const auto phi = pinching(Matrix::Identity(4, 4), {1, 0, 1, 0});
  RngStream rng(5, 0);
  const Matrix x = random_gaussian_matrix(4, rng);
  const Matrix y = phi(x);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i % 2 == j % 2)
        EXPECT_NEAR(std::abs(y(i, j) - x(i, j)), 0.0, 1e-15);
      else
        EXPECT_NEAR(std::abs(y(i, j)), 0.0, 1e-15);
    }
}

TEST(Pinching, TooManyBlocks) {
  std::vector<int> labels(9);
  for (int i = 0; i < 9; ++i) labels[static_cast<std::size_t>(i)] = i;
  EXPECT_THROW(pinching(Matrix::Identity(9, 9), labels), InputError);
}

TEST(RandomPinching, IdempotentConditionalExpectation) {
  for (Eigen::Index n = 1; n <= 9; ++n)
    for (std::uint64_t s = 0; s < 5; ++s) {
      RngStream rng(6, s * 100 + static_cast<std::uint64_t>(n));
      const auto phi = random_pinching(n, rng);
      EXPECT_TRUE(phi.is_conditional_expectation());
      EXPECT_LE(phi.terms().size(), 128u);
      const Matrix x = random_gaussian_matrix(n, rng);
      EXPECT_LE((phi(phi(x)) - phi(x)).norm(), 1e-8);
      expect_trace_preserving_and_unital(phi, rng);
    }
}

TEST(RandomMixedUnitary, ChannelProperties) {
  for (Eigen::Index n = 1; n <= 9; ++n) {
    RngStream rng(7, static_cast<std::uint64_t>(n));
    const auto phi = random_mixed_unitary(n, 3, rng);
    double total = 0.0;
    for (const auto& t : phi.terms()) total += t.weight;
    EXPECT_NEAR(total, 1.0, 1e-12);
    expect_trace_preserving_and_unital(phi, rng);
    // Generic mixtures of Haar unitaries are not idempotent.
    if (n > 1) {
      EXPECT_FALSE(phi.is_conditional_expectation());
    }
  }
}

TEST(WeylOperator, Unitary) {
  for (Eigen::Index d = 1; d <= 5; ++d)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k) {
        const Matrix w = weyl_operator(d, j, k);
        EXPECT_TRUE(MatrixNear(w.adjoint() * w, Matrix::Identity(d, d), 1e-14));
      }
}
