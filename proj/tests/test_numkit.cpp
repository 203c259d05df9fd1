#include <catch2/catch_amalgamated.hpp>

#include "qrr/numkit.hpp"
#include "qrr/rng.hpp"

using namespace qrr;
using numkit::CMatrix;
using numkit::Complex;
using numkit::CVector;

namespace {

CMatrix random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  CMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      a(i, j) = Complex(rng.symmetric(1.0), rng.symmetric(1.0));
  return a;
}

CMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  const CMatrix a = random_complex(n, n, rng);
  return (a + a.adjoint()) / 2.0;
}

CMatrix random_density(Eigen::Index n, Rng& rng) {
  const CMatrix a = random_complex(n, n, rng);
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("svd identity and diagonal") {
  const auto f = numkit::svd(CMatrix::Identity(3, 3));
  REQUIRE(f.rank == 3);
  for (int i = 0; i < 3; ++i) REQUIRE(f.singular_values(i) == Catch::Approx(1.0));

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  const auto g = numkit::svd(d);
  REQUIRE(g.rank == 1);
  REQUIRE(g.singular_values(0) == Catch::Approx(3.0));
}

TEST_CASE("svd reconstructs a random matrix") {
  Rng rng(42);
  const CMatrix x = random_complex(8, 4, rng);
  const auto f = numkit::svd(x);
  const CMatrix rec = f.left_vectors * f.singular_values.cast<Complex>().asDiagonal() *
                      f.right_vectors.adjoint();
  REQUIRE(numkit::max_abs(x - rec) <= 1e-10 * numkit::spectral_norm(x));
}

TEST_CASE("svd rejects non-finite input") {
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 0) = std::numeric_limits<double>::quiet_NaN();
  REQUIRE_THROWS_AS(numkit::svd(x), input_error);
}

TEST_CASE("svd singular values invariant under orthogonal factors") {
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix x = random_complex(6, 4, rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> ql(Eigen::MatrixXd::NullaryExpr(
        6, 6, [&](Eigen::Index, Eigen::Index) { return rng.gaussian(); }));
    Eigen::HouseholderQR<Eigen::MatrixXd> qright(Eigen::MatrixXd::NullaryExpr(
        4, 4, [&](Eigen::Index, Eigen::Index) { return rng.gaussian(); }));
    const CMatrix lhs = ql.householderQ() * Eigen::MatrixXd::Identity(6, 6);
    const CMatrix rhs = qright.householderQ() * Eigen::MatrixXd::Identity(4, 4);
    const auto a = numkit::svd(x);
    const auto b = numkit::svd(lhs * x * rhs);
    REQUIRE((a.singular_values - b.singular_values).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("eigh on small exact cases") {
  CMatrix a(2, 2);
  a << 0, 2, 2, 0;
  const auto f = numkit::eigh(a);
  REQUIRE(f.eigenvalues(0) == Catch::Approx(-2.0));
  REQUIRE(f.eigenvalues(1) == Catch::Approx(2.0));

  const auto z = numkit::eigh(CMatrix::Zero(3, 3));
  REQUIRE(z.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eigh residual on random Hermitian") {
  Rng rng(3);
  const CMatrix a = random_hermitian(6, rng);
  const auto f = numkit::eigh(a);
  for (int k = 0; k < 6; ++k) {
    const CVector resid = a * f.eigenvectors.col(k) - f.eigenvalues(k) * f.eigenvectors.col(k);
    REQUIRE(resid.norm() <= 1e-10 * numkit::spectral_norm(a));
  }
}

TEST_CASE("eigh rejects non-Hermitian input") {
  CMatrix a(2, 2);
  a << 0, 1, 0, 0;
  REQUIRE_THROWS_AS(numkit::eigh(a), contract_error);
}

TEST_CASE("expm_hermitian exact cases") {
  REQUIRE(numkit::max_abs(numkit::expm_hermitian(CMatrix::Zero(3, 3), 1.7) -
                          CMatrix::Identity(3, 3)) <= 1e-12);
  CMatrix a(1, 1);
  a(0, 0) = M_PI;
  const CMatrix u = numkit::expm_hermitian(a, 1.0);
  REQUIRE(std::abs(u(0, 0) - Complex(-1.0, 0.0)) <= 1e-12);
}

TEST_CASE("expm_hermitian matches a 40-term Taylor series") {
  Rng rng(11);
  const CMatrix a = random_hermitian(4, rng);
  const double t = 0.7;
  // independent oracle: truncated series for exp(-i A t)
  CMatrix sum = CMatrix::Identity(4, 4);
  CMatrix term = CMatrix::Identity(4, 4);
  for (int k = 1; k <= 40; ++k) {
    term = term * (Complex(0.0, -t) / static_cast<double>(k)) * a;
    sum += term;
  }
  REQUIRE(numkit::max_abs(numkit::expm_hermitian(a, t) - sum) <= 1e-9);
}

TEST_CASE("expm_hermitian semigroup property") {
  Rng rng(13);
  const CMatrix a = random_hermitian(4, rng);
  const CMatrix lhs = numkit::expm_hermitian(a, 0.4) * numkit::expm_hermitian(a, 0.9);
  REQUIRE(numkit::max_abs(lhs - numkit::expm_hermitian(a, 1.3)) <= 1e-9);
}

TEST_CASE("expm_hermitian is unitary") {
  Rng rng(17);
  const CMatrix u = numkit::expm_hermitian(random_hermitian(5, rng), 2.1);
  REQUIRE(numkit::max_abs(u.adjoint() * u - CMatrix::Identity(5, 5)) <= 1e-10);
}

TEST_CASE("kron basics and the mixed-product identity") {
  REQUIRE(numkit::max_abs(numkit::kron(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)) -
                          CMatrix::Identity(4, 4)) == 0.0);

  Rng rng(19);
  const CMatrix b = random_complex(2, 2, rng);
  CMatrix e11 = CMatrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  const CMatrix blk = numkit::kron(e11, b);
  REQUIRE(numkit::max_abs(blk.block(0, 0, 2, 2) - b) == 0.0);
  REQUIRE(numkit::max_abs(blk.block(2, 2, 2, 2)) == 0.0);

  const CMatrix a = random_complex(2, 2, rng);
  const CMatrix c = random_complex(2, 2, rng);
  const CMatrix d = random_complex(2, 2, rng);
  REQUIRE(numkit::max_abs(numkit::kron(a, b) * numkit::kron(c, d) -
                          numkit::kron(a * c, b * d)) <= 1e-12);
}

TEST_CASE("kron enforces the dimension budget") {
  const CMatrix big = CMatrix::Identity(70, 70);
  REQUIRE_THROWS_AS(numkit::kron(big, big), resource_error);
}

TEST_CASE("partial_trace on product and entangled states") {
  Rng rng(23);
  const CMatrix r1 = random_density(2, rng);
  const CMatrix r2 = random_density(3, rng);
  const CMatrix red = numkit::partial_trace(numkit::kron(r1, r2), {2, 3}, {0});
  REQUIRE(numkit::max_abs(red - r1) <= 1e-12);

  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const CMatrix rho = bell * bell.adjoint();
  const CMatrix half = numkit::partial_trace(rho, {2, 2}, {0});
  REQUIRE(numkit::max_abs(half - CMatrix::Identity(2, 2) / 2.0) <= 1e-12);
}

TEST_CASE("partial_trace keeps a three-system product") {
  Rng rng(29);
  const CMatrix r1 = random_density(2, rng);
  const CMatrix r2 = random_density(2, rng);
  const CMatrix r3 = random_density(3, rng);
  const CMatrix rho = numkit::kron(numkit::kron(r1, r2), r3);
  const CMatrix red = numkit::partial_trace(rho, {2, 2, 3}, {0, 2});
  REQUIRE(numkit::max_abs(red - numkit::kron(r1, r3)) <= 1e-12);
}

TEST_CASE("partial_trace preserves trace on random densities") {
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix rho = random_density(6, rng);
    const CMatrix red = numkit::partial_trace(rho, {2, 3}, {1});
    REQUIRE(std::abs(red.trace().real() - 1.0) <= 1e-10);
  }
}

TEST_CASE("partial_trace validates its inputs") {
  const CMatrix rho = CMatrix::Identity(4, 4) / 4.0;
  REQUIRE_THROWS_AS(numkit::partial_trace(rho, {3, 2}, {0}), input_error);
  REQUIRE_THROWS_AS(numkit::partial_trace(CMatrix::Identity(4, 4), {2, 2}, {0}), input_error);
}

TEST_CASE("spectral_norm basics and power-iteration oracle") {
  REQUIRE(numkit::spectral_norm(CMatrix::Identity(4, 4)) == Catch::Approx(1.0));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -5.0;
  REQUIRE(numkit::spectral_norm(d) == Catch::Approx(5.0));

  Rng rng(37);
  const CMatrix a = random_complex(5, 5, rng);
  // oracle: power iteration on A^dag A
  CVector v = CVector::Ones(5);
  v /= v.norm();
  const CMatrix ata = a.adjoint() * a;
  for (int it = 0; it < 4000; ++it) {
    v = ata * v;
    v /= v.norm();
  }
  const double oracle = std::sqrt((v.adjoint() * ata * v)(0, 0).real());
  REQUIRE(std::abs(numkit::spectral_norm(a) - oracle) <= 1e-8);
}

TEST_CASE("condition_number basics") {
  REQUIRE(numkit::condition_number(CMatrix::Identity(3, 3)) == Catch::Approx(1.0));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 1.0;
  REQUIRE(numkit::condition_number(d) == Catch::Approx(4.0));
  REQUIRE_THROWS_AS(numkit::condition_number(CMatrix::Zero(2, 2)), input_error);
}
