#include <catch2/catch_amalgamated.hpp>

#include "qrr/hamsim.hpp"
#include "qrr/ridge.hpp"
#include "qrr/rng.hpp"

using namespace qrr;
using numkit::CMatrix;
using numkit::Complex;
using numkit::CVector;
using numkit::RMatrix;
using numkit::RVector;

namespace {

CMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  CMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = Complex(rng.symmetric(1.0), rng.symmetric(1.0));
  return (a + a.adjoint()) / 2.0;
}

RMatrix random_real(Eigen::Index n, Eigen::Index m, Rng& rng) {
  RMatrix x(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) x(i, j) = rng.symmetric(1.0);
  return x;
}

}  // namespace

TEST_CASE("dilate small exact cases") {
  RMatrix x(1, 1);
  x << 2;
  const auto d = hamsim::dilate(x);
  CMatrix expected(2, 2);
  expected << 0, 2, 2, 0;
  REQUIRE(numkit::max_abs(d.Xt - expected) == 0.0);
  REQUIRE(d.pairs.size() == 1);
  REQUIRE(d.pairs[0].lambda == Catch::Approx(2.0));
  REQUIRE(d.kernel_dim == 0);

  const auto z = hamsim::dilate(RMatrix::Zero(3, 2));
  REQUIRE(numkit::max_abs(z.Xt) == 0.0);
  REQUIRE(z.kernel_dim == 5);
}

TEST_CASE("dilation spectrum is the signed singular spectrum") {
  Rng rng(5);
  const RMatrix x = random_real(4, 3, rng);
  const auto d = hamsim::dilate(x);
  const auto svd = numkit::svd(x.cast<Complex>());
  const auto eig = numkit::eigh(d.Xt);

  std::vector<double> expected;
  for (Eigen::Index j = 0; j < svd.rank; ++j) {
    expected.push_back(svd.singular_values(j));
    expected.push_back(-svd.singular_values(j));
  }
  for (Eigen::Index i = expected.size(); i < 7; ++i) expected.push_back(0.0);
  std::sort(expected.begin(), expected.end());
  for (Eigen::Index i = 0; i < 7; ++i)
    REQUIRE(eig.eigenvalues(i) == Catch::Approx(expected[i]).margin(1e-10));
}

TEST_CASE("dilation eigenvectors have the (|0,u> +- |1,v>)/sqrt(2) structure") {
  Rng rng(8);
  const RMatrix x = random_real(4, 3, rng);
  const auto d = hamsim::dilate(x);
  for (const auto& pair : d.pairs) {
    // eigenvector residuals for both signs
    REQUIRE((d.Xt * pair.plus_vec - pair.lambda * pair.plus_vec).norm() <= 1e-10);
    REQUIRE((d.Xt * pair.minus_vec + pair.lambda * pair.minus_vec).norm() <= 1e-10);
    REQUIRE(std::abs(pair.plus_vec.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("embed_one_sparse places entries per the swap structure") {
  CMatrix a(2, 2);
  a << 0, 1, 1, 0;
  const auto e = hamsim::embed_one_sparse({a});
  // A_{01} = 1 sits at |1><0| (x) |0><1|, i.e. row (1*2+0)=2, col (0*2+1)=1
  REQUIRE(e.S(2, 1) == Complex(1.0, 0.0));
  REQUIRE(e.S(1, 2) == Complex(1.0, 0.0));
  REQUIRE(e.S.cwiseAbs().sum() == Catch::Approx(2.0));

  // diagonal input: support only on the (j,j) doubled positions
  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = 3.0;
  diag(1, 1) = -1.0;
  const auto ed = hamsim::embed_one_sparse({diag});
  REQUIRE(ed.S(0, 0) == Complex(3.0, 0.0));
  REQUIRE(ed.S(3, 3) == Complex(-1.0, 0.0));
  REQUIRE(ed.S.cwiseAbs().sum() == Catch::Approx(4.0));
}

TEST_CASE("embed_one_sparse is Hermitian and one-sparse on random input") {
  Rng rng(11);
  std::vector<CMatrix> a_list = {random_hermitian(3, rng), random_hermitian(3, rng)};
  const auto e = hamsim::embed_one_sparse(a_list);
  REQUIRE(numkit::is_hermitian(e.S));
  for (Eigen::Index r = 0; r < e.S.rows(); ++r) {
    int nonzero_row = 0, nonzero_col = 0;
    for (Eigen::Index c = 0; c < e.S.cols(); ++c) {
      if (std::abs(e.S(r, c)) > 0.0) ++nonzero_row;
      if (std::abs(e.S(c, r)) > 0.0) ++nonzero_col;
    }
    REQUIRE(nonzero_row <= 1);
    REQUIRE(nonzero_col <= 1);
  }

  std::vector<CMatrix> bad = {random_hermitian(3, rng), random_hermitian(2, rng)};
  REQUIRE_THROWS_AS(hamsim::embed_one_sparse(bad), input_error);
}

TEST_CASE("exact_conditional_unitary") {
  std::vector<CMatrix> zeros = {CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
  REQUIRE(numkit::max_abs(hamsim::exact_conditional_unitary(zeros, 1.3) -
                          CMatrix::Identity(4, 4)) <= 1e-12);

  Rng rng(13);
  const CMatrix a = random_hermitian(3, rng);
  const CMatrix u1 = hamsim::exact_conditional_unitary({a}, 0.8);
  REQUIRE(numkit::max_abs(u1 - numkit::expm_hermitian(a / 3.0, 0.8)) <= 1e-12);

  std::vector<CMatrix> pair = {random_hermitian(2, rng), random_hermitian(2, rng)};
  const CMatrix u = hamsim::exact_conditional_unitary(pair, 1.1);
  REQUIRE(numkit::max_abs(u.adjoint() * u - CMatrix::Identity(4, 4)) <= 1e-10);
}

TEST_CASE("channel with zero Hamiltonians is the identity channel") {
  std::vector<CMatrix> zeros = {CMatrix::Zero(2, 2)};
  Rng rng(17);
  const auto states = hamsim::default_channel_test_states(1, 2, rng);
  const auto out = hamsim::parallel_sim_channel(zeros, {states[0].sigma_c},
                                                {states[0].sigma},
                                                hamsim::channel_config(1.0, 10));
  REQUIRE(numkit::max_abs(out.rho - numkit::kron(states[0].sigma_c, states[0].sigma)) <=
          1e-12);
}

TEST_CASE("Q=1 channel approximates single-matrix simulation") {
  CMatrix a(2, 2);
  a << 0, 0.8, 0.8, 0;  // scaled Pauli-X
  Rng rng(19);
  CVector v(2);
  v << Complex(0.6, 0.1), Complex(0.2, -0.5);
  v /= v.norm();
  const CMatrix sigma = v * v.adjoint();
  const CMatrix sigma_c = CMatrix::Identity(1, 1);

  const double t = 1.0, eps = 0.02;
  const std::int64_t n = hamsim::step_count(0.8, t, eps);
  const auto out =
      hamsim::parallel_sim_channel({a}, {sigma_c}, {sigma}, hamsim::channel_config(t, n));
  const CMatrix u = numkit::expm_hermitian(a / 2.0, t);
  const CMatrix exact = u * sigma * u.adjoint();
  REQUIRE(numkit::trace_distance(out.rho, exact) <= eps);
}

TEST_CASE("superposed control evolves off-diagonal blocks correctly") {
  Rng rng(23);
  const CMatrix a1 = random_hermitian(2, rng);
  const CMatrix a2 = random_hermitian(2, rng);
  CVector plus(2);
  plus << 1, 1;
  plus /= plus.norm();
  const CMatrix sigma_c = plus * plus.adjoint();
  CVector v(2);
  v << 0.8, 0.6;
  const CMatrix sigma = (v / v.norm()) * (v / v.norm()).adjoint();

  const double t = 0.9, eps = 0.02;
  const double m_a = std::max(numkit::max_abs(a1), numkit::max_abs(a2));
  const std::int64_t n = hamsim::step_count(m_a, t, eps);
  const auto out = hamsim::parallel_sim_channel({a1, a2}, {sigma_c}, {sigma},
                                                hamsim::channel_config(t, n));
  const CMatrix u1 = numkit::expm_hermitian(a1 / 2.0, t);
  const CMatrix u2 = numkit::expm_hermitian(a2 / 2.0, t);
  // block (0,1) of the joint state evolves as e^{-i A1 t/N} sigma e^{+i A2 t/N} / 2
  const CMatrix block = out.rho.block(0, 2, 2, 2);
  const CMatrix expected = u1 * (0.5 * sigma) * u2.adjoint();
  REQUIRE(numkit::max_abs(block - expected) <= eps);
}

TEST_CASE("channel validates inputs and budget") {
  std::vector<CMatrix> big(2, CMatrix::Zero(16, 16));
  const CMatrix cc = CMatrix::Identity(2, 2) / 2.0;
  const CMatrix ss = CMatrix::Identity(16, 16) / 16.0;
  REQUIRE_THROWS_AS(
      hamsim::parallel_sim_channel(big, {cc}, {ss}, hamsim::channel_config(1.0, 1)),
      resource_error);

  std::vector<CMatrix> a = {CMatrix::Zero(2, 2)};
  const CMatrix not_density = CMatrix::Identity(2, 2);  // trace 2
  REQUIRE_THROWS_AS(hamsim::parallel_sim_channel(a, {CMatrix::Identity(1, 1)},
                                                 {not_density},
                                                 hamsim::channel_config(1.0, 1)),
                    contract_error);
}

TEST_CASE("channel_error halves when the step count doubles") {
  Rng rng(29);
  std::vector<CMatrix> a_list = {random_hermitian(2, rng), random_hermitian(2, rng)};
  Rng srng(31);
  const auto states = hamsim::default_channel_test_states(2, 2, srng);
  const double t = 1.0;
  const auto e1 = hamsim::channel_error(a_list, hamsim::channel_config(t, 24), states);
  const auto e2 = hamsim::channel_error(a_list, hamsim::channel_config(t, 48), states);
  const double ratio = e1.max_trace_distance / e2.max_trace_distance;
  REQUIRE(ratio >= 1.6);
  REQUIRE(ratio <= 2.4);
}

TEST_CASE("channel_error decreases monotonically over a decade of dt") {
  Rng rng(37);
  std::vector<CMatrix> a_list = {random_hermitian(3, rng)};
  Rng srng(41);
  const auto states = hamsim::default_channel_test_states(1, 3, srng);
  double prev = std::numeric_limits<double>::infinity();
  for (std::int64_t n : {5, 10, 20, 50}) {
    const auto e = hamsim::channel_error(a_list, hamsim::channel_config(1.0, n), states);
    REQUIRE(e.max_trace_distance < prev);
    prev = e.max_trace_distance;
  }

  std::vector<CMatrix> zeros = {CMatrix::Zero(2, 2)};
  Rng zrng(43);
  const auto zstates = hamsim::default_channel_test_states(1, 2, zrng);
  const auto ez = hamsim::channel_error(zeros, hamsim::channel_config(1.0, 4), zstates);
  REQUIRE(ez.max_trace_distance <= 1e-12);
}

TEST_CASE("control populations are preserved by the channel") {
  Rng rng(47);
  std::vector<CMatrix> a_list = {random_hermitian(2, rng), random_hermitian(2, rng),
                                 random_hermitian(2, rng)};
  Rng srng(53);
  const auto states = hamsim::default_channel_test_states(3, 2, srng);
  for (const auto& ts : states) {
    const auto out = hamsim::parallel_sim_channel(a_list, {ts.sigma_c}, {ts.sigma},
                                                  hamsim::channel_config(0.7, 12));
    const CMatrix reduced = numkit::partial_trace(out.rho, {3, 2}, {0});
    for (int q = 0; q < 3; ++q)
      REQUIRE(std::abs(reduced(q, q).real() - ts.sigma_c(q, q).real()) <= 1e-10);
  }
}

TEST_CASE("step_count formula") {
  REQUIRE(hamsim::step_count(1.0, 1.0, 0.5, 1.0) == 2);
  REQUIRE(hamsim::step_count(1.0, 1.0, 0.25, 1.0) == 4);
  REQUIRE(hamsim::step_count(1.0, 1.0, 1000.0, 1.0) == 1);  // floor at one step
  REQUIRE_THROWS_AS(hamsim::step_count(0.0, 1.0, 0.1, 1.0), input_error);
}

TEST_CASE("stored step safety dominates a fresh calibration") {
  Rng rng(2024);
  const double fresh = hamsim::calibrate_step_safety(rng);
  REQUIRE(kStepSafety >= fresh);
}

TEST_CASE("step_count with the stored safety meets its target") {
  Rng rng(59);
  for (std::size_t q_count : {1, 2}) {
    std::vector<CMatrix> a_list;
    double m_a = 0.0;
    for (std::size_t q = 0; q < q_count; ++q) {
      a_list.push_back(random_hermitian(3, rng));
      m_a = std::max(m_a, numkit::max_abs(a_list.back()));
    }
    Rng srng(61);
    const auto states = hamsim::default_channel_test_states(q_count, 3, srng);
    const double t = 1.0, eps = 0.05;
    const std::int64_t n = hamsim::step_count(m_a, t, eps);
    const auto err = hamsim::channel_error(a_list, hamsim::channel_config(t, n), states);
    REQUIRE(err.max_trace_distance <= eps);
  }
}

TEST_CASE("naive_cost_model ratio scales as Q^2 up to log factors") {
  const auto c1 = hamsim::naive_cost_model(1, 1.0, 1.0, 0.1);
  REQUIRE(c1.ratio >= 1.0 / 8.0);
  REQUIRE(c1.ratio <= 1.2);

  const auto c10 = hamsim::naive_cost_model(10, 1.0, 1.0, 0.1);
  REQUIRE(c10.ratio / 100.0 >= 1.0 / 8.0);
  REQUIRE(c10.ratio / 100.0 <= 1.2);

  double prev = 0.0;
  for (std::size_t q : {1, 2, 4, 8, 16}) {
    const auto c = hamsim::naive_cost_model(q, 1.0, 1.0, 0.1);
    REQUIRE(c.ratio > prev);
    prev = c.ratio;
  }
}

TEST_CASE("channel approximates one controlled-evolution step of the CV unitary") {
  // the parallel-simulation primitive implements the conditional masked-design
  // evolution used by the cross-validation pipeline
  Rng rng(67);
  RMatrix x(2, 2);
  x << 1.0, 0.4, -0.3, 0.8;
  RVector y(2);
  y << 1, -1;
  const ridge::Dataset d(x, y);
  const auto p = ridge::partition_folds(2, 2);
  std::vector<CMatrix> a_list;
  double m_a = 0.0;
  for (int l = 0; l < 2; ++l) {
    const auto md = ridge::masked_design(d, p, l);
    a_list.push_back(hamsim::dilate(md.X_minus).Xt);
    m_a = std::max(m_a, numkit::max_abs(a_list.back()));
  }
  // divisor equals the dilation dimension N+M = 4, so the channel target
  // per control value is exp(-i Xt_{-l} t / (N+M))
  Rng srng(71);
  const auto states = hamsim::default_channel_test_states(2, 4, srng);
  const double t = 1.0, eps = 0.05;
  const std::int64_t n = hamsim::step_count(m_a, t, eps);
  const auto err = hamsim::channel_error(a_list, hamsim::channel_config(t, n), states);
  REQUIRE(err.max_trace_distance <= eps);
}
