#pragma once

// Hermitian dilation of design matrices, one-sparse embeddings, and the
// parallel Hamiltonian simulation channel: n rounds of evolving
// (control (x) fresh uniform ancilla (x) system) under exp(-i S_A dt) and
// tracing out the ancilla, which approximates
// sum_q |q><q| (x) exp(-i A_q t / N) on the control/system pair.

#include <cmath>
#include <cstdint>
#include <vector>

#include "qrr/constants.hpp"
#include "qrr/counters.hpp"
#include "qrr/errors.hpp"
#include "qrr/numkit.hpp"
#include "qrr/rng.hpp"

namespace qrr::hamsim {

using numkit::CMatrix;
using numkit::Complex;
using numkit::CVector;
using numkit::RMatrix;

/// X~ = [[0, X], [X^T, 0]] with its signed eigenpairs
/// (+-lambda_j, (|0,u_j> +- |1,v_j>)/sqrt(2)).
struct HermitianDilation {
  CMatrix Xt;
  struct SignedPair {
    double lambda = 0.0;  // > 0
    CVector plus_vec;     // eigenvector for +lambda
    CVector minus_vec;    // eigenvector for -lambda
  };
  std::vector<SignedPair> pairs;
  Eigen::Index kernel_dim = 0;  // (N+M) - 2R
};

inline HermitianDilation dilate(const RMatrix& x) {
  if (!x.allFinite()) throw input_error("dilate: non-finite entries");
  const Eigen::Index n = x.rows(), m = x.cols();
  HermitianDilation d;
  d.Xt = CMatrix::Zero(n + m, n + m);
  d.Xt.block(0, n, n, m) = x.cast<Complex>();
  d.Xt.block(n, 0, m, n) = x.transpose().cast<Complex>();
  const numkit::SvdFactors f = numkit::svd(x.cast<Complex>());
  for (Eigen::Index j = 0; j < f.rank; ++j) {
    HermitianDilation::SignedPair p;
    p.lambda = f.singular_values(j);
    CVector up = CVector::Zero(n + m), um = CVector::Zero(n + m);
    up.head(n) = f.left_vectors.col(j);
    up.tail(m) = f.right_vectors.col(j);
    um.head(n) = f.left_vectors.col(j);
    um.tail(m) = -f.right_vectors.col(j);
    p.plus_vec = up / std::sqrt(2.0);
    p.minus_vec = um / std::sqrt(2.0);
    d.pairs.push_back(std::move(p));
  }
  d.kernel_dim = (n + m) - 2 * f.rank;
  return d;
}

/// One-sparse embedding S_A = sum_q |q><q| (x) S_{A_q} with
/// S_{A_q} = sum_{jk} A_{q,jk} |k><j| (x) |j><k|.
struct OneSparseEmbedding {
  std::size_t Q = 0;
  std::size_t N = 0;
  CMatrix S;  // Q N^2 x Q N^2, Hermitian, at most one nonzero per row/column
};

inline OneSparseEmbedding embed_one_sparse(const std::vector<CMatrix>& a_list) {
  if (a_list.empty()) throw input_error("embed_one_sparse: empty matrix list");
  const Eigen::Index n = a_list[0].rows();
  for (const auto& a : a_list) {
    if (a.rows() != n || a.cols() != n)
      throw input_error("embed_one_sparse: mismatched dimensions");
    if (!numkit::is_hermitian(a)) throw contract_error("embed_one_sparse: A_q not Hermitian");
  }
  OneSparseEmbedding e;
  e.Q = a_list.size();
  e.N = static_cast<std::size_t>(n);
  const std::size_t block = e.N * e.N;
  e.S = CMatrix::Zero(e.Q * block, e.Q * block);
  for (std::size_t q = 0; q < e.Q; ++q)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        e.S(q * block + k * n + j, q * block + j * n + k) = a_list[q](j, k);
  return e;
}

/// Reference unitary sum_q |q><q| (x) exp(-i A_q t / divisor), block-exact.
/// divisor defaults to the matrix dimension N as in the simulation target.
inline CMatrix exact_conditional_unitary(const std::vector<CMatrix>& a_list, double t,
                                         double divisor = 0.0) {
  if (a_list.empty()) throw input_error("exact_conditional_unitary: empty matrix list");
  const Eigen::Index n = a_list[0].rows();
  if (divisor == 0.0) divisor = static_cast<double>(n);
  const std::size_t q_count = a_list.size();
  CMatrix u = CMatrix::Zero(q_count * n, q_count * n);
  for (std::size_t q = 0; q < q_count; ++q)
    u.block(q * n, q * n, n, n) = numkit::expm_hermitian(a_list[q] / divisor, t);
  return u;
}

struct MixedState {
  CMatrix rho;
};

inline void validate_density(const CMatrix& rho, const char* what) {
  if (!numkit::is_hermitian(rho)) throw contract_error(std::string(what) + ": not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10)
    throw contract_error(std::string(what) + ": trace must be 1");
}

struct ChannelConfig {
  double t = 0.0;
  std::int64_t n = 1;
  double delta_t = 0.0;  // t / n
  double epsilon_target = 0.0;
};

inline ChannelConfig channel_config(double t, std::int64_t n, double epsilon_target = 0.0) {
  if (n < 1) throw input_error("channel_config: n must be >= 1");
  return {t, n, t / static_cast<double>(n), epsilon_target};
}

/// Applies the n-step parallel-simulation channel to sigma_c (x) sigma and
/// returns the joint (control, system) state.  Register order per step is
/// (control, ancilla rho, system); the ancilla is a fresh uniform projector
/// |1...1><1...1|/-normalized copy each round and is traced out afterwards.
inline MixedState parallel_sim_channel(const std::vector<CMatrix>& a_list,
                                       const MixedState& sigma_c, const MixedState& sigma,
                                       const ChannelConfig& cfg,
                                       OracleCounters* counters = nullptr,
                                       std::size_t dim_budget = kDimBudget) {
  const OneSparseEmbedding emb = embed_one_sparse(a_list);
  const std::size_t q_count = emb.Q, n_dim = emb.N;
  if (q_count * n_dim * n_dim * n_dim > dim_budget)
    throw resource_error("parallel_sim_channel: Q*N^3 exceeds dimension budget");
  if (sigma_c.rho.rows() != static_cast<Eigen::Index>(q_count))
    throw contract_error("parallel_sim_channel: control state dimension mismatch");
  if (sigma.rho.rows() != static_cast<Eigen::Index>(n_dim))
    throw contract_error("parallel_sim_channel: system state dimension mismatch");
  validate_density(sigma_c.rho, "parallel_sim_channel control");
  validate_density(sigma.rho, "parallel_sim_channel system");

  const CMatrix u_step = numkit::expm_hermitian(emb.S, cfg.delta_t);
  const double inv_n = 1.0 / static_cast<double>(n_dim);

  // joint = (control x system), dims (Q, N)
  CMatrix joint = numkit::kron(sigma_c.rho, sigma.rho, dim_budget * dim_budget);
  const std::size_t td = q_count * n_dim * n_dim;
  CMatrix triple(td, td);
  for (std::int64_t step = 0; step < cfg.n; ++step) {
    // Insert the fresh uniform ancilla in the middle register.
    for (std::size_t r = 0; r < td; ++r) {
      const std::size_t qr = r / (n_dim * n_dim);
      const std::size_t ir = r % n_dim;
      for (std::size_t c = 0; c < td; ++c) {
        const std::size_t qc = c / (n_dim * n_dim);
        const std::size_t ic = c % n_dim;
        triple(r, c) = joint(qr * n_dim + ir, qc * n_dim + ic) * inv_n;
      }
    }
    triple = u_step * triple * u_step.adjoint();
    joint = numkit::partial_trace(triple, {q_count, n_dim, n_dim}, {0, 2});
    if (counters) {
      ++counters->ham_steps;
      ++counters->o_x;
    }
  }
  return {joint};
}

struct ChannelTestState {
  CMatrix sigma_c;
  CMatrix sigma;
};

/// Declared error test set: computational basis states, the uniform
/// superposition, and two random pure states per register.
inline std::vector<ChannelTestState> default_channel_test_states(std::size_t q_count,
                                                                 std::size_t n_dim,
                                                                 Rng& rng) {
  auto pure = [](const CVector& v) -> CMatrix {
    const CVector u = v / v.norm();
    return u * u.adjoint();
  };
  auto random_pure = [&](std::size_t d) {
    CVector v(d);
    for (std::size_t i = 0; i < d; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
    return pure(v);
  };
  std::vector<CMatrix> controls, systems;
  for (std::size_t q = 0; q < q_count; ++q)
    controls.push_back(pure(CVector::Unit(q_count, q)));
  controls.push_back(pure(CVector::Ones(q_count)));
  controls.push_back(random_pure(q_count));
  controls.push_back(random_pure(q_count));
  systems.push_back(pure(CVector::Unit(n_dim, 0)));
  systems.push_back(pure(CVector::Ones(n_dim)));
  systems.push_back(random_pure(n_dim));
  systems.push_back(random_pure(n_dim));

  std::vector<ChannelTestState> out;
  for (const auto& c : controls)
    for (const auto& s : systems) out.push_back({c, s});
  return out;
}

struct ChannelErrorReport {
  double max_trace_distance = 0.0;
  std::vector<double> per_state;
};

/// Max trace distance between the channel output and the exact conditional
/// unitary's output over the test set.
inline ChannelErrorReport channel_error(const std::vector<CMatrix>& a_list,
                                        const ChannelConfig& cfg,
                                        const std::vector<ChannelTestState>& test_states) {
  if (test_states.empty()) throw input_error("channel_error: empty test set");
  const CMatrix v = exact_conditional_unitary(a_list, cfg.t);
  ChannelErrorReport rep;
  for (const auto& ts : test_states) {
    const MixedState out = parallel_sim_channel(a_list, {ts.sigma_c}, {ts.sigma}, cfg);
    const CMatrix exact =
        v * numkit::kron(ts.sigma_c, ts.sigma) * v.adjoint();
    const double dist = numkit::trace_distance(out.rho, exact);
    rep.per_state.push_back(dist);
    rep.max_trace_distance = std::max(rep.max_trace_distance, dist);
  }
  return rep;
}

/// n = ceil(safety * M_A^2 t^2 / eps), at least 1.
inline std::int64_t step_count(double m_a, double t, double epsilon,
                               double safety = kStepSafety) {
  if (!(m_a > 0.0) || !(t > 0.0) || !(epsilon > 0.0) || !(safety > 0.0))
    throw input_error("step_count: all arguments must be positive");
  const double n = std::ceil(safety * m_a * m_a * t * t / epsilon);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

/// Empirical error constant c with error(n) ~= c * M_A^2 t^2 / n on the
/// reference family; any safety >= the returned value makes step_count hit
/// its epsilon target there.
inline double calibrate_step_safety(Rng& rng, double margin = 1.5) {
  double worst = 0.0;
  for (std::size_t q_count : {1, 2, 3}) {
    for (std::size_t n_dim : {2, 3, 4}) {
      std::vector<CMatrix> a_list;
      double m_a = 0.0;
      for (std::size_t q = 0; q < q_count; ++q) {
        CMatrix a(n_dim, n_dim);
        for (std::size_t i = 0; i < n_dim; ++i)
          for (std::size_t j = 0; j < n_dim; ++j) a(i, j) = Complex(rng.symmetric(1.0), rng.symmetric(1.0));
        a = (a + a.adjoint()).eval() / 2.0;
        m_a = std::max(m_a, numkit::max_abs(a));
        a_list.push_back(std::move(a));
      }
      const double t = 1.0;
      Rng state_rng(Rng::substream(rng.raw(), 7));
      const auto states = default_channel_test_states(q_count, n_dim, state_rng);
      for (std::int64_t n : {40, 80}) {
        const auto rep = channel_error(a_list, channel_config(t, n), states);
        worst = std::max(worst, rep.max_trace_distance * static_cast<double>(n) /
                                    (m_a * m_a * t * t));
      }
    }
  }
  return margin * worst;
}

struct CostModel {
  double parallel_cost = 0.0;  // M_A^2 t^2 log^2(N^2 Q) / eps
  double naive_cost = 0.0;     // Q^2 M_A^2 t^2 log^2(N Q) / eps
  double ratio = 0.0;          // naive / parallel, ~ Q^2 up to log factors
};

/// Abstract oracle-call cost of the parallel method vs stacking the blocks
/// into one QN x QN Hamiltonian.  polylog fixed to log^2.
inline CostModel naive_cost_model(std::size_t q_count, double m_a, double t, double epsilon,
                                  std::size_t n_dim = 16) {
  if (q_count < 1 || !(m_a > 0.0) || !(t > 0.0) || !(epsilon > 0.0) || n_dim < 2)
    throw input_error("naive_cost_model: all arguments must be positive");
  const double nn = static_cast<double>(n_dim);
  const double qq = static_cast<double>(q_count);
  const double base = m_a * m_a * t * t / epsilon;
  CostModel c;
  const double lp = std::log(nn * nn * qq);
  const double ln = std::log(nn * qq);
  c.parallel_cost = base * lp * lp;
  c.naive_cost = base * qq * qq * ln * ln;
  c.ratio = c.naive_cost / c.parallel_cost;
  return c;
}

}  // namespace qrr::hamsim
