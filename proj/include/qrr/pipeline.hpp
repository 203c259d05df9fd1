#pragma once

// End-to-end pipelines.
//
// Every run carries two tracks:
//   state track    -- the statevector simulation at finite phase precision s
//                     (prepare, phase estimate, rotate, uncompute, postselect);
//                     leakage propagates exactly as it would on hardware.
//   estimate track -- measurement probabilities evaluated in closed form from
//                     the exact spectral decomposition, standing in for
//                     amplitude estimation (with optional seeded noise and
//                     closed-form repetition counts).
// Exact mode therefore reproduces the classical oracle identically, while
// fidelity-vs-s experiments exercise the state track.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrr/bounds.hpp"
#include "qrr/constants.hpp"
#include "qrr/counters.hpp"
#include "qrr/errors.hpp"
#include "qrr/hamsim.hpp"
#include "qrr/numkit.hpp"
#include "qrr/qcore.hpp"
#include "qrr/ridge.hpp"
#include "qrr/rng.hpp"

namespace qrr::alg {

using numkit::CMatrix;
using numkit::Complex;
using numkit::CVector;
using numkit::RVector;

// ---------------------------------------------------------------------------
// Algorithm 1: state encoding the optimal fitting parameters
// ---------------------------------------------------------------------------

struct Alg1Config {
  double alpha = 1.0;
  int s = 8;                  // phase-register bits
  std::optional<double> c1;   // rotation constant; auto = 0.99 / h_max
  std::optional<double> t0;   // phase-estimation scale time; auto from spectrum
  bool exact_prep = true;     // idealized |y> preparation (probability 1)
  bool noise = false;         // inject estimation noise on the estimate track
  double eps = 0.05;          // total relative-error budget in noise mode
  std::uint64_t seed = 1;
};

struct Alg1Resolved {
  double c1 = 0.0;
  double t0 = 0.0;
  double eps_p = 0.0;     // split of eps assigned to the P estimate
  double eps_norm = 0.0;  // split assigned to the ||y||^2 estimate
  bool alpha_in_window = true;
};

struct Alg1Output {
  qcore::PureState phi_w;   // state track, dim M
  double success_prob = 0;  // filter x flag probability (state track)
  double p_prep = 0, p_filter = 0, p_flag = 0, p_phase0 = 0, p_vpart = 0;
  double p_est = 0;         // estimate-track flag probability
  double w_norm_sq_est = 0;
  double fidelity_vs_classical = 0;
  std::int64_t reps_p = 0;  // accounted amplitude-estimation repetitions for P
  OracleCounters counters;
  Alg1Resolved resolved;
};

// Scale time making max |eigenphase| = 1/2 - 2^{-s} (signed window with one
// guard bin); exact s-bit spectra land exactly on the grid under this rule.
inline double pe_scale_time(double mu_max, int s) {
  const double f = 0.5 - std::ldexp(1.0, -s);
  return 2.0 * M_PI * f / mu_max;
}

namespace detail {

// eps split for ||w||^2 = P ||y||^2 / (C^2 (N+M)^2): the two factors each
// get eps/2.1 so the compounded worst case stays below eps.
inline constexpr double kNormSplit = 2.1;

}  // namespace detail

inline Alg1Output algorithm1_run(const ridge::Dataset& d, const Alg1Config& cfg) {
  if (d.y.norm() == 0.0) throw input_error("algorithm1_run: y is zero");
  if (!(cfg.alpha > 0.0)) throw input_error("algorithm1_run: alpha must be > 0");
  const Eigen::Index n = d.n(), m = d.m();
  const double dim_sum = static_cast<double>(n + m);

  const numkit::SvdFactors f = numkit::svd(d.X.cast<Complex>());
  if (f.rank == 0) throw degeneracy_error("algorithm1_run: zero design matrix");
  const double mu_max = f.singular_values(0) / dim_sum;

  Alg1Output out;
  out.resolved.t0 = cfg.t0 ? *cfg.t0 : pe_scale_time(mu_max, cfg.s);
  // The auto rotation constant covers the filter peak even when it lies
  // below the smallest singular value: decoded leakage bins can populate
  // that gap, and every reachable register value must keep C h <= 1.  For
  // alpha above lambda_min^2 this is exactly the case-formula constant.
  const double c_lo = std::min(f.singular_values(f.rank - 1), std::sqrt(cfg.alpha));
  out.resolved.c1 =
      cfg.c1 ? *cfg.c1
             : kRotationHeadroom /
                   bounds::h_max_interval(dim_sum, c_lo, f.singular_values(0), cfg.alpha);
  out.resolved.eps_p = cfg.eps / detail::kNormSplit;
  out.resolved.eps_norm = cfg.eps / detail::kNormSplit;
  const double win_lo = dim_sum * dim_sum / (kAlphaWindowLow * d.kappa * d.kappa);
  const double win_hi = dim_sum * dim_sum;
  out.resolved.alpha_in_window = cfg.alpha >= win_lo * (1 - 1e-12) && cfg.alpha <= win_hi * (1 + 1e-12);

  Rng rng(Rng::substream(cfg.seed, 0x5eed));

  // estimate track: closed-form flag probability over the true spectrum
  const double y_norm = d.y.norm();
  double p_exact = 0.0;
  for (Eigen::Index j = 0; j < f.rank; ++j) {
    const double beta = (f.left_vectors.col(j).real().transpose() * d.y).value() / y_norm;
    const double h = bounds::h_filter(dim_sum, f.singular_values(j), cfg.alpha);
    if (out.resolved.c1 * std::abs(h) > 1.0 + 1e-12)
      throw contract_error("algorithm1_run: C1*h exceeds 1 on the spectrum; "
                           "choose a smaller C1");
    p_exact += out.resolved.c1 * out.resolved.c1 * beta * beta * h * h;
  }
  if (p_exact < 1e-14)
    throw degeneracy_error("algorithm1_run: y has no support on the column space");
  const qcore::AmplitudeEstimate ae =
      qcore::amplitude_estimate(p_exact, out.resolved.eps_p, cfg.noise, &rng);
  out.p_est = ae.estimate;
  out.reps_p = ae.repetitions;
  const double norm_est =
      qcore::estimate_norm_sq(d.y, out.resolved.eps_norm, cfg.noise, &rng, &out.counters);
  out.w_norm_sq_est =
      out.p_est * norm_est / (out.resolved.c1 * out.resolved.c1 * dim_sum * dim_sum);

  // state track
  const qcore::PostselectRecord prep =
      qcore::prepare_amplitude_state(d.y, cfg.exact_prep, &out.counters);
  out.p_prep = prep.probability;
  CVector amps = CVector::Zero(n + m);
  amps.head(n) = prep.post_state.amplitudes;  // |0, y>
  qcore::PureState state =
      qcore::make_state(std::move(amps), {{"system", static_cast<std::size_t>(n + m)}});

  const hamsim::HermitianDilation dil = hamsim::dilate(d.X);
  const CMatrix generator = dil.Xt / dim_sum;

  auto [pe_state, pe_rec] =
      qcore::phase_estimation(generator, out.resolved.t0, state, cfg.s, &out.counters);
  const qcore::PostselectRecord filt = qcore::zero_eigen_filter(pe_state, &out.counters);
  out.p_filter = filt.probability;

  qcore::PureState rotated = qcore::controlled_rotation_h(
      filt.post_state, cfg.alpha, out.resolved.c1, dim_sum, out.resolved.t0);
  qcore::PureState unpe =
      qcore::phase_estimation_inverse(generator, out.resolved.t0, rotated, &out.counters);

  const qcore::PostselectRecord flag = qcore::postselect(unpe, "flag", 1, &out.counters);
  out.p_flag = flag.probability;
  const qcore::PostselectRecord phase0 =
      qcore::postselect(flag.post_state, "phase", 0, &out.counters);
  out.p_phase0 = phase0.probability;
  const qcore::PostselectRecord vpart = qcore::postselect_block(
      phase0.post_state, "system", static_cast<std::size_t>(n),
      static_cast<std::size_t>(n + m), "feature", &out.counters);
  out.p_vpart = vpart.probability;
  out.phi_w = vpart.post_state;
  out.success_prob = out.p_filter * out.p_flag;

  const ridge::RidgeSolution classical = ridge::solve_ridge_svd(d, cfg.alpha);
  const double wn = classical.w.norm();
  if (wn > 0.0) {
    const Complex ov = out.phi_w.amplitudes.dot((classical.w / wn).cast<Complex>());
    out.fidelity_vs_classical = std::norm(ov);
  }
  return out;
}

/// ||w||^2 = P ||y||^2 / (C_1^2 (N+M)^2) from the estimate-track quantities.
inline double estimate_w_norm(const Alg1Output& out, const ridge::Dataset& d,
                              const Alg1Config& cfg) {
  Rng rng(Rng::substream(cfg.seed, 0x90f3));
  const double norm_est =
      qcore::estimate_norm_sq(d.y, out.resolved.eps_norm, cfg.noise, &rng, nullptr);
  const double dim_sum = static_cast<double>(d.dim_sum());
  return out.p_est * norm_est / (out.resolved.c1 * out.resolved.c1 * dim_sum * dim_sum);
}

/// Prediction w^T x_new up to the norm estimate: the signed overlap of
/// |x_new> with |phi_w>, rescaled by ||x_new|| sqrt(||w||^2_est).
inline double predict(const Alg1Output& out, const RVector& x_new) {
  if (x_new.size() == 0 || x_new.norm() == 0.0) throw input_error("predict: zero input");
  if (x_new.size() != static_cast<Eigen::Index>(out.phi_w.dim()))
    throw input_error("predict: feature dimension mismatch");
  const qcore::PureState xt = qcore::make_state(
      (x_new / x_new.norm()).cast<Complex>(), {{"feature", out.phi_w.dim()}});
  const double overlap = qcore::signed_overlap_test(xt, out.phi_w);
  return overlap * x_new.norm() * std::sqrt(out.w_norm_sq_est);
}

// ---------------------------------------------------------------------------
// Algorithm 2: quantum K-fold cross-validation
// ---------------------------------------------------------------------------

struct Alg2Config {
  int K = 2;
  std::vector<double> alphas;
  int s = 8;
  std::optional<double> c2;   // auto per alpha from the fold spectra
  std::optional<double> t0;
  bool exact_prep = true;
  bool noise = false;
  double eps = 0.05;          // split across estimates: eps_y = eps,
                              // eps_w = eps_1 = eps/3, eps_2 = eps/6
  std::uint64_t seed = 1;
};

inline double resolve_c2(const ridge::Dataset& d, const ridge::FoldPartition& p,
                         double alpha, const std::optional<double>& c2_cfg) {
  if (c2_cfg) return *c2_cfg;
  const auto [lo, hi] = bounds::fold_spectral_interval(d, p);
  // cover the filter peak for decoded leakage bins, as in algorithm 1
  return kRotationHeadroom /
         bounds::h_max_interval(static_cast<double>(d.dim_sum()),
                                std::min(lo, std::sqrt(alpha)), hi, alpha);
}

/// Conditional dilation generator sum_l P_l (x) X~_{-l} / (N+M) on the
/// (index, system) pair.
inline CMatrix conditional_generator(const ridge::Dataset& d, const ridge::FoldPartition& p) {
  const Eigen::Index n = d.n(), m = d.m();
  const double dim_sum = static_cast<double>(n + m);
  CMatrix g = CMatrix::Zero(n * (n + m), n * (n + m));
  for (int l = 0; l < p.K; ++l) {
    const ridge::MaskedDesign md = ridge::masked_design(d, p, l);
    const CMatrix block = hamsim::dilate(md.X_minus).Xt / dim_sum;
    for (int tau : p.folds[l])
      g.block(tau * (n + m), tau * (n + m), n + m, n + m) = block;
  }
  return g;
}

struct Alg2StateResult {
  qcore::PureState psi_w;  // (index, feature)
  double p_prep = 0, p_w_state = 0, p_phase0 = 0, p_vpart = 0;
  double c2 = 0, t0 = 0;
  OracleCounters counters;
};

/// State track of the fold-parallel encoding: prepare |psi_0>, conditional
/// phase estimation (block-exact), rotate with C_2, uncompute, postselect.
inline Alg2StateResult algorithm2_psi_w(const ridge::Dataset& d, const ridge::FoldPartition& p,
                                        double alpha, const Alg2Config& cfg) {
  if (!(alpha > 0.0)) throw input_error("algorithm2_psi_w: alpha must be > 0");
  const Eigen::Index n = d.n(), m = d.m();
  const double dim_sum = static_cast<double>(n + m);

  Alg2StateResult out;
  out.c2 = resolve_c2(d, p, alpha, cfg.c2);

  double mu_max = 0.0;
  for (int l = 0; l < p.K; ++l) {
    const ridge::MaskedDesign md = ridge::masked_design(d, p, l);
    const auto f = numkit::svd(md.X_minus.cast<Complex>());
    if (f.rank == 0)
      throw degeneracy_error("algorithm2_psi_w: masked design for fold " +
                             std::to_string(l) + " is zero");
    mu_max = std::max(mu_max, f.singular_values(0) / dim_sum);
  }
  out.t0 = cfg.t0 ? *cfg.t0 : pe_scale_time(mu_max, cfg.s);

  const qcore::PostselectRecord prep = qcore::prepare_psi0(d, p, &out.counters);
  out.p_prep = prep.probability;

  const CMatrix g = conditional_generator(d, p);
  auto [pe_state, pe_rec] =
      qcore::phase_estimation(g, out.t0, prep.post_state, cfg.s, &out.counters);
  qcore::PureState rotated =
      qcore::controlled_rotation_h(pe_state, alpha, out.c2, dim_sum, out.t0);
  qcore::PureState unpe = qcore::phase_estimation_inverse(g, out.t0, rotated, &out.counters);

  const qcore::PostselectRecord flag = qcore::postselect(unpe, "flag", 1, &out.counters);
  out.p_w_state = flag.probability;
  const qcore::PostselectRecord phase0 =
      qcore::postselect(flag.post_state, "phase", 0, &out.counters);
  out.p_phase0 = phase0.probability;
  const qcore::PostselectRecord vpart = qcore::postselect_block(
      phase0.post_state, "system", static_cast<std::size_t>(n),
      static_cast<std::size_t>(n + m), "feature", &out.counters);
  out.p_vpart = vpart.probability;
  out.psi_w = vpart.post_state;
  return out;
}

/// The ideal |psi_w> assembled directly from the classical fold solutions.
inline qcore::PureState assemble_psi_w(const ridge::Dataset& d, const ridge::FoldPartition& p,
                                       const std::vector<ridge::RidgeSolution>& sols) {
  const Eigen::Index n = d.n(), m = d.m();
  CVector amps = CVector::Zero(n * m);
  for (int l = 0; l < p.K; ++l)
    for (int tau : p.folds[l])
      for (Eigen::Index k = 0; k < m; ++k) amps(tau * m + k) = sols[l].w(k);
  const double norm = amps.norm();
  if (norm == 0.0) throw degeneracy_error("assemble_psi_w: all fold solutions are zero");
  return qcore::make_state(amps / norm, {{"index", static_cast<std::size_t>(n)},
                                         {"feature", static_cast<std::size_t>(m)}});
}

/// Exact flag probability of the fold-parallel rotation.  Fold sizes
/// weight the sums; for
/// K | N this is C_2^2 (N+M)^2 sum_l ||w_l||^2 / ((K-1) ||y||^2).
inline double pw_closed_form(const ridge::Dataset& d, const ridge::FoldPartition& p,
                             double alpha, double c2) {
  const auto sols = ridge::fold_solutions(d, p, alpha);
  const double dim_sum = static_cast<double>(d.dim_sum());
  double num = 0.0, den = 0.0;
  for (int l = 0; l < p.K; ++l) {
    const ridge::MaskedDesign md = ridge::masked_design(d, p, l);
    const double sz = static_cast<double>(p.folds[l].size());
    num += sz * c2 * c2 * dim_sum * dim_sum * sols[l].w.squaredNorm();
    den += sz * md.y_minus.squaredNorm();
  }
  if (den == 0.0) throw degeneracy_error("pw_closed_form: zero denominator");
  return num / den;
}

struct YhatResult {
  qcore::PureState yhat;  // (index)
  double p1 = 0.0;
};

/// Step (5): O_X, controlled-R_X, O_X^{-1}, projection onto the uniform
/// feature register and flag 1.  |yhat>_tau ~ w_{l(tau)}^T x_tau.
inline YhatResult algorithm2_yhat(const qcore::PureState& psi_w, const ridge::Dataset& d,
                                  const ridge::FoldPartition& p,
                                  OracleCounters* counters = nullptr) {
  (void)p;
  const Eigen::Index n = d.n(), m = d.m();
  if (psi_w.dim() != static_cast<std::size_t>(n * m))
    throw input_error("algorithm2_yhat: psi_w must live on (index, feature)");
  if (counters) {
    ++counters->o_x;
    ++counters->o_x_inv;
  }
  CVector amps = CVector::Zero(n);
  for (Eigen::Index tau = 0; tau < n; ++tau) {
    Complex acc(0.0, 0.0);
    for (Eigen::Index k = 0; k < m; ++k)
      acc += psi_w.amplitudes(tau * m + k) * d.X(tau, k);
    amps(tau) = acc / (d.x_max * std::sqrt(static_cast<double>(m)));
  }
  YhatResult out;
  out.p1 = amps.squaredNorm();
  if (out.p1 < 1e-14)
    throw degeneracy_error("algorithm2_yhat: all predictions vanish");
  out.yhat = qcore::make_state(amps / std::sqrt(out.p1),
                               {{"index", static_cast<std::size_t>(n)}});
  return out;
}

/// Closed-form P_1 from the fold solutions.
inline double p1_closed_form(const ridge::Dataset& d, const ridge::FoldPartition& p,
                             const std::vector<ridge::RidgeSolution>& sols) {
  double num = 0.0, den = 0.0;
  for (int l = 0; l < p.K; ++l) {
    for (int tau : p.folds[l]) {
      const double pred = d.X.row(tau).dot(sols[l].w);
      num += pred * pred;
    }
    den += static_cast<double>(p.folds[l].size()) * sols[l].w.squaredNorm();
  }
  den *= static_cast<double>(d.m()) * d.x_max * d.x_max;
  if (den == 0.0) throw degeneracy_error("p1_closed_form: zero fold solutions");
  return num / den;
}

struct CvRow {
  double alpha = 0;
  double c2 = 0;
  // estimate track (noisy in noise mode)
  double p_w = 0, p1 = 0, p2 = 0;
  double e1_est = 0, e2_est = 0, s3_est = 0, e_est = 0;
  int s3_sign = 1;
  bool sign_heuristic_agrees = true;
  // classical oracle
  double e1_exact = 0, e2_exact = 0, s3_exact = 0, e_exact = 0;
  // accounted amplitude-estimation repetitions
  std::int64_t reps_pw = 0, reps_p1 = 0, reps_p2 = 0, reps_norm = 0;
};

/// One cross-validation row: closed-form P_w, P_1, P_2 and the assembled
/// E = E1 + E2 - 2 S3 (the S3 sign comes from the signed overlap test,
/// never from the positivity heuristic, which is only logged).
inline CvRow estimate_E_terms(const ridge::Dataset& d, const ridge::FoldPartition& p,
                              double alpha, const Alg2Config& cfg, std::uint64_t row_stream,
                              OracleCounters* counters = nullptr) {
  if (!(alpha > 0.0)) throw input_error("estimate_E_terms: alpha must be > 0");
  CvRow row;
  row.alpha = alpha;
  row.c2 = resolve_c2(d, p, alpha, cfg.c2);

  const auto sols = ridge::fold_solutions(d, p, alpha);
  const double p_w = pw_closed_form(d, p, alpha, row.c2);
  const double p1 = p1_closed_form(d, p, sols);

  // exact predictions and the signed overlap
  const Eigen::Index n = d.n();
  RVector yhat(n);
  for (int l = 0; l < p.K; ++l)
    for (int tau : p.folds[l]) yhat(tau) = d.X.row(tau).dot(sols[l].w);
  const double y2 = d.y.squaredNorm();
  const double yhat2 = yhat.squaredNorm();
  if (yhat2 < 1e-300) throw degeneracy_error("estimate_E_terms: all predictions vanish");
  const double overlap = d.y.dot(yhat) / std::sqrt(y2 * yhat2);
  const double p2 = 0.5 + 0.5 * overlap * overlap;
  if (p2 < 0.5 - 1e-10) throw contract_error("estimate_E_terms: P_2 below 1/2");
  row.s3_sign = overlap >= 0.0 ? 1 : -1;
  row.sign_heuristic_agrees = row.s3_sign > 0;

  const double eps_y = cfg.eps;
  const double eps_w = cfg.eps / 3.0, eps_1 = cfg.eps / 3.0, eps_2 = cfg.eps / 6.0;

  Rng rng(Rng::substream(cfg.seed, row_stream));
  const auto ae_pw = qcore::amplitude_estimate(p_w, eps_w, cfg.noise, &rng);
  const auto ae_p1 = qcore::amplitude_estimate(p1, eps_1, cfg.noise, &rng);
  const auto ae_p2 = qcore::amplitude_estimate(p2, eps_2, cfg.noise, &rng);
  row.p_w = ae_pw.estimate;
  row.p1 = ae_p1.estimate;
  row.p2 = ae_p2.estimate;
  row.reps_pw = ae_pw.repetitions;
  row.reps_p1 = ae_p1.repetitions;
  row.reps_p2 = ae_p2.repetitions;
  row.reps_norm = qcore::amplitude_estimate(ridge::balancedness(d.y), eps_y, false).repetitions;
  const double norm_est = qcore::estimate_norm_sq(d.y, eps_y, cfg.noise, &rng, counters);

  const double dim_sum = static_cast<double>(d.dim_sum());
  const double k_d = static_cast<double>(p.K);
  const double nm = static_cast<double>(d.n()) * static_cast<double>(d.m());

  row.e1_est = norm_est;
  row.e2_est = row.p1 * row.p_w * nm * (k_d - 1.0) * d.x_max * d.x_max * norm_est /
               (row.c2 * row.c2 * dim_sum * dim_sum * k_d);
  const double under = std::max(0.0, 2.0 * row.p2 - 1.0) * row.p1 * row.p_w * nm *
                       (k_d - 1.0) / k_d;
  row.s3_est = row.s3_sign * std::sqrt(under) * norm_est * d.x_max / (row.c2 * dim_sum);
  row.e_est = row.e1_est + row.e2_est - 2.0 * row.s3_est;

  const ridge::CvTerms exact = ridge::cv_error_exact(d, p, alpha);
  row.e1_exact = exact.E1;
  row.e2_exact = exact.E2;
  row.s3_exact = exact.S3;
  row.e_exact = exact.E;

  // base-pass oracle accounting (one pipeline pass per row)
  if (counters) {
    const std::uint64_t t_dim = std::uint64_t{1} << cfg.s;
    counters->o_y += 2 + 2;                 // |psi_0> and |y> for the swap test
    counters->ham_steps += 2 * (t_dim - 1); // conditional PE forward + inverse
    counters->o_x += 2 * (t_dim - 1) + 1;   // PE oracle access + prediction O_X
    counters->o_x_inv += 1;
  }
  return row;
}

struct CvEstimate {
  std::vector<CvRow> rows;
  int argmin_quantum = 0;
  int argmin_classical = 0;
  double alpha_hat_quantum = 0.0;
  double alpha_hat_classical = 0.0;
  double fold_kappa = 0.0;
  int k_recommended = 2;
  bool k_below_recommendation = false;
  OracleCounters counters;
};

/// Runs estimate_E_terms over the grid; argmin ties break toward larger
/// alpha on both tracks.
inline CvEstimate select_alpha_quantum(const ridge::Dataset& d, const ridge::FoldPartition& p,
                                       const Alg2Config& cfg) {
  if (cfg.alphas.empty()) throw input_error("select_alpha_quantum: empty alpha grid");
  CvEstimate est;
  est.fold_kappa = bounds::fold_kappa(d, p);
  est.k_recommended = bounds::k_min_recommendation(d);
  est.k_below_recommendation = p.K < est.k_recommended;
  for (std::size_t i = 0; i < cfg.alphas.size(); ++i)
    est.rows.push_back(
        estimate_E_terms(d, p, cfg.alphas[i], cfg, static_cast<std::uint64_t>(i), &est.counters));

  auto argmin = [&](auto&& value) {
    int best = static_cast<int>(est.rows.size()) - 1;
    for (int i = best - 1; i >= 0; --i)
      if (value(est.rows[i]) < value(est.rows[best])) best = i;
    return best;
  };
  est.argmin_quantum = argmin([](const CvRow& r) { return r.e_est; });
  est.argmin_classical = argmin([](const CvRow& r) { return r.e_exact; });
  est.alpha_hat_quantum = est.rows[est.argmin_quantum].alpha;
  est.alpha_hat_classical = est.rows[est.argmin_classical].alpha;
  return est;
}

struct WholeResult {
  CvEstimate cv;
  double alpha_hat = 0.0;
  Alg1Output fit;
};

/// Algorithm 2 to choose alpha, then algorithm 1 with that alpha.
inline WholeResult whole_pipeline(const ridge::Dataset& d, const Alg2Config& cfg2,
                                  Alg1Config cfg1) {
  const ridge::FoldPartition p = ridge::partition_folds(static_cast<int>(d.n()), cfg2.K);
  WholeResult out;
  out.cv = select_alpha_quantum(d, p, cfg2);
  out.alpha_hat = out.cv.alpha_hat_quantum;
  cfg1.alpha = out.alpha_hat;
  out.fit = algorithm1_run(d, cfg1);
  out.fit.counters.o_x += out.cv.counters.o_x;
  out.fit.counters.o_y += out.cv.counters.o_y;
  out.fit.counters.o_x_inv += out.cv.counters.o_x_inv;
  out.fit.counters.ham_steps += out.cv.counters.ham_steps;
  return out;
}

}  // namespace qrr::alg
