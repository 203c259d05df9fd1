#pragma once

// Closed-form evaluation and empirical verification of the analytic bounds:
// the spectral-filter maximum h_max and its relative-error envelope g_max
// (case formulas over the regularization range), Weyl intervals for the
// masked-fold singular values, the K recommendation, the P_w scale chain,
// the good-fit P_1/P_2 bounds, and the rank/condition-number bound.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qrr/constants.hpp"
#include "qrr/errors.hpp"
#include "qrr/numkit.hpp"
#include "qrr/ridge.hpp"

namespace qrr::bounds {

using numkit::RMatrix;
using numkit::RVector;

struct BoundReport {
  std::string name;
  double analytic_value = 0.0;
  double empirical_value = 0.0;
  bool satisfied = false;
  double margin = 0.0;
  bool applicable = true;
};

/// h(lambda, alpha) = (N+M) lambda / (lambda^2 + alpha)
inline double h_filter(double dim_sum, double lambda, double alpha) {
  return dim_sum * lambda / (lambda * lambda + alpha);
}

/// max_lambda h over [(N+M)/kappa, N+M]; three-case formula in alpha.
inline double h_max(double dim_sum, double kappa, double alpha) {
  if (!(alpha > 0.0)) throw input_error("h_max: alpha must be > 0");
  if (!(kappa >= 1.0)) throw input_error("h_max: kappa must be >= 1");
  const double s2 = dim_sum * dim_sum;
  if (alpha <= s2 / (kappa * kappa)) return s2 * kappa / (s2 + kappa * kappa * alpha);
  if (alpha <= s2) return dim_sum / (2.0 * std::sqrt(alpha));
  return s2 / (s2 + alpha);
}

/// Exact maximum of h over an arbitrary interval [lo, hi] (h is unimodal
/// with its peak at sqrt(alpha)).  On the convention interval
/// [(N+M)/kappa, N+M] this reproduces the three-case formula above; the
/// pipelines evaluate it on the actual spectral interval so rotation
/// constants stay safe for off-convention data.
inline double h_max_interval(double dim_sum, double lo, double hi, double alpha) {
  if (!(alpha > 0.0)) throw input_error("h_max_interval: alpha must be > 0");
  if (!(lo > 0.0) || !(lo <= hi)) throw input_error("h_max_interval: bad interval");
  const double peak = std::sqrt(alpha);
  const double at = std::clamp(peak, lo, hi);
  return h_filter(dim_sum, at, alpha);
}

/// max h / min h over the lambda interval is at most kappa + 1/kappa.
inline double h_ratio_bound(double kappa) {
  if (!(kappa >= 1.0)) throw input_error("h_ratio_bound: kappa must be >= 1");
  return kappa + 1.0 / kappa;
}

/// g(lambda) = (alpha - lambda^2) / (lambda (lambda^2 + alpha)), the
/// relative-error envelope of h.
inline double g_envelope(double lambda, double alpha) {
  return (alpha - lambda * lambda) / (lambda * (lambda * lambda + alpha));
}

/// max_lambda |g| over [(N+M)/kappa, N+M]; five-case formula in alpha,
/// ranges half-open on the left.  |g| falls to zero at lambda = sqrt(alpha)
/// and has one interior maximum at lambda = sqrt((2+sqrt(5)) alpha).
inline double g_max(double dim_sum, double kappa, double alpha) {
  if (!(alpha > 0.0)) throw input_error("g_max: alpha must be > 0");
  if (!(kappa >= 1.0)) throw input_error("g_max: kappa must be >= 1");
  const double s2 = dim_sum * dim_sum;
  const double phi = 2.0 + std::sqrt(5.0);
  const double low_end = (s2 * kappa - kappa * kappa * kappa * alpha) /
                         (dim_sum * (s2 + kappa * kappa * alpha));
  const double low_end_abs = std::abs(low_end);
  const double interior = (1.0 + std::sqrt(5.0)) /
                          (std::sqrt(phi) * (3.0 + std::sqrt(5.0)) * std::sqrt(alpha));
  const double high_end = (s2 - alpha) / (dim_sum * (s2 + alpha));

  if (alpha <= s2 / (phi * kappa * kappa)) return low_end_abs;        // (1)
  if (alpha <= s2 / (kappa * kappa)) return interior;                 // (2)
  if (alpha <= s2 / phi) return std::max(low_end_abs, interior);      // (3)
  if (alpha <= s2) return std::max(low_end_abs, high_end);            // (4)
  return low_end_abs;                                                 // (5)
}

struct WeylResult {
  double lower = 0.0;  // bound on the smallest paired squared singular value
  double upper = 0.0;  // lambda_1^2
  BoundReport report;
};

/// Per-index check lambda_j^2 - ||sum_{i in S_l} x_i x_i^T|| <= lambda_{lj}^2
/// <= lambda_j^2, spectra sorted descending and index-paired.
inline WeylResult weyl_interval(const ridge::Dataset& d, const ridge::FoldPartition& p,
                                int l) {
  const ridge::MaskedDesign md = ridge::masked_design(d, p, l);
  const auto f_full = numkit::svd(d.X.cast<numkit::Complex>());
  const auto f_mask = numkit::svd(md.X_minus.cast<numkit::Complex>());
  const double shift = numkit::spectral_norm(
      (md.X_fold.transpose() * md.X_fold).cast<numkit::Complex>());

  const Eigen::Index count = std::min(f_full.singular_values.size(),
                                      f_mask.singular_values.size());
  WeylResult res;
  res.report.name = "weyl_interval_fold_" + std::to_string(l);
  res.report.satisfied = true;
  res.report.margin = std::numeric_limits<double>::infinity();
  double scale = f_full.singular_values.size() ? f_full.singular_values(0) : 1.0;
  const double slack = 1e-9 * std::max(1.0, scale * scale);
  for (Eigen::Index j = 0; j < count; ++j) {
    const double lj2 = f_full.singular_values(j) * f_full.singular_values(j);
    const double mj2 = f_mask.singular_values(j) * f_mask.singular_values(j);
    const bool ok = (mj2 <= lj2 + slack) && (mj2 >= lj2 - shift - slack);
    res.report.satisfied = res.report.satisfied && ok;
    res.report.margin = std::min(res.report.margin,
                                 std::min(lj2 + slack - mj2, mj2 - (lj2 - shift) + slack));
  }
  res.lower = count ? std::max(0.0, f_full.singular_values(count - 1) *
                                            f_full.singular_values(count - 1) -
                                        shift)
                    : 0.0;
  res.upper = f_full.singular_values.size()
                  ? f_full.singular_values(0) * f_full.singular_values(0)
                  : 0.0;
  res.report.analytic_value = res.lower;
  res.report.empirical_value =
      count ? f_mask.singular_values(count - 1) * f_mask.singular_values(count - 1) : 0.0;
  return res;
}

/// K = ceil(N M ||X||_max^2 kappa^2 / (N+M)^2), clamped to [2, N].
inline int k_min_recommendation(const ridge::Dataset& d) {
  if (!(d.kappa > 0.0)) throw input_error("k_min_recommendation: dataset has no spectrum");
  const double s = static_cast<double>(d.dim_sum());
  const double raw = std::ceil(static_cast<double>(d.n()) * static_cast<double>(d.m()) *
                               d.x_max * d.x_max * d.kappa * d.kappa / (s * s));
  return static_cast<int>(std::clamp(raw, 2.0, static_cast<double>(d.n())));
}

/// Spectral interval [min nonzero, max] across all masked-design spectra.
inline std::pair<double, double> fold_spectral_interval(const ridge::Dataset& d,
                                                        const ridge::FoldPartition& p) {
  double min_sv = std::numeric_limits<double>::infinity();
  double max_sv = 0.0;
  for (int l = 0; l < p.K; ++l) {
    const ridge::MaskedDesign md = ridge::masked_design(d, p, l);
    const auto f = numkit::svd(md.X_minus.cast<numkit::Complex>());
    if (f.rank > 0) {
      min_sv = std::min(min_sv, f.singular_values(f.rank - 1));
      max_sv = std::max(max_sv, f.singular_values(0));
    }
  }
  if (!std::isfinite(min_sv) || min_sv <= 0.0)
    throw degeneracy_error("fold_spectral_interval: every masked design is zero");
  return {min_sv, max_sv};
}

/// Condition-number analogue for the masked designs: (N+M) over the smallest
/// nonzero masked singular value, so the filter interval
/// [(N+M)/kappa', N+M] covers every fold spectrum.
inline double fold_kappa(const ridge::Dataset& d, const ridge::FoldPartition& p) {
  return static_cast<double>(d.dim_sum()) / fold_spectral_interval(d, p).first;
}

/// The exact chain inequality behind the P_w scale:
/// sum_l ||X_{-l}^T y_{-l}||^2 >= (K-1)^2 ||X^T y||^2 / K.
inline BoundReport pw_lower_bound(const ridge::Dataset& d, const ridge::FoldPartition& p,
                                  double alpha, double c2) {
  (void)alpha;
  (void)c2;
  BoundReport rep;
  rep.name = "pw_chain_inequality";
  double lhs = 0.0;
  for (int l = 0; l < p.K; ++l) {
    const ridge::MaskedDesign md = ridge::masked_design(d, p, l);
    lhs += (md.X_minus.transpose() * md.y_minus).squaredNorm();
  }
  const double xty = (d.X.transpose() * d.y).squaredNorm();
  const double rhs = static_cast<double>(p.K - 1) * static_cast<double>(p.K - 1) * xty /
                     static_cast<double>(p.K);
  rep.empirical_value = lhs;
  rep.analytic_value = rhs;
  rep.margin = lhs - rhs;
  rep.satisfied = lhs >= rhs - 1e-9 * std::max(1.0, rhs);
  return rep;
}

/// Soft form P_w >= kPwOmegaConstant / (kappa'^2 kappa^2) with the stored
/// calibration constant; p_w is the exact measurement probability.
inline BoundReport pw_scale_report(const ridge::Dataset& d, const ridge::FoldPartition& p,
                                   double p_w) {
  BoundReport rep;
  rep.name = "pw_scale";
  const double kp = fold_kappa(d, p);
  rep.analytic_value = kPwOmegaConstant / (kp * kp * d.kappa * d.kappa);
  rep.empirical_value = p_w;
  rep.margin = p_w - rep.analytic_value;
  rep.satisfied = p_w >= rep.analytic_value - 1e-12;
  return rep;
}

struct GoodFitReports {
  BoundReport w_norm;  // per-fold ||w_l||^2 <= kappa'^2 ||y||^2 / (N+M)^2
  BoundReport p1;      // P_1 >= (N+M)^2 / (M N kappa'^2 ||X||_max^2)
  BoundReport p2;      // P_2 >= 0.95
  bool applicable = true;
};

/// Relative held-out residual below this marks an instance as good-fit; the
/// P_1/P_2 bounds only claim anything there.
inline constexpr double kGoodFitResidualThreshold = 0.02;

inline GoodFitReports p1_p2_goodfit_bounds(const ridge::Dataset& d,
                                           const ridge::FoldPartition& p, double alpha) {
  GoodFitReports out;
  const double kp = fold_kappa(d, p);
  const double s = static_cast<double>(d.dim_sum());
  const double y2 = d.y.squaredNorm();

  const auto sols = ridge::fold_solutions(d, p, alpha);
  double w_bound = kp * kp * y2 / (s * s);
  double w_worst = 0.0;
  double pred_sq = 0.0, cross = 0.0, resid = 0.0, w_sum_weighted = 0.0;
  for (int l = 0; l < p.K; ++l) {
    const ridge::MaskedDesign md = ridge::masked_design(d, p, l);
    const RVector pred = md.X_fold * sols[l].w;
    pred_sq += pred.squaredNorm();
    cross += md.y_fold.dot(pred);
    resid += (md.y_fold - pred).squaredNorm();
    w_worst = std::max(w_worst, sols[l].w.squaredNorm());
    w_sum_weighted += static_cast<double>(p.folds[l].size()) * sols[l].w.squaredNorm();
  }
  out.w_norm = {"goodfit_w_norm", w_bound, w_worst, w_worst <= w_bound + 1e-9 * w_bound,
                w_bound - w_worst, true};

  out.applicable = resid <= kGoodFitResidualThreshold * y2;
  const double p1 = pred_sq / (static_cast<double>(d.m()) * d.x_max * d.x_max * w_sum_weighted);
  const double p1_bound = s * s / (static_cast<double>(d.m()) * static_cast<double>(d.n()) *
                                   kp * kp * d.x_max * d.x_max);
  out.p1 = {"goodfit_p1", p1_bound, p1, p1 >= p1_bound - 1e-12, p1 - p1_bound,
            out.applicable};

  const double p2 = 0.5 + 0.5 * cross * cross / (y2 * pred_sq);
  out.p2 = {"goodfit_p2", 0.95, p2, p2 >= 0.95, p2 - 0.95, out.applicable};
  if (!out.applicable) {
    // never a failure on instances outside the good-fit regime
    out.p1.satisfied = true;
    out.p2.satisfied = true;
  }
  return out;
}

/// R / kappa^2 <= N M ||X||_max^2 / (N+M)^2 under the spectrum convention
/// lambda_j in [(N+M)/kappa, N+M] (i.e. lambda_max = N+M up to tolerance).
inline BoundReport rank_kappa_bound(const ridge::Dataset& d) {
  BoundReport rep;
  rep.name = "rank_kappa";
  const auto f = numkit::svd(d.X.cast<numkit::Complex>());
  const double s = static_cast<double>(d.dim_sum());
  const double lam_max = f.rank ? f.singular_values(0) : 0.0;
  rep.applicable = f.rank > 0 && std::abs(lam_max - s) <= 1e-6 * s;
  rep.empirical_value = static_cast<double>(f.rank) / (d.kappa * d.kappa);
  rep.analytic_value = static_cast<double>(d.n()) * static_cast<double>(d.m()) *
                       d.x_max * d.x_max / (s * s);
  rep.margin = rep.analytic_value - rep.empirical_value;
  rep.satisfied = !rep.applicable || rep.empirical_value <= rep.analytic_value + 1e-9;
  return rep;
}

/// Grid-search oracle for the h/g case formulas.
inline double grid_max_abs(double dim_sum, double kappa, double alpha, bool use_g,
                           std::size_t points = 100000) {
  const double lo = dim_sum / kappa, hi = dim_sum;
  double best = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double lam = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    const double v = use_g ? std::abs(g_envelope(lam, alpha)) : h_filter(dim_sum, lam, alpha);
    best = std::max(best, v);
  }
  return best;
}

}  // namespace qrr::bounds
