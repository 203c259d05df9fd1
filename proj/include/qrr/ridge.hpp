#pragma once

// Exact classical ridge regression and K-fold cross-validation.  Ground
// truth for every quantum estimate produced by the pipelines.

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qrr/errors.hpp"
#include "qrr/numkit.hpp"

namespace qrr::ridge {

using numkit::CMatrix;
using numkit::RMatrix;
using numkit::RVector;

/// Design matrix X (N x M), outputs y (N), with cached scale metadata.
/// CSV ingestion additionally requires N >= 2; the type itself accepts
/// N >= 1 so single-row closed-form cases remain expressible.
struct Dataset {
  RMatrix X;
  RVector y;

  // metadata cache, consistent with X and y
  double kappa = 0.0;    // NaN when X == 0
  double x_max = 0.0;    // ||X||_max
  double y_max = 0.0;    // ||y||_max
  Eigen::Index rank = 0;

  Dataset(RMatrix x_in, RVector y_in) : X(std::move(x_in)), y(std::move(y_in)) {
    if (X.rows() < 1 || X.cols() < 1) throw input_error("Dataset: empty design matrix");
    if (y.size() != X.rows()) throw input_error("Dataset: y length must equal row count");
    if (!X.allFinite() || !y.allFinite()) throw input_error("Dataset: non-finite entries");
    recompute_metadata();
  }

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index m() const { return X.cols(); }
  Eigen::Index dim_sum() const { return X.rows() + X.cols(); }

  void recompute_metadata() {
    x_max = X.size() ? X.cwiseAbs().maxCoeff() : 0.0;
    y_max = y.size() ? y.cwiseAbs().maxCoeff() : 0.0;
    const numkit::SvdFactors f = numkit::svd(X.cast<numkit::Complex>());
    rank = f.rank;
    kappa = rank > 0 ? f.singular_values(0) / f.singular_values(rank - 1)
                     : std::numeric_limits<double>::quiet_NaN();
  }
};

struct RidgeSolution {
  double alpha = 0.0;
  RVector w;
  double residual_sum = 0.0;  // ||Xw - y||^2
  bool zero_rhs = false;      // y == 0, solution forced to w = 0
};

namespace detail {
inline RidgeSolution make_solution(const RMatrix& x, const RVector& y, double alpha,
                                   RVector w, bool zero_rhs = false) {
  RidgeSolution s;
  s.alpha = alpha;
  s.w = std::move(w);
  s.residual_sum = (x * s.w - y).squaredNorm();
  s.zero_rhs = zero_rhs;
  return s;
}
}  // namespace detail

/// w = (X^T X + alpha I)^{-1} X^T y via the normal equations.
inline RidgeSolution solve_ridge_normal(const Dataset& d, double alpha) {
  if (alpha < 0.0) throw input_error("solve_ridge_normal: alpha must be >= 0");
  if (alpha == 0.0 && d.rank < d.m()) {
    throw degeneracy_error("solve_ridge_normal: X^T X singular at alpha = 0 (rank " +
                           std::to_string(d.rank) + " < " + std::to_string(d.m()) + ")");
  }
  const RMatrix gram =
      d.X.transpose() * d.X + alpha * RMatrix::Identity(d.m(), d.m());
  RVector w = gram.ldlt().solve(d.X.transpose() * d.y);
  return detail::make_solution(d.X, d.y, alpha, std::move(w));
}

/// Spectral form: w = sum_j lambda_j/(lambda_j^2 + alpha) beta_j ||y|| v_j.
inline RidgeSolution solve_ridge_svd(const Dataset& d, double alpha) {
  if (alpha < 0.0) throw input_error("solve_ridge_svd: alpha must be >= 0");
  if (d.y.norm() == 0.0)
    return detail::make_solution(d.X, d.y, alpha, RVector::Zero(d.m()), true);
  const numkit::SvdFactors f = numkit::svd(d.X.cast<numkit::Complex>());
  RVector w = RVector::Zero(d.m());
  for (Eigen::Index j = 0; j < f.rank; ++j) {
    const double lam = f.singular_values(j);
    const double uy = (f.left_vectors.col(j).real().transpose() * d.y).value();
    w += lam / (lam * lam + alpha) * uy * f.right_vectors.col(j).real();
  }
  return detail::make_solution(d.X, d.y, alpha, std::move(w));
}

struct PredictiveBound {
  double error_sum = 0.0;    // ||Xw - y||^2
  double lower_bound = 0.0;  // ||y||^2 (1 - Lambda(2-Lambda) sum beta_j^2)
  double Lambda = 0.0;       // max_j lambda_j^2/(lambda_j^2 + alpha)
};

inline PredictiveBound predictive_error_bound(const Dataset& d, double alpha) {
  if (alpha <= 0.0) throw input_error("predictive_error_bound: alpha must be > 0");
  const RidgeSolution sol = solve_ridge_svd(d, alpha);
  const numkit::SvdFactors f = numkit::svd(d.X.cast<numkit::Complex>());
  const double y2 = d.y.squaredNorm();
  PredictiveBound b;
  b.error_sum = sol.residual_sum;
  double beta_support = 0.0;
  for (Eigen::Index j = 0; j < f.rank; ++j) {
    const double lam2 = f.singular_values(j) * f.singular_values(j);
    b.Lambda = std::max(b.Lambda, lam2 / (lam2 + alpha));
    const double uy = (f.left_vectors.col(j).real().transpose() * d.y).value();
    beta_support += uy * uy / std::max(y2, 1e-300);
  }
  b.lower_bound = y2 * (1.0 - b.Lambda * (2.0 - b.Lambda) * beta_support);
  if (b.error_sum < b.lower_bound - 1e-9 * std::max(1.0, y2))
    throw contract_error("predictive_error_bound: inequality violated");
  return b;
}

/// Contiguous folds, 0-based.  K does not need to divide N: the last fold
/// absorbs the remainder so no point is ever dropped and the earlier folds
/// keep the exact size N/K.
struct FoldPartition {
  int K = 0;
  std::vector<std::vector<int>> folds;

  int fold_of(int row) const {
    for (int l = 0; l < K; ++l)
      for (int r : folds[l])
        if (r == row) return l;
    throw input_error("FoldPartition: row not in any fold");
  }
};

inline FoldPartition partition_folds(int n, int k) {
  if (k < 2 || k > n) throw input_error("partition_folds: require 2 <= K <= N");
  FoldPartition p;
  p.K = k;
  const int base = n / k;
  int next = 0;
  for (int l = 0; l < k; ++l) {
    const int sz = (l == k - 1) ? n - base * (k - 1) : base;
    std::vector<int> fold(sz);
    for (int i = 0; i < sz; ++i) fold[i] = next++;
    p.folds.push_back(std::move(fold));
  }
  return p;
}

struct MaskedDesign {
  RMatrix X_fold;   // |S_l| x M extraction
  RMatrix X_minus;  // N x M with the S_l rows zeroed
  RVector y_fold;   // |S_l|
  RVector y_minus;  // N with the S_l entries zeroed
};

inline MaskedDesign masked_design(const Dataset& d, const FoldPartition& p, int l) {
  if (l < 0 || l >= p.K) throw input_error("masked_design: fold index out of range");
  const auto& fold = p.folds[l];
  MaskedDesign md;
  md.X_fold.resize(fold.size(), d.m());
  md.y_fold.resize(fold.size());
  md.X_minus = d.X;
  md.y_minus = d.y;
  for (std::size_t i = 0; i < fold.size(); ++i) {
    md.X_fold.row(i) = d.X.row(fold[i]);
    md.y_fold(i) = d.y(fold[i]);
    md.X_minus.row(fold[i]).setZero();
    md.y_minus(fold[i]) = 0.0;
  }
  return md;
}

/// w_l = (X_{-l}^T X_{-l} + alpha I)^{-1} X_{-l}^T y_{-l}
inline RidgeSolution fold_solution(const Dataset& d, const FoldPartition& p, int l,
                                   double alpha) {
  if (alpha <= 0.0) throw input_error("fold_solution: alpha must be > 0");
  const MaskedDesign md = masked_design(d, p, l);
  const RMatrix gram =
      md.X_minus.transpose() * md.X_minus + alpha * RMatrix::Identity(d.m(), d.m());
  RVector w = gram.ldlt().solve(md.X_minus.transpose() * md.y_minus);
  return detail::make_solution(md.X_minus, md.y_minus, alpha, std::move(w));
}

inline std::vector<RidgeSolution> fold_solutions(const Dataset& d, const FoldPartition& p,
                                                 double alpha) {
  std::vector<RidgeSolution> out;
  out.reserve(p.K);
  for (int l = 0; l < p.K; ++l) out.push_back(fold_solution(d, p, l, alpha));
  return out;
}

struct CvTerms {
  double E = 0.0;   // sum_l ||y_l - X_l w_l||^2
  double E1 = 0.0;  // sum_l ||y_l||^2
  double E2 = 0.0;  // sum_l ||X_l w_l||^2
  double S3 = 0.0;  // sum_l y_l^T X_l w_l  (E = E1 + E2 - 2 S3)
};

inline CvTerms cv_error_exact(const Dataset& d, const FoldPartition& p, double alpha) {
  if (alpha <= 0.0) throw input_error("cv_error_exact: alpha must be > 0");
  CvTerms t;
  double direct = 0.0;
  for (int l = 0; l < p.K; ++l) {
    const MaskedDesign md = masked_design(d, p, l);
    const RidgeSolution sol = fold_solution(d, p, l, alpha);
    const RVector pred = md.X_fold * sol.w;
    t.E1 += md.y_fold.squaredNorm();
    t.E2 += pred.squaredNorm();
    t.S3 += md.y_fold.dot(pred);
    direct += (md.y_fold - pred).squaredNorm();
  }
  t.E = t.E1 + t.E2 - 2.0 * t.S3;
  if (std::abs(t.E - direct) > 1e-10 * std::max(1.0, direct))
    throw contract_error("cv_error_exact: expanded and direct forms disagree");
  return t;
}

struct CvCurve {
  std::vector<double> alphas;
  std::vector<double> E_values;
  double E1 = 0.0;          // alpha-independent
  std::vector<double> E2;   // per alpha
  std::vector<double> S3;   // per alpha
  int argmin_index = 0;
};

/// Argmin of E over the grid; ties broken toward larger alpha.
inline std::pair<double, int> select_alpha(const CvCurve& curve) {
  if (curve.alphas.empty()) throw input_error("select_alpha: empty curve");
  int best = static_cast<int>(curve.E_values.size()) - 1;
  for (int i = best - 1; i >= 0; --i)
    if (curve.E_values[i] < curve.E_values[best]) best = i;
  return {curve.alphas[best], best};
}

inline CvCurve cv_curve(const Dataset& d, const FoldPartition& p,
                        const std::vector<double>& alphas) {
  CvCurve c;
  c.alphas = alphas;
  for (double a : alphas) {
    const CvTerms t = cv_error_exact(d, p, a);
    c.E1 = t.E1;
    c.E_values.push_back(t.E);
    c.E2.push_back(t.E2);
    c.S3.push_back(t.S3);
  }
  c.argmin_index = select_alpha(c).second;
  return c;
}

/// Uniform grid alpha_j = alpha_min + (j-1)(alpha_max-alpha_min)/(L-1).
/// L = 1 degenerates to {alpha_min}.
inline std::vector<double> alpha_grid(double alpha_min, double alpha_max, int L) {
  if (!(alpha_min > 0.0)) throw input_error("alpha_grid: alpha_min must be > 0");
  if (L == 1) return {alpha_min};
  if (!(alpha_min < alpha_max)) throw input_error("alpha_grid: require alpha_min < alpha_max");
  if (L < 2) throw input_error("alpha_grid: require L >= 1");
  std::vector<double> grid(L);
  for (int j = 0; j < L; ++j)
    grid[j] = alpha_min + static_cast<double>(j) * (alpha_max - alpha_min) / (L - 1);
  return grid;
}

/// Default candidate range [(N+M)^2/(10 kappa^2), (N+M)^2/2].
inline std::pair<double, double> default_alpha_range(const Dataset& d) {
  if (!(d.kappa > 0.0)) throw input_error("default_alpha_range: dataset has no spectrum");
  const double s = static_cast<double>(d.dim_sum());
  return {s * s / (kAlphaWindowLow * d.kappa * d.kappa), s * s / kAlphaWindowHigh};
}

/// sum y_j^2 / (N ||y||_max^2) in (0, 1]; the amplitude-encoding efficiency.
inline double balancedness(const RVector& y) {
  const double ymax = y.size() ? y.cwiseAbs().maxCoeff() : 0.0;
  if (ymax == 0.0) throw input_error("balancedness: zero vector");
  return y.squaredNorm() / (static_cast<double>(y.size()) * ymax * ymax);
}

}  // namespace qrr::ridge
