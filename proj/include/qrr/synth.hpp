#pragma once

// Seeded synthetic instances: X = U diag(spectrum) V^T with Haar-random
// orthonormal factors, y built from a coefficient vector over the left
// singular directions plus optional Gaussian noise.

#include <cmath>
#include <cstdint>
#include <vector>

#include "qrr/errors.hpp"
#include "qrr/numkit.hpp"
#include "qrr/ridge.hpp"
#include "qrr/rng.hpp"

namespace qrr::synth {

using numkit::RMatrix;
using numkit::RVector;

struct GenSpec {
  int n = 4;
  int m = 3;
  std::vector<double> spectrum;  // planted singular values, descending
  std::vector<double> beta;      // weights on u_j; empty -> equal weights
  double noise_level = 0.0;      // relative to ||y||
  double y_norm = 1.0;
  std::uint64_t seed = 1;
  bool enforce_convention = true;  // require lambda_max <= N+M
};

namespace detail {

// Haar-ish orthonormal columns via QR of a Gaussian matrix, sign-fixed.
inline RMatrix random_orthonormal(int rows, int cols, Rng& rng) {
  RMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<RMatrix> qr(g);
  RMatrix q = qr.householderQ() * RMatrix::Identity(rows, cols);
  const RMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace detail

inline ridge::Dataset generate(const GenSpec& spec) {
  if (spec.n < 1 || spec.m < 1) throw input_error("generate: need N >= 1, M >= 1");
  const int rank = static_cast<int>(spec.spectrum.size());
  if (rank < 1 || rank > std::min(spec.n, spec.m))
    throw input_error("generate: spectrum length must be in [1, min(N, M)]");
  const double dim_sum = spec.n + spec.m;
  for (std::size_t j = 0; j < spec.spectrum.size(); ++j) {
    if (!(spec.spectrum[j] > 0.0)) throw input_error("generate: spectrum must be positive");
    if (j && spec.spectrum[j] > spec.spectrum[j - 1] + 1e-12)
      throw input_error("generate: spectrum must be descending");
    if (spec.enforce_convention && spec.spectrum[j] > dim_sum * (1.0 + 1e-9))
      throw input_error("generate: spectrum exceeds N+M (override enforce_convention)");
  }
  if (!spec.beta.empty() && static_cast<int>(spec.beta.size()) != rank)
    throw input_error("generate: beta length must match spectrum length");

  Rng rng(spec.seed);
  const RMatrix u = detail::random_orthonormal(spec.n, rank, rng);
  const RMatrix v = detail::random_orthonormal(spec.m, rank, rng);
  RVector sigma(rank);
  for (int j = 0; j < rank; ++j) sigma(j) = spec.spectrum[j];
  const RMatrix x = u * sigma.asDiagonal() * v.transpose();

  RVector beta(rank);
  if (spec.beta.empty())
    beta.setConstant(1.0);
  else
    for (int j = 0; j < rank; ++j) beta(j) = spec.beta[j];
  beta /= beta.norm();

  RVector y = u * beta;
  if (spec.noise_level > 0.0) {
    RVector g(spec.n);
    for (int i = 0; i < spec.n; ++i) g(i) = rng.gaussian();
    y += spec.noise_level * g / g.norm();
  }
  y *= spec.y_norm / y.norm();
  return ridge::Dataset(x, y);
}

/// Spectrum whose phase-estimation values are exact s-bit fractions under
/// the auto scale t0 = 2 pi (1/2 - 2^{-s}) / mu_max: ratios to lambda_max
/// are integers over 2^{s-1} - 1.
inline std::vector<double> representable_spectrum(double dim_sum, double kappa, int s,
                                                  int count, Rng& rng) {
  const int denom = (1 << (s - 1)) - 1;
  const int k_min = static_cast<int>(std::ceil(denom / kappa));
  if (k_min < 1 || k_min > denom)
    throw input_error("representable_spectrum: kappa incompatible with s");
  std::vector<int> ks = {denom};  // lambda_max itself
  for (int i = 1; i < count; ++i)
    ks.push_back(static_cast<int>(rng.integer(k_min, denom)));
  std::sort(ks.begin(), ks.end(), std::greater<int>());
  std::vector<double> out;
  for (int k : ks) out.push_back(dim_sum * static_cast<double>(k) / denom);
  return out;
}

}  // namespace qrr::synth
