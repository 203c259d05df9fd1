#pragma once

// Quantum register machinery: amplitude-encoded state preparation with
// postselection accounting, exact QFT-based phase estimation with signed
// eigenvalue decoding, controlled spectral-filter rotations, swap tests,
// and oracle-call instrumentation.
//
// Amplitude indexing: the first register in a layout is the slowest index,
// i.e. index = ((i0*d1 + i1)*d2 + i2)...  Newly created registers are
// appended last (fastest index).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qrr/counters.hpp"
#include "qrr/errors.hpp"
#include "qrr/numkit.hpp"
#include "qrr/ridge.hpp"
#include "qrr/rng.hpp"

namespace qrr::qcore {

using numkit::CMatrix;
using numkit::Complex;
using numkit::CVector;
using numkit::RVector;

struct Register {
  std::string name;
  std::size_t dim = 0;
};

using RegisterLayout = std::vector<Register>;

inline std::size_t layout_dim(const RegisterLayout& layout) {
  std::size_t d = 1;
  for (const auto& r : layout) d *= r.dim;
  return d;
}

struct PureState {
  CVector amplitudes;
  RegisterLayout layout;

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }

  std::size_t register_index(const std::string& name) const {
    for (std::size_t i = 0; i < layout.size(); ++i)
      if (layout[i].name == name) return i;
    throw input_error("PureState: no register named '" + name + "'");
  }

  void check() const {
    if (layout_dim(layout) != dim())
      throw contract_error("PureState: layout does not match amplitude count");
    if (std::abs(amplitudes.norm() - 1.0) > 1e-10)
      throw contract_error("PureState: amplitudes not unit norm");
  }
};

inline PureState make_state(CVector amps, RegisterLayout layout) {
  PureState s{std::move(amps), std::move(layout)};
  s.check();
  return s;
}

struct PostselectRecord {
  double probability = 0.0;
  PureState post_state;
  std::string outcome_label;
  OracleCounters oracle_calls;  // snapshot after the operation
};

struct PhaseEstimateRecord {
  int s = 0;
  double t0 = 0.0;
  // (decoded signed eigenvalue of the generator, weight); weights sum to 1
  std::vector<std::pair<double, double>> peaks;
};

// ---------------------------------------------------------------------------
// state preparation
// ---------------------------------------------------------------------------

/// Amplitude-encodes v/||v||.  Circuit mode models the O_y + rotation +
/// uncompute construction: success probability sum v_j^2 / (N ||v||_max^2);
/// exact mode idealizes the preparation with probability 1.
inline PostselectRecord prepare_amplitude_state(const RVector& v, bool exact,
                                                OracleCounters* counters = nullptr,
                                                const std::string& reg_name = "amp") {
  if (v.size() == 0 || v.norm() == 0.0)
    throw input_error("prepare_amplitude_state: zero vector");
  if (counters) counters->o_y += 2;  // oracle + uncompute per attempt
  PostselectRecord rec;
  rec.probability = exact ? 1.0 : ridge::balancedness(v);
  rec.post_state = make_state((v / v.norm()).cast<Complex>(),
                              {{reg_name, static_cast<std::size_t>(v.size())}});
  rec.outcome_label = exact ? "exact" : "flag=1";
  if (counters) rec.oracle_calls = counters->snapshot();
  return rec;
}

/// ||v||^2 = N P_y ||v||_max^2, with optional multiplicative estimation
/// noise uniform in [1-rel_err, 1+rel_err].  The accounted amplitude
/// estimation costs ceil(sqrt((1-P_y)/P_y)/rel_err) oracle+uncompute pairs.
inline double estimate_norm_sq(const RVector& v, double rel_err, bool noisy = false,
                               Rng* rng = nullptr, OracleCounters* counters = nullptr) {
  if (!(rel_err > 0.0)) throw input_error("estimate_norm_sq: rel_err must be > 0");
  const double p_y = ridge::balancedness(v);
  const double vmax = v.cwiseAbs().maxCoeff();
  double value = static_cast<double>(v.size()) * p_y * vmax * vmax;
  if (counters) {
    const double reps = std::ceil(std::sqrt(std::max(0.0, (1.0 - p_y) / p_y)) / rel_err);
    counters->o_y += 2 * std::max<std::uint64_t>(1, static_cast<std::uint64_t>(reps));
  }
  if (noisy) {
    if (!rng) throw input_error("estimate_norm_sq: noise mode needs an Rng");
    value *= 1.0 + rng->symmetric(rel_err);
  }
  return value;
}

/// |psi_0> = sum_l (sum_{tau in S_l} |tau>) (x) ||y_{-l}|| |0, y_{-l}>,
/// normalized.  The probability is the kick-out postselection mass,
/// (K-1)/K for equal fold sizes.
inline PostselectRecord prepare_psi0(const ridge::Dataset& d, const ridge::FoldPartition& p,
                                     OracleCounters* counters = nullptr) {
  const Eigen::Index n = d.n(), m = d.m();
  if (counters) counters->o_y += 2;
  CVector amps = CVector::Zero(n * (n + m));
  for (int l = 0; l < p.K; ++l)
    for (int tau : p.folds[l])
      for (Eigen::Index j = 0; j < n; ++j) {
        bool in_fold = false;
        for (int r : p.folds[l]) in_fold = in_fold || (r == j);
        if (!in_fold) amps(tau * (n + m) + j) = d.y(j);
      }
  const double mass = amps.squaredNorm();
  const double total = static_cast<double>(n) * d.y.squaredNorm();
  if (mass <= 0.0) throw degeneracy_error("prepare_psi0: empty post-measurement state");
  PostselectRecord rec;
  rec.probability = mass / total;
  rec.post_state = make_state(amps / std::sqrt(mass),
                              {{"index", static_cast<std::size_t>(n)},
                               {"system", static_cast<std::size_t>(n + m)}});
  rec.outcome_label = "kick-out=1";
  if (counters) rec.oracle_calls = counters->snapshot();
  return rec;
}

// ---------------------------------------------------------------------------
// phase estimation
// ---------------------------------------------------------------------------

namespace detail {

// radix-2 DFT, X_m = (1/sqrt(T)) sum_j x_j e^{+2 pi i j m / T}
inline void fft_unitary(CVector& x) {
  const std::size_t n = static_cast<std::size_t>(x.size());
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x(i), x(j));
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * M_PI / static_cast<double>(len);
    const Complex wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = x(i + k);
        const Complex v = x(i + k + len / 2) * w;
        x(i + k) = u + v;
        x(i + k + len / 2) = u - v;
        w *= wl;
      }
    }
  }
  x /= std::sqrt(static_cast<double>(n));
}

// fast Walsh-Hadamard transform (self-inverse, unitary)
inline void hadamard_transform(CVector& x) {
  const std::size_t n = static_cast<std::size_t>(x.size());
  for (std::size_t len = 1; len < n; len <<= 1)
    for (std::size_t i = 0; i < n; i += len << 1)
      for (std::size_t k = 0; k < len; ++k) {
        const Complex u = x(i + k);
        const Complex v = x(i + k + len);
        x(i + k) = u + v;
        x(i + k + len) = u - v;
      }
  x /= std::sqrt(static_cast<double>(n));
}

// Phase-register amplitude on bin m for eigenphase phi (turns):
// c_m = (1/T) sum_{j=0}^{T-1} e^{2 pi i j (phi - m/T)}.
inline Complex pe_coefficient(double phi, std::size_t t_dim, std::size_t m) {
  double delta = phi - static_cast<double>(m) / static_cast<double>(t_dim);
  delta -= std::round(delta);  // e^{2 pi i j delta} depends on delta mod 1
  if (std::abs(delta) < 1e-300) return Complex(1.0, 0.0);
  const double td = static_cast<double>(t_dim);
  const double num = std::sin(M_PI * td * delta);
  const double den = td * std::sin(M_PI * delta);
  const double arg = M_PI * delta * (td - 1.0);
  return Complex(std::cos(arg), std::sin(arg)) * (num / den);
}

inline double decode_phase(std::size_t m, std::size_t t_dim, double t0) {
  const double signed_frac = (m < t_dim / 2)
                                 ? static_cast<double>(m) / static_cast<double>(t_dim)
                                 : (static_cast<double>(m) - static_cast<double>(t_dim)) /
                                       static_cast<double>(t_dim);
  return 2.0 * M_PI * signed_frac / t0;
}

}  // namespace detail

/// Exact phase estimation of the Hermitian generator G at scale time t0:
/// appends a 2^s-dimensional "phase" register whose bin m carries the
/// kernel amplitude c_m(mu t0 / 2 pi) per eigenvalue mu (sinc-like leakage
/// included).  Bins at or above 2^{s-1} decode as negative (wraparound),
/// so every |mu| t0 / 2 pi must stay below 1/2; a pre-scan of the spectrum
/// rejects aliasing inputs.
inline std::pair<PureState, PhaseEstimateRecord> phase_estimation(
    const CMatrix& generator, double t0, const PureState& input, int s,
    OracleCounters* counters = nullptr) {
  if (s < 1) throw input_error("phase_estimation: s must be >= 1");
  if (generator.rows() != static_cast<Eigen::Index>(input.dim()))
    throw input_error("phase_estimation: generator/state dimension mismatch");
  const numkit::EigFactors eig = numkit::eigh(generator);
  const std::size_t t_dim = std::size_t{1} << s;
  const double max_phase = eig.eigenvalues.cwiseAbs().maxCoeff() * t0 / (2.0 * M_PI);
  if (max_phase >= 0.5)
    throw contract_error("phase_estimation: eigenvalue outside the signed window (aliasing)");

  const CVector a = eig.eigenvectors.adjoint() * input.amplitudes;
  const std::size_t d = input.dim();
  CMatrix coeff(d, t_dim);  // row k: a_k * chi_k
  for (std::size_t k = 0; k < d; ++k) {
    const double phi = eig.eigenvalues(k) * t0 / (2.0 * M_PI);
    for (std::size_t m = 0; m < t_dim; ++m)
      coeff(k, m) = a(k) * detail::pe_coefficient(phi, t_dim, m);
  }
  const CMatrix out = eig.eigenvectors * coeff;  // d x T

  CVector amps(d * t_dim);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t m = 0; m < t_dim; ++m) amps(i * t_dim + m) = out(i, m);

  RegisterLayout layout = input.layout;
  layout.push_back({"phase", t_dim});

  PhaseEstimateRecord rec;
  rec.s = s;
  rec.t0 = t0;
  for (std::size_t m = 0; m < t_dim; ++m) {
    const double weight = out.col(m).squaredNorm();
    if (weight > 1e-12)
      rec.peaks.emplace_back(detail::decode_phase(m, t_dim, t0), weight);
  }
  std::sort(rec.peaks.begin(), rec.peaks.end(),
            [](const auto& x, const auto& y) { return x.second > y.second; });
  if (counters) {
    counters->ham_steps += t_dim - 1;  // controlled-U^{2^j} ladder
    counters->o_x += t_dim - 1;
  }
  return {make_state(std::move(amps), std::move(layout)), rec};
}

/// Exact inverse of phase_estimation: applies W_k^dag = H^{(x)s} D(-phi_k) F
/// on the phase register within each eigenvector sector of the generator.
/// Registers appended after "phase" (e.g. the rotation flag) ride along.
inline PureState phase_estimation_inverse(const CMatrix& generator, double t0,
                                          const PureState& state,
                                          OracleCounters* counters = nullptr) {
  const std::size_t reg = state.register_index("phase");
  std::size_t pre = 1, post = 1;
  for (std::size_t i = 0; i < reg; ++i) pre *= state.layout[i].dim;
  for (std::size_t i = reg + 1; i < state.layout.size(); ++i) post *= state.layout[i].dim;
  const std::size_t t_dim = state.layout[reg].dim;
  if (generator.rows() != static_cast<Eigen::Index>(pre))
    throw input_error("phase_estimation_inverse: generator/layout mismatch");
  const numkit::EigFactors eig = numkit::eigh(generator);

  // rows: generator space, cols: (phase, post)
  CMatrix psi(pre, t_dim * post);
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t c = 0; c < t_dim * post; ++c)
      psi(p, c) = state.amplitudes(p * t_dim * post + c);
  CMatrix a = eig.eigenvectors.adjoint() * psi;

  CVector work(t_dim);
  for (std::size_t k = 0; k < pre; ++k) {
    const double phi = eig.eigenvalues(k) * t0 / (2.0 * M_PI);
    for (std::size_t q = 0; q < post; ++q) {
      for (std::size_t m = 0; m < t_dim; ++m) work(m) = a(k, m * post + q);
      detail::fft_unitary(work);
      for (std::size_t j = 0; j < t_dim; ++j) {
        const double arg = -2.0 * M_PI * static_cast<double>(j) * phi;
        work(j) *= Complex(std::cos(arg), std::sin(arg));
      }
      detail::hadamard_transform(work);
      for (std::size_t m = 0; m < t_dim; ++m) a(k, m * post + q) = work(m);
    }
  }
  psi = eig.eigenvectors * a;

  CVector amps(state.dim());
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t c = 0; c < t_dim * post; ++c)
      amps(p * t_dim * post + c) = psi(p, c);
  if (counters) {
    counters->ham_steps += t_dim - 1;
    counters->o_x += t_dim - 1;
  }
  return make_state(std::move(amps), state.layout);
}

// ---------------------------------------------------------------------------
// controlled rotation and measurements
// ---------------------------------------------------------------------------

/// Appends a flag qubit rotated to sqrt(1 - C^2 h^2)|0> + C h |1> with
/// h(lambda, alpha) = (N+M) lambda / (lambda^2 + alpha) evaluated on the
/// decoded signed register value (leakage therefore propagates into the
/// final state exactly as on hardware).  The decoded-zero branch keeps flag
/// amplitude 0.  Branches carrying weight are checked for C|h| <= 1;
/// negligible branches (weight <= 1e-14, same threshold as impossible
/// postselection outcomes) are clamped instead.
inline PureState controlled_rotation_h(const PureState& state, double alpha, double c_rot,
                                       double dim_sum, double t0) {
  if (!(c_rot > 0.0)) throw input_error("controlled_rotation_h: C must be > 0");
  if (!(alpha > 0.0)) throw input_error("controlled_rotation_h: alpha must be > 0");
  const std::size_t reg = state.register_index("phase");
  std::size_t pre = 1, post = 1;
  for (std::size_t i = 0; i < reg; ++i) pre *= state.layout[i].dim;
  for (std::size_t i = reg + 1; i < state.layout.size(); ++i) post *= state.layout[i].dim;
  const std::size_t t_dim = state.layout[reg].dim;

  std::vector<double> weight(t_dim, 0.0);
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t m = 0; m < t_dim; ++m)
      for (std::size_t q = 0; q < post; ++q)
        weight[m] += std::norm(state.amplitudes((p * t_dim + m) * post + q));

  std::vector<double> ch(t_dim, 0.0);
  for (std::size_t m = 0; m < t_dim; ++m) {
    if (m == 0) continue;  // decoded eigenvalue 0: kernel branch stays on |0>
    const double lam = dim_sum * detail::decode_phase(m, t_dim, t0);
    const double h = dim_sum * lam / (lam * lam + alpha);
    double v = c_rot * h;
    if (std::abs(v) > 1.0) {
      if (weight[m] > 1e-14)
        throw contract_error("controlled_rotation_h: C*h exceeds 1 on a populated branch; "
                             "choose a smaller C");
      v = v > 0.0 ? 1.0 : -1.0;
    }
    ch[m] = v;
  }

  CVector amps(state.dim() * 2);
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t m = 0; m < t_dim; ++m)
      for (std::size_t q = 0; q < post; ++q) {
        const Complex a = state.amplitudes((p * t_dim + m) * post + q);
        const std::size_t base = ((p * t_dim + m) * post + q) * 2;
        amps(base) = a * std::sqrt(std::max(0.0, 1.0 - ch[m] * ch[m]));
        amps(base + 1) = a * ch[m];
      }
  RegisterLayout layout = state.layout;
  layout.push_back({"flag", 2});
  return make_state(std::move(amps), std::move(layout));
}

/// Projects a register onto a basis outcome, removes it, renormalizes.
inline PostselectRecord postselect(const PureState& state, const std::string& reg_name,
                                   std::size_t outcome,
                                   OracleCounters* counters = nullptr) {
  const std::size_t reg = state.register_index(reg_name);
  const std::size_t d_r = state.layout[reg].dim;
  if (outcome >= d_r) throw input_error("postselect: outcome out of range");
  std::size_t pre = 1, post = 1;
  for (std::size_t i = 0; i < reg; ++i) pre *= state.layout[i].dim;
  for (std::size_t i = reg + 1; i < state.layout.size(); ++i) post *= state.layout[i].dim;

  CVector kept(pre * post);
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t q = 0; q < post; ++q)
      kept(p * post + q) = state.amplitudes((p * d_r + outcome) * post + q);
  const double prob = kept.squaredNorm();
  if (prob < 1e-14)
    throw degeneracy_error("postselect: outcome '" + reg_name + "=" +
                           std::to_string(outcome) + "' has vanishing probability");
  RegisterLayout layout;
  for (std::size_t i = 0; i < state.layout.size(); ++i)
    if (i != reg) layout.push_back(state.layout[i]);
  if (layout.empty()) layout.push_back({"scalar", 1});
  PostselectRecord rec;
  rec.probability = prob;
  rec.post_state = make_state(kept / std::sqrt(prob), std::move(layout));
  rec.outcome_label = reg_name + "=" + std::to_string(outcome);
  if (counters) rec.oracle_calls = counters->snapshot();
  return rec;
}

/// Projects a register onto the index range [lo, hi), renames it, keeps it.
inline PostselectRecord postselect_block(const PureState& state, const std::string& reg_name,
                                         std::size_t lo, std::size_t hi,
                                         const std::string& new_name,
                                         OracleCounters* counters = nullptr) {
  const std::size_t reg = state.register_index(reg_name);
  const std::size_t d_r = state.layout[reg].dim;
  if (lo >= hi || hi > d_r) throw input_error("postselect_block: bad range");
  std::size_t pre = 1, post = 1;
  for (std::size_t i = 0; i < reg; ++i) pre *= state.layout[i].dim;
  for (std::size_t i = reg + 1; i < state.layout.size(); ++i) post *= state.layout[i].dim;

  const std::size_t width = hi - lo;
  CVector kept(pre * width * post);
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t r = 0; r < width; ++r)
      for (std::size_t q = 0; q < post; ++q)
        kept((p * width + r) * post + q) = state.amplitudes((p * d_r + lo + r) * post + q);
  const double prob = kept.squaredNorm();
  if (prob < 1e-14)
    throw degeneracy_error("postselect_block: block has vanishing probability");
  RegisterLayout layout = state.layout;
  layout[reg] = {new_name, width};
  PostselectRecord rec;
  rec.probability = prob;
  rec.post_state = make_state(kept / std::sqrt(prob), std::move(layout));
  rec.outcome_label = reg_name + "[" + std::to_string(lo) + "," + std::to_string(hi) + ")";
  if (counters) rec.oracle_calls = counters->snapshot();
  return rec;
}

/// Projects out the decoded-zero branch of the phase register (the kernel
/// components that received no phase kick).
inline PostselectRecord zero_eigen_filter(const PureState& state,
                                          OracleCounters* counters = nullptr) {
  const std::size_t reg = state.register_index("phase");
  std::size_t pre = 1, post = 1;
  for (std::size_t i = 0; i < reg; ++i) pre *= state.layout[i].dim;
  for (std::size_t i = reg + 1; i < state.layout.size(); ++i) post *= state.layout[i].dim;
  const std::size_t t_dim = state.layout[reg].dim;

  CVector amps = state.amplitudes;
  double zero_mass = 0.0;
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t q = 0; q < post; ++q) {
      const std::size_t idx = (p * t_dim + 0) * post + q;
      zero_mass += std::norm(amps(idx));
      amps(idx) = Complex(0.0, 0.0);
    }
  const double prob = 1.0 - zero_mass;
  if (prob < 1e-14)
    throw degeneracy_error("zero_eigen_filter: all weight on the zero-eigenvalue branch");
  PostselectRecord rec;
  rec.probability = prob;
  rec.post_state = make_state(amps / std::sqrt(prob), state.layout);
  rec.outcome_label = "eigenvalue!=0";
  if (counters) rec.oracle_calls = counters->snapshot();
  return rec;
}

// ---------------------------------------------------------------------------
// amplitude amplification / estimation accounting
// ---------------------------------------------------------------------------

/// Grover repetition count ceil(pi / (4 asin(sqrt(P)))) for boosting a
/// success probability P; the state itself is produced by exact
/// postselection, this is bookkeeping only.
inline std::int64_t amplitude_amplify_count(double p) {
  if (!(p > 0.0) || p > 1.0) throw input_error("amplitude_amplify_count: need 0 < P <= 1");
  return static_cast<std::int64_t>(std::ceil(M_PI / (4.0 * std::asin(std::sqrt(p)))));
}

struct AmplitudeEstimate {
  double estimate = 0.0;
  std::int64_t repetitions = 0;
};

/// Amplitude-estimation model: repetitions = ceil(sqrt((1-P)/P)/rel_err);
/// the returned value is P, times (1+u) with u uniform in [-rel_err,
/// rel_err] when noise injection is on.
inline AmplitudeEstimate amplitude_estimate(double p, double rel_err, bool noisy = false,
                                            Rng* rng = nullptr) {
  if (!(p > 0.0) || p > 1.0) throw input_error("amplitude_estimate: need 0 < P <= 1");
  if (!(rel_err > 0.0)) throw input_error("amplitude_estimate: rel_err must be > 0");
  AmplitudeEstimate out;
  out.repetitions = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(std::sqrt((1.0 - p) / p) / rel_err)));
  out.estimate = p;
  if (noisy) {
    if (!rng) throw input_error("amplitude_estimate: noise mode needs an Rng");
    out.estimate *= 1.0 + rng->symmetric(rel_err);
  }
  return out;
}

// ---------------------------------------------------------------------------
// overlap tests
// ---------------------------------------------------------------------------

/// Swap-test success probability 1/2 + |<a|b>|^2 / 2, computed analytically.
inline double swap_test(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw input_error("swap_test: dimension mismatch");
  const Complex ov = a.amplitudes.dot(b.amplitudes);
  return 0.5 + 0.5 * std::norm(ov);
}

/// Signed overlap <a|b> via the ancilla construction
/// (|0>a + |1>b)/sqrt(2) tested against (|0> - |1>)/sqrt(2); only defined
/// for real-amplitude states.
inline double signed_overlap_test(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw input_error("signed_overlap_test: dimension mismatch");
  const double imag_a = a.amplitudes.imag().cwiseAbs().maxCoeff();
  const double imag_b = b.amplitudes.imag().cwiseAbs().maxCoeff();
  if (imag_a > 1e-9 || imag_b > 1e-9)
    throw contract_error("signed_overlap_test: inputs must have real amplitudes");
  return a.amplitudes.real().dot(b.amplitudes.real());
}

}  // namespace qrr::qcore
