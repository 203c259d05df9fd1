#pragma once

// Dense complex linear algebra kernel shared by every other module: SVD,
// Hermitian eigendecomposition, exact matrix exponentials, tensor products,
// partial trace, norms.  Backed by Eigen; everything here is a pure function
// on immutable inputs.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#include "qrr/constants.hpp"
#include "qrr/errors.hpp"

namespace qrr::numkit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline bool all_finite(const CMatrix& a) { return a.allFinite(); }

// Hermitian within max|A - A^dag| <= 1e-12 * max(1, ||A||_max).
inline bool is_hermitian(const CMatrix& a) {
  if (a.rows() != a.cols()) return false;
  const double tol = 1e-12 * std::max(1.0, max_abs(a));
  return max_abs(a - a.adjoint()) <= tol;
}

inline CMatrix dagger(const CMatrix& a) { return a.adjoint(); }

struct SvdFactors {
  RVector singular_values;  // descending, length min(rows, cols)
  CMatrix left_vectors;     // thin U
  CMatrix right_vectors;    // thin V
  Eigen::Index rank = 0;
  double rank_tolerance = 0.0;  // kRankTolFactor * sigma_max
};

inline SvdFactors svd(const CMatrix& x) {
  if (!all_finite(x)) throw input_error("svd: non-finite entries");
  Eigen::JacobiSVD<CMatrix> solver(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdFactors f;
  f.singular_values = solver.singularValues();
  f.left_vectors = solver.matrixU();
  f.right_vectors = solver.matrixV();
  const double smax = f.singular_values.size() ? f.singular_values(0) : 0.0;
  f.rank_tolerance = kRankTolFactor * smax;
  f.rank = 0;
  for (Eigen::Index i = 0; i < f.singular_values.size(); ++i)
    if (f.singular_values(i) > f.rank_tolerance) ++f.rank;
  return f;
}

struct EigFactors {
  RVector eigenvalues;   // ascending (Eigen convention)
  CMatrix eigenvectors;  // orthonormal columns
};

inline EigFactors eigh(const CMatrix& a) {
  if (!all_finite(a)) throw input_error("eigh: non-finite entries");
  if (!is_hermitian(a)) throw contract_error("eigh: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
  if (solver.info() != Eigen::Success) throw contract_error("eigh: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// U = exp(-i A t) for Hermitian A, computed exactly by eigendecomposition.
inline CMatrix expm_hermitian(const CMatrix& a, double t) {
  const EigFactors f = eigh(a);
  CVector phases(f.eigenvalues.size());
  for (Eigen::Index k = 0; k < f.eigenvalues.size(); ++k)
    phases(k) = std::exp(Complex(0.0, -f.eigenvalues(k) * t));
  return f.eigenvectors * phases.asDiagonal() * f.eigenvectors.adjoint();
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b,
                    std::size_t dim_budget = kDimBudget) {
  const std::size_t rows = static_cast<std::size_t>(a.rows()) * b.rows();
  const std::size_t cols = static_cast<std::size_t>(a.cols()) * b.cols();
  if (rows > dim_budget || cols > dim_budget)
    throw resource_error("kron: result exceeds dimension budget");
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Partial trace of a density operator over the registers NOT listed in
/// `keep`.  `dims` gives the register dimensions, slowest index first
/// (index = ((i0*d1 + i1)*d2 + i2)...).  `keep` must be strictly increasing.
inline CMatrix partial_trace(const CMatrix& rho, const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& keep) {
  if (rho.rows() != rho.cols()) throw input_error("partial_trace: matrix not square");
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  if (total != static_cast<std::size_t>(rho.rows()))
    throw input_error("partial_trace: dims product does not match dimension");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
    throw input_error("partial_trace: trace must be 1 within 1e-10");
  for (std::size_t k : keep)
    if (k >= dims.size()) throw input_error("partial_trace: keep index out of range");

  std::vector<std::size_t> traced;
  for (std::size_t r = 0; r < dims.size(); ++r)
    if (std::find(keep.begin(), keep.end(), r) == keep.end()) traced.push_back(r);

  // Strides for composing a flat index from per-register digits.
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t r = dims.size(); r-- > 1;) stride[r - 1] = stride[r] * dims[r];

  std::size_t kdim = 1, tdim = 1;
  for (std::size_t r : keep) kdim *= dims[r];
  for (std::size_t r : traced) tdim *= dims[r];

  auto compose = [&](std::size_t kept_flat, std::size_t traced_flat) {
    std::size_t idx = 0;
    for (std::size_t r = keep.size(); r-- > 0;) {
      idx += (kept_flat % dims[keep[r]]) * stride[keep[r]];
      kept_flat /= dims[keep[r]];
    }
    for (std::size_t r = traced.size(); r-- > 0;) {
      idx += (traced_flat % dims[traced[r]]) * stride[traced[r]];
      traced_flat /= dims[traced[r]];
    }
    return idx;
  };

  CMatrix out = CMatrix::Zero(kdim, kdim);
  for (std::size_t i = 0; i < kdim; ++i)
    for (std::size_t j = 0; j < kdim; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t t = 0; t < tdim; ++t) acc += rho(compose(i, t), compose(j, t));
      out(i, j) = acc;
    }
  return out;
}

inline double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> solver(a);
  return solver.singularValues()(0);
}

/// Condition number over nonzero singular values (rank-restricted).
inline double condition_number(const CMatrix& x) {
  const SvdFactors f = svd(x);
  if (f.rank == 0) throw input_error("condition_number: zero matrix");
  return f.singular_values(0) / f.singular_values(f.rank - 1);
}

/// 1/2 ||rho - sigma||_1 for Hermitian rho, sigma.
inline double trace_distance(const CMatrix& rho, const CMatrix& sigma) {
  const EigFactors f = eigh(rho - sigma);
  return 0.5 * f.eigenvalues.cwiseAbs().sum();
}

}  // namespace qrr::numkit
