#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sensornet {

/// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  std::vector<double> multiply(std::span<const double> x) const;
  DenseMatrix multiply(const DenseMatrix& rhs) const;
  DenseMatrix transpose() const;

  bool is_symmetric(double tol = 1e-12) const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double norm2(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

/// Lower-triangular Cholesky factor L with M = L L^T.
/// Throws SingularSystem when a pivot is not positive (M not SPD).
DenseMatrix cholesky(const DenseMatrix& m);

/// Solves M x = rhs for symmetric positive definite M.
std::vector<double> solve_spd(const DenseMatrix& m, std::span<const double> rhs);

/// Diagonal of M^{-1} for SPD M, from the inverse Cholesky factor.
std::vector<double> spd_inverse_diagonal(const DenseMatrix& m);

/// Full inverse of an SPD matrix.
DenseMatrix spd_inverse(const DenseMatrix& m);

/// Eigenvalues of a symmetric matrix in ascending order (cyclic Jacobi).
/// Throws NumericFailure if the sweeps do not converge.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& m);

/// Largest eigenvalue magnitude. Power iteration on M^2 (so that +-lambda
/// pairs do not stall it); if that fails to settle and M is symmetric with
/// n <= 500, falls back to the Jacobi eigensolver.
double spectral_radius(const DenseMatrix& m, double tol = 1e-10);

}  // namespace sensornet
