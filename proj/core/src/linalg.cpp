#include "sensornet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sensornet/errors.hpp"
#include "sensornet/random.hpp"

namespace sensornet {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> values) {
  DenseMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  detail::require(x.size() == cols_, "matrix-vector dimension mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* a = data_.data() + r * cols_;
    double s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += a[c] * x[c];
    y[r] = s;
  }
  return y;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& rhs) const {
  detail::require(cols_ == rhs.rows_, "matrix-matrix dimension mismatch");
  DenseMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool DenseMatrix::is_symmetric(double tol) const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j) {
      const double a = (*this)(i, j);
      const double b = (*this)(j, i);
      if (std::abs(a - b) > tol * std::max({1.0, std::abs(a), std::abs(b)})) return false;
    }
  return true;
}

bool DenseMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

DenseMatrix cholesky(const DenseMatrix& m) {
  detail::require(m.square() && m.rows() > 0, "cholesky needs a non-empty square matrix");
  const std::size_t n = m.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(m(i, i)));
  const double floor = 1e-14 * std::max(max_diag, 1e-300);

  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > floor)) {
      throw SingularSystem("matrix is not positive definite (pivot " + std::to_string(j) +
                           " = " + std::to_string(d) + ")");
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

namespace {

void forward_substitute(const DenseMatrix& l, std::vector<double>& x) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x[k];
    x[i] = s / l(i, i);
  }
}

void backward_substitute_transposed(const DenseMatrix& l, std::vector<double>& x) {
  const std::size_t n = l.rows();
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
    x[ii] = s / l(ii, ii);
  }
}

// Inverse of a lower-triangular matrix (also lower triangular).
DenseMatrix lower_inverse(const DenseMatrix& l) {
  const std::size_t n = l.rows();
  DenseMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s -= l(i, k) * inv(k, j);
      inv(i, j) = s / l(i, i);
    }
  }
  return inv;
}

}  // namespace

std::vector<double> solve_spd(const DenseMatrix& m, std::span<const double> rhs) {
  detail::require(rhs.size() == m.rows(), "solve_spd: rhs dimension mismatch");
  const DenseMatrix l = cholesky(m);
  std::vector<double> x(rhs.begin(), rhs.end());
  forward_substitute(l, x);
  backward_substitute_transposed(l, x);
  return x;
}

std::vector<double> spd_inverse_diagonal(const DenseMatrix& m) {
  const DenseMatrix linv = lower_inverse(cholesky(m));
  const std::size_t n = m.rows();
  // (L L^T)^{-1} = L^{-T} L^{-1}; its (i,i) entry is the squared norm of
  // column i of L^{-1}.
  std::vector<double> diag(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i <= k; ++i) diag[i] += linv(k, i) * linv(k, i);
  return diag;
}

DenseMatrix spd_inverse(const DenseMatrix& m) {
  const DenseMatrix linv = lower_inverse(cholesky(m));
  const std::size_t n = m.rows();
  DenseMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = i; k < n; ++k) s += linv(k, i) * linv(k, j);
      inv(i, j) = s;
      inv(j, i) = s;
    }
  return inv;
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& m) {
  detail::require(m.square(), "symmetric_eigenvalues needs a square matrix");
  const std::size_t n = m.rows();
  DenseMatrix a = m;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double v = a(i, j) * a(i, j);
        total += v;
        if (i != j) off += v;
      }
    if (off <= 1e-30 * std::max(total, 1e-300)) {
      std::vector<double> eig(n);
      for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
      std::sort(eig.begin(), eig.end());
      return eig;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  throw NumericFailure("Jacobi eigensolver did not converge");
}

double spectral_radius(const DenseMatrix& m, double tol) {
  detail::require(m.square() && m.rows() > 0, "spectral_radius needs a non-empty square matrix");
  const std::size_t n = m.rows();
  if (n == 1) return std::abs(m(0, 0));

  Pcg32 rng(0x5eed5eedULL);
  std::vector<double> x(n);
  for (auto& v : x) v = 1.0 + 0.5 * rng.uniform();
  double nx = norm2(x);
  for (auto& v : x) v /= nx;

  constexpr int kMaxIterations = 200000;
  double prev = -1.0;
  int stable = 0;
  for (int it = 0; it < kMaxIterations; ++it) {
    std::vector<double> y = m.multiply(m.multiply(x));
    const double ny = norm2(y);
    if (ny == 0.0) return 0.0;
    const double est = std::sqrt(ny);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
    if (prev >= 0.0 && std::abs(est - prev) <= tol * std::max(est, 1e-300)) {
      if (++stable >= 5) return est;
    } else {
      stable = 0;
    }
    prev = est;
  }
  if (m.is_symmetric() && n <= 500) {
    const auto eig = symmetric_eigenvalues(m);
    return std::max(std::abs(eig.front()), std::abs(eig.back()));
  }
  throw NumericFailure("power iteration did not converge");
}

}  // namespace sensornet
