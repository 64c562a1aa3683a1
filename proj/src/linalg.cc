#include "plwe/linalg.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "plwe/error.h"

namespace plwe {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::apply(std::span<const double> v) const {
  std::vector<double> out(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

std::vector<double> Matrix::apply_transpose(std::span<const double> v) const {
  std::vector<double> out(cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[c] += (*this)(r, c) * v[r];
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  }
  return out;
}

Matrix Matrix::scaled(double c) const {
  Matrix out = *this;
  for (auto& x : out.data_) x *= c;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

// Eliminates in long double with scaled partial pivoting: embedding matrices
// mix rows of very different magnitude, and unscaled pivoting in double loses
// several digits of the determinant on them.
LuDecomposition::LuDecomposition(const Matrix& a) : lu_(a), perm_(a.rows()) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw NumericError("LU of a non-square matrix");
  std::vector<long double> w(n * n), scale(n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    perm_[i] = i;
    for (std::size_t j = 0; j < n; ++j) {
      w[i * n + j] = a(i, j);
      scale[i] = std::max(scale[i], std::abs(w[i * n + j]));
    }
  }
  auto at = [&](std::size_t i, std::size_t j) -> long double& { return w[i * n + j]; };
  long double log_det = 0.0L;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    long double best = -1.0L;
    for (std::size_t i = k; i < n; ++i) {
      const long double rel = scale[i] > 0 ? std::abs(at(i, k)) / scale[i] : 0.0L;
      if (rel > best) {
        best = rel;
        piv = i;
      }
    }
    if (at(piv, k) == 0.0L) {
      singular_ = true;
      log_abs_det_ = -std::numeric_limits<double>::infinity();
      sign_ = 0;
      return;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      std::swap(scale[k], scale[piv]);
      std::swap(perm_[k], perm_[piv]);
      sign_ = -sign_;
    }
    const long double pivot = at(k, k);
    if (pivot < 0) sign_ = -sign_;
    log_det += std::log(std::abs(pivot));
    for (std::size_t i = k + 1; i < n; ++i) {
      const long double m = at(i, k) / pivot;
      at(i, k) = m;
      if (m == 0.0L) continue;
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= m * at(k, j);
    }
  }
  log_abs_det_ = static_cast<double>(log_det);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lu_(i, j) = static_cast<double>(at(i, j));
  }
}

std::vector<double> LuDecomposition::solve(std::span<const double> b) const {
  if (singular_) throw NumericError("solve with a singular matrix");
  const std::size_t n = perm_.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

std::vector<double> LuDecomposition::solve_transpose(std::span<const double> b) const {
  if (singular_) throw NumericError("solve with a singular matrix");
  // A^T = U^T L^T P, so solve U^T y = b, L^T z = y, x = P^T z.
  const std::size_t n = perm_.size();
  std::vector<double> y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) y[i] -= lu_(j, i) * y[j];
    y[i] /= lu_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) y[i] -= lu_(j, i) * y[j];
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = y[i];
  return x;
}

Matrix LuDecomposition::inverse() const {
  const std::size_t n = perm_.size();
  Matrix inv(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(e.begin(), e.end(), 0.0);
    e[c] = 1.0;
    const auto col = solve(e);
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
  }
  return inv;
}

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Largest eigenvalue of a symmetric positive semidefinite operator.
double dominant_eigenvalue(
    std::size_t n, const std::function<std::vector<double>(const std::vector<double>&)>& op,
    const PowerIterationOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> estimates;
  for (int restart = 0; restart < std::max(1, options.restarts); ++restart) {
    std::vector<double> v(n);
    for (auto& x : v) x = gauss(rng);
    double nv = norm2(v);
    for (auto& x : v) x /= nv;
    double lambda = 0.0;
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
      std::vector<double> w = op(v);
      lambda = 0.0;
      for (std::size_t i = 0; i < n; ++i) lambda += v[i] * w[i];
      double resid = 0.0;
      for (std::size_t i = 0; i < n; ++i) resid += (w[i] - lambda * v[i]) * (w[i] - lambda * v[i]);
      resid = std::sqrt(resid);
      const double nw = norm2(w);
      if (nw == 0.0) break;
      for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
      if (resid <= options.tolerance * std::abs(lambda)) break;
    }
    if (!std::isfinite(lambda)) throw NumericError("power iteration produced a non-finite estimate");
    estimates.push_back(lambda);
  }
  const auto [lo, hi] = std::minmax_element(estimates.begin(), estimates.end());
  if (*hi > 0 && (*hi - *lo) > options.agreement * *hi) {
    throw NumericError("power iteration restarts disagree");
  }
  return *hi;
}

}  // namespace

double spectral_norm(const Matrix& a, const PowerIterationOptions& options) {
  // Unit max entry, so that A^T A cannot overflow.
  double scale = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) scale = std::max(scale, std::abs(a(i, j)));
  }
  if (scale == 0.0) return 0.0;
  const Matrix b = a.scaled(1.0 / scale);
  const double lambda = dominant_eigenvalue(
      b.cols(), [&](const std::vector<double>& v) { return b.apply_transpose(b.apply(v)); },
      options);
  return scale * std::sqrt(std::max(lambda, 0.0));
}

double smallest_singular_value(const Matrix& a, const LuDecomposition& lu,
                               const PowerIterationOptions& options) {
  if (lu.singular()) return 0.0;
  // (A^T A)^{-1} v = A^{-1} A^{-T} v
  const double lambda = dominant_eigenvalue(
      a.cols(), [&](const std::vector<double>& v) { return lu.solve(lu.solve_transpose(v)); },
      options);
  return 1.0 / std::sqrt(lambda);
}

}  // namespace plwe
