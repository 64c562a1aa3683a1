#pragma once

// Small dense real linear algebra: LU with scaled partial pivoting and power
// iteration for extreme singular values.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace plwe {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<double> apply(std::span<const double> v) const;             // A v
  std::vector<double> apply_transpose(std::span<const double> v) const;   // A^T v
  Matrix operator*(const Matrix& other) const;
  Matrix scaled(double c) const;
  Matrix transpose() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// PA = LU, packed.
class LuDecomposition {
 public:
  explicit LuDecomposition(const Matrix& a);

  bool singular() const { return singular_; }
  // log|det A| and sign(det A); -inf when singular.
  double log_abs_det() const { return log_abs_det_; }
  int det_sign() const { return sign_; }

  std::vector<double> solve(std::span<const double> b) const;            // A x = b
  std::vector<double> solve_transpose(std::span<const double> b) const;  // A^T x = b
  Matrix inverse() const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  double log_abs_det_ = 0.0;
  int sign_ = 1;
  bool singular_ = false;
};

struct PowerIterationOptions {
  double tolerance = 1e-12;       // relative residual of the Rayleigh pair
  std::size_t max_iterations = 20000;
  int restarts = 3;               // independent random starts
  double agreement = 1e-9;        // required relative spread across restarts
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

// Largest singular value by power iteration on A^T A. Throws NumericError if
// the restarts disagree.
double spectral_norm(const Matrix& a, const PowerIterationOptions& options = {});

// Smallest singular value by power iteration on (A^T A)^{-1} via the LU
// factors. Returns 0 for a singular matrix.
double smallest_singular_value(const Matrix& a, const LuDecomposition& lu,
                               const PowerIterationOptions& options = {});

}  // namespace plwe
