#pragma once

// Independent reference computations for the tests: brute force over small
// moduli, exact integer determinants, and a Jacobi SVD.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "plwe/int_poly.h"
#include "plwe/linalg.h"

namespace oracle {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline bool trial_division_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (std::uint64_t k = p * p; k <= limit; k += p) composite[k] = true;
  }
  return out;
}

// Order by repeated multiplication.
inline std::uint64_t brute_order(std::uint64_t a, std::uint64_t q) {
  std::uint64_t x = a % q, k = 1;
  while (x != 1) {
    x = mulmod(x, a, q);
    ++k;
  }
  return k;
}

// Roots of f mod q by evaluating at every residue.
inline std::vector<std::uint64_t> brute_roots(const plwe::IntPolynomial& f, std::uint64_t q) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < q; ++x) {
    mpz_class v = f(mpz_class(static_cast<unsigned long>(x))) % mpz_class(static_cast<unsigned long>(q));
    if (v == 0) out.push_back(x);
  }
  return out;
}

// Fraction-free Gaussian elimination (Bareiss).
inline mpz_class bareiss_det(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Resultant as the determinant of the Sylvester matrix.
inline mpz_class sylvester_resultant(const plwe::IntPolynomial& f, const plwe::IntPolynomial& g) {
  const int m = f.degree(), n = g.degree();
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, 0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= m; ++k) s[i][i + k] = f.coefficient(m - k);
  }
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k <= n; ++k) s[n + i][i + k] = g.coefficient(n - k);
  }
  return bareiss_det(s);
}

// Singular values by one-sided Jacobi rotations, descending.
inline std::vector<double> jacobi_singular_values(const plwe::Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<double>> u(cols, std::vector<double>(rows));
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) u[j][i] = m(i, j);
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < rows; ++i) {
          alpha += u[p][i] * u[p][i];
          beta += u[q][i] * u[q][i];
          gamma += u[p][i] * u[q][i];
        }
        if (gamma == 0) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
        const double zeta = (beta - alpha) / (2 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const double c = 1 / std::sqrt(1 + t * t), s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const double x = u[p][i], y = u[q][i];
          u[p][i] = c * x - s * y;
          u[q][i] = s * x + c * y;
        }
      }
    }
    if (off < 1e-15) break;
  }
  std::vector<double> sv(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0;
    for (double x : u[j]) s += x * x;
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

// Monic polynomial with coefficients drawn from [-bound, bound].
inline plwe::IntPolynomial random_monic(std::mt19937_64& rng, int degree, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<mpz_class> c(degree + 1);
  for (int i = 0; i < degree; ++i) c[i] = d(rng);
  c[degree] = 1;
  return plwe::IntPolynomial(std::move(c));
}

// P(round(N(0, s^2)) = k), restricted to |k| <= b and renormalized.
inline std::vector<double> rounded_gaussian_pmf(double s, long b) {
  std::vector<double> p(2 * b + 1);
  double total = 0;
  for (long k = -b; k <= b; ++k) {
    const double hi = 0.5 * std::erfc(-(k + 0.5) / (s * std::sqrt(2.0)));
    const double lo = 0.5 * std::erfc(-(k - 0.5) / (s * std::sqrt(2.0)));
    p[k + b] = hi - lo;
    total += hi - lo;
  }
  for (double& x : p) x /= total;
  return p;
}

}  // namespace oracle
