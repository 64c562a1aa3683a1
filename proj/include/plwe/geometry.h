#pragma once

// Numerical geometry of Z[x]/(f): complex roots, the real embedding theta,
// the power-basis matrix M and its distortion, and the Mahler measure.

#include <complex>
#include <cstddef>
#include <vector>

#include "plwe/int_poly.h"
#include "plwe/linalg.h"

namespace plwe {

// Roots ordered as: s1 real roots (descending), s2 pair representatives
// (positive imaginary part), then their conjugates in the same order.
struct RootSet {
  std::vector<std::complex<double>> roots;
  std::size_t s1 = 0;
  std::size_t s2 = 0;
};

struct RootOptions {
  std::size_t max_iterations = 500;
  // Guard against root-finding conditioning at high degree.
  unsigned max_degree = 128;
  bool allow_high_degree = false;
};

// Aberth-Ehrlich iteration from a rotated circle, Newton polish, then
// real/conjugate classification with tolerance 1e-9 * (1 + |z|).
RootSet complex_roots(const IntPolynomial& f, const RootOptions& options = {});

// Column i is theta(alpha^i): real-root powers, then Re and Im of the pair
// representatives' powers.
Matrix embedding_matrix(const RootSet& rs);

struct EmbeddingReport {
  IntPolynomial f;
  std::size_t s1 = 0, s2 = 0;
  Matrix M;
  double spectral_norm = 0;          // ||M||_2
  double inverse_spectral_norm = 0;  // ||M^{-1}||_2
  double log_abs_det = 0;            // log |det M|
  double abs_det = 0;
  // ||M^{-1}||_2 * |det M|^{1/n}: the normalized spectral norm of the
  // change of basis gamma * M^{-1} for any scalar gamma.
  double distortion = 0;
  // ||M||_2 / |det M|^{1/n}
  double forward_distortion = 0;
  double mahler = 0;
  double condition_number = 0;
};

// Beyond this, singular values from double-precision LU carry no digits.
inline constexpr double kMaxEmbeddingCondition = 1e14;

// Throws NumericError when cond(M) exceeds kMaxEmbeddingCondition.
EmbeddingReport spectral_distortion(const IntPolynomial& f, const RootOptions& options = {});

// |lc| * prod_{|z| >= 1} |z|, accumulated in log space.
double mahler_measure(const IntPolynomial& f, const RootOptions& options = {});
double mahler_measure(const IntPolynomial& f, const RootSet& rs);

// Normalized spectral norm ||A||_2 / |det A|^{1/n}.
double normalized_spectral_norm(const Matrix& a);

struct ChangeOfBasis {
  Matrix N;            // D_gamma * M^{-1}, gamma = 1/f'(alpha)
  Matrix D_gamma;      // multiplication by gamma in theta coordinates
  double normalized_spectral_norm = 0;
  double log_abs_det = 0;  // log |det N|
};

ChangeOfBasis change_of_basis_monogenic(const IntPolynomial& f, const RootOptions& options = {});

}  // namespace plwe
