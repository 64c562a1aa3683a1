#include "plwe/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "plwe/error.h"

namespace plwe {

namespace {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

struct Horner {
  lcplx value, deriv;
};

Horner horner(const std::vector<long double>& c, lcplx z) {
  lcplx p = 0, dp = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

long double scale_at(const std::vector<long double>& c, long double r) {
  long double s = 0, rk = 1;
  for (long double a : c) {
    s += std::abs(a) * rk;
    rk *= r;
  }
  return s;
}

}  // namespace

RootSet complex_roots(const IntPolynomial& f, const RootOptions& options) {
  const int n = f.degree();
  if (n < 1) throw PreconditionError("complex_roots: degree must be >= 1");
  if (static_cast<unsigned>(n) > options.max_degree && !options.allow_high_degree) {
    throw PreconditionError("complex_roots: degree " + std::to_string(n) +
                            " above the supported cap " + std::to_string(options.max_degree));
  }
  if (n >= 2 && discriminant(f) == 0) {
    throw PreconditionError("complex_roots: f has repeated roots");
  }
  std::vector<long double> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = f.coefficients()[i].get_d();

  std::vector<lcplx> z(n);
  if (n == 1) {
    z[0] = -c[0] / c[1];
  } else {
    const long double center = -c[n - 1] / (n * c[n]);
    long double radius = 0;
    for (int k = 1; k <= n; ++k) {
      radius = std::max(radius, std::pow(std::abs(c[n - k] / c[n]), 1.0L / k));
    }
    radius = std::max(radius, 1e-3L);
    for (int k = 0; k < n; ++k) {
      const long double theta = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
      z[k] = center + std::polar(radius, theta);
    }
    bool converged = false;
    for (std::size_t it = 0; it < options.max_iterations && !converged; ++it) {
      converged = true;
      for (int k = 0; k < n; ++k) {
        const Horner h = horner(c, z[k]);
        if (h.value == lcplx(0)) continue;
        const lcplx w = h.value / h.deriv;
        lcplx sum = 0;
        for (int j = 0; j < n; ++j) {
          if (j != k) sum += 1.0L / (z[k] - z[j]);
        }
        const lcplx corr = w / (1.0L - w * sum);
        z[k] -= corr;
        if (std::abs(corr) > 1e-16L * (1 + std::abs(z[k]))) converged = false;
      }
    }
    if (!converged) {
      // Accept if the backward error is already at working precision.
      for (int k = 0; k < n; ++k) {
        if (std::abs(horner(c, z[k]).value) > 1e-12L * scale_at(c, std::abs(z[k]))) {
          throw NumericError("complex_roots: Aberth iteration did not converge");
        }
      }
    }
    for (int k = 0; k < n; ++k) {
      for (int polish = 0; polish < 3; ++polish) {
        const Horner h = horner(c, z[k]);
        if (h.deriv == lcplx(0)) break;
        z[k] -= h.value / h.deriv;
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    if (std::abs(horner(c, z[k]).value) > 1e-8L * scale_at(c, std::abs(z[k]))) {
      throw NumericError("complex_roots: residual above tolerance");
    }
  }

  std::vector<double> real;
  std::vector<cplx> upper, lower;
  for (const auto& r : z) {
    const cplx w(static_cast<double>(r.real()), static_cast<double>(r.imag()));
    if (std::abs(w.imag()) <= 1e-9 * (1 + std::abs(w))) {
      real.push_back(w.real());
    } else if (w.imag() > 0) {
      upper.push_back(w);
    } else {
      lower.push_back(w);
    }
  }
  if (upper.size() != lower.size()) {
    throw NumericError("complex_roots: unmatched complex roots");
  }
  std::vector<cplx> reps;
  std::vector<bool> used(lower.size(), false);
  for (const auto& u : upper) {
    std::size_t best = lower.size();
    double dist = 0;
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(std::conj(lower[j]) - u);
      if (best == lower.size() || d < dist) {
        best = j;
        dist = d;
      }
    }
    used[best] = true;
    reps.push_back((u + std::conj(lower[best])) / 2.0);
  }
  std::sort(real.begin(), real.end(), std::greater<>());
  std::sort(reps.begin(), reps.end(), [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });

  RootSet rs;
  rs.s1 = real.size();
  rs.s2 = reps.size();
  for (double x : real) rs.roots.emplace_back(x, 0.0);
  for (const auto& r : reps) rs.roots.push_back(r);
  for (const auto& r : reps) rs.roots.push_back(std::conj(r));
  return rs;
}

Matrix embedding_matrix(const RootSet& rs) {
  const std::size_t n = rs.roots.size();
  Matrix m(n, n);
  for (std::size_t j = 0; j < rs.s1; ++j) {
    double p = 1.0;
    const double x = rs.roots[j].real();
    for (std::size_t i = 0; i < n; ++i) {
      m(j, i) = p;
      p *= x;
    }
  }
  for (std::size_t k = 0; k < rs.s2; ++k) {
    const cplx z = rs.roots[rs.s1 + k];
    cplx p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      m(rs.s1 + k, i) = p.real();
      m(rs.s1 + rs.s2 + k, i) = p.imag();
      p *= z;
    }
  }
  return m;
}

double normalized_spectral_norm(const Matrix& a) {
  LuDecomposition lu(a);
  if (lu.singular()) throw NumericError("normalized spectral norm of a singular matrix");
  return std::exp(std::log(spectral_norm(a)) - lu.log_abs_det() / a.rows());
}

double mahler_measure(const IntPolynomial& f, const RootSet& rs) {
  double log_m = std::log(std::abs(f.leading().get_d()));
  for (const auto& z : rs.roots) {
    const double r = std::abs(z);
    if (r >= 1.0) log_m += std::log(r);
  }
  return std::exp(log_m);
}

double mahler_measure(const IntPolynomial& f, const RootOptions& options) {
  return mahler_measure(f, complex_roots(f, options));
}

EmbeddingReport spectral_distortion(const IntPolynomial& f, const RootOptions& options) {
  const RootSet rs = complex_roots(f, options);
  EmbeddingReport rep;
  rep.f = f;
  rep.s1 = rs.s1;
  rep.s2 = rs.s2;
  rep.M = embedding_matrix(rs);
  const double n = static_cast<double>(rs.roots.size());

  LuDecomposition lu(rep.M);
  if (lu.singular()) throw NumericError("embedding matrix is singular");
  rep.log_abs_det = lu.log_abs_det();
  rep.abs_det = std::exp(rep.log_abs_det);
  rep.spectral_norm = spectral_norm(rep.M);
  double smin = 0;
  try {
    smin = smallest_singular_value(rep.M, lu);
  } catch (const NumericError& e) {
    throw NumericError(std::string("embedding matrix too ill-conditioned for double precision (") +
                       e.what() + ")");
  }
  if (!(smin > 0)) throw NumericError("embedding matrix is numerically singular");
  rep.inverse_spectral_norm = 1.0 / smin;
  rep.distortion = std::exp(rep.log_abs_det / n - std::log(smin));
  rep.forward_distortion = std::exp(std::log(rep.spectral_norm) - rep.log_abs_det / n);
  rep.condition_number = rep.spectral_norm / smin;
  if (!(rep.condition_number <= kMaxEmbeddingCondition)) {
    std::ostringstream msg;
    msg << "embedding matrix too ill-conditioned for double precision (condition number "
        << rep.condition_number << ")";
    throw NumericError(msg.str());
  }
  rep.mahler = mahler_measure(f, rs);
  return rep;
}

ChangeOfBasis change_of_basis_monogenic(const IntPolynomial& f, const RootOptions& options) {
  const RootSet rs = complex_roots(f, options);
  const std::size_t n = rs.roots.size();
  const IntPolynomial df = f.derivative();
  std::vector<long double> dc(df.coefficients().size());
  for (std::size_t i = 0; i < dc.size(); ++i) dc[i] = df.coefficients()[i].get_d();
  auto gamma_at = [&](cplx z) {
    const Horner h = horner(dc, lcplx(z.real(), z.imag()));
    const cplx v(static_cast<double>(h.value.real()), static_cast<double>(h.value.imag()));
    if (v == cplx(0)) throw PreconditionError("f'(alpha) vanishes at a root");
    return 1.0 / v;
  };

  ChangeOfBasis out;
  out.D_gamma = Matrix(n, n);
  double log_det_d = 0;
  for (std::size_t j = 0; j < rs.s1; ++j) {
    const double g = gamma_at(rs.roots[j]).real();
    out.D_gamma(j, j) = g;
    log_det_d += std::log(std::abs(g));
  }
  for (std::size_t k = 0; k < rs.s2; ++k) {
    const cplx g = gamma_at(rs.roots[rs.s1 + k]);
    const std::size_t re = rs.s1 + k, im = rs.s1 + rs.s2 + k;
    // (a + ib)(x + iy) = (ax - by) + i(bx + ay)
    out.D_gamma(re, re) = g.real();
    out.D_gamma(re, im) = -g.imag();
    out.D_gamma(im, re) = g.imag();
    out.D_gamma(im, im) = g.real();
    log_det_d += 2 * std::log(std::abs(g));
  }
  const Matrix m = embedding_matrix(rs);
  LuDecomposition lu(m);
  if (lu.singular()) throw NumericError("embedding matrix is singular");
  out.N = out.D_gamma * lu.inverse();
  out.log_abs_det = log_det_d - lu.log_abs_det();
  out.normalized_spectral_norm =
      std::exp(std::log(spectral_norm(out.N)) - out.log_abs_det / static_cast<double>(n));
  return out;
}

}  // namespace plwe
