#include "plwe/int_poly.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <utility>

#include "plwe/error.h"

namespace plwe {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  coeffs_.reserve(coefficients.size());
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::monomial(unsigned degree, const mpz_class& c) {
  std::vector<mpz_class> v(degree + 1);
  v[degree] = c;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::linear(const mpz_class& root) {
  return IntPolynomial(std::vector<mpz_class>{-root, 1});
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntPolynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : mpz_class(0);
}

mpz_class IntPolynomial::operator()(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::uint64_t IntPolynomial::eval_mod(std::uint64_t x, std::uint64_t m) const {
  unsigned __int128 acc = 0;
  mpz_class r;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    mpz_fdiv_r_ui(r.get_mpz_t(), it->get_mpz_t(), m);
    acc = (acc * x + r.get_ui()) % m;
  }
  return static_cast<std::uint64_t>(acc);
}

double IntPolynomial::eval(double x) const {
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpz_class> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(d));
}

mpz_class IntPolynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPolynomial IntPolynomial::taylor_shift(const mpz_class& t) const {
  // Horner in the ring Z[x]: acc = acc * (x + t) + c_i.
  std::vector<mpz_class> acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc.emplace_back(0);
    for (std::size_t j = acc.size() - 1; j > 0; --j) acc[j] = acc[j - 1] + acc[j] * t;
    acc[0] = acc[0] * t + *it;
  }
  return IntPolynomial(std::move(acc));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<mpz_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coefficient(i) + b.coefficient(i);
  return IntPolynomial(std::move(v));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<mpz_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coefficient(i) - b.coefficient(i);
  return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const IntPolynomial& a, const mpz_class& c) {
  std::vector<mpz_class> v = a.coeffs_;
  for (auto& x : v) x *= c;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::exact_div_monic(const IntPolynomial& divisor) const {
  if (!divisor.is_monic()) throw PreconditionError("exact_div_monic: divisor must be monic");
  if (degree() < divisor.degree()) {
    if (is_zero()) return {};
    throw PreconditionError("exact_div_monic: nonzero remainder");
  }
  std::vector<mpz_class> rem = coeffs_;
  const std::size_t dn = divisor.coeffs_.size() - 1;
  std::vector<mpz_class> quot(rem.size() - dn);
  for (std::size_t i = rem.size(); i-- > dn;) {
    const mpz_class c = rem[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) rem[i - dn + j] -= c * divisor.coeffs_[j];
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (rem[i] != 0) throw PreconditionError("exact_div_monic: nonzero remainder");
  }
  return IntPolynomial(std::move(quot));
}

IntPolynomial IntPolynomial::pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("pseudo_remainder by zero polynomial");
  std::vector<mpz_class> r = a.coeffs_;
  const int db = b.degree();
  const mpz_class& lb = b.leading();
  int e = a.degree() - db + 1;
  int dr = a.degree();
  while (dr >= db) {
    const mpz_class lr = r[dr];
    for (int i = 0; i < dr; ++i) r[i] *= lb;
    for (int j = 0; j < db; ++j) r[dr - db + j] -= lr * b.coeffs_[j];
    r[dr] = 0;
    --e;
    while (dr >= 0 && r[dr] == 0) --dr;
    r.resize(dr + 1);
  }
  if (e > 0) {
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), e);
    for (auto& c : r) c *= scale;
  }
  return IntPolynomial(std::move(r));
}

namespace {

mpz_class pow_z(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

IntPolynomial div_scalar(const IntPolynomial& p, const mpz_class& c) {
  std::vector<mpz_class> v = p.coefficients();
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return IntPolynomial(std::move(v));
}

}  // namespace

mpz_class resultant(const IntPolynomial& a_in, const IntPolynomial& b_in) {
  if (a_in.is_zero() || b_in.is_zero()) return 0;
  IntPolynomial a = a_in, b = b_in;
  const mpz_class ca = a.content(), cb = b.content();
  a = div_scalar(a, ca);
  b = div_scalar(b, cb);
  mpz_class g = 1, h = 1, s = 1;
  mpz_class t = pow_z(ca, b.degree()) * pow_z(cb, a.degree());
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() & 1) && (b.degree() & 1)) s = -1;
  }
  while (b.degree() > 0) {
    const int delta = a.degree() - b.degree();
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    IntPolynomial r = IntPolynomial::pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return 0;
    b = div_scalar(r, g * pow_z(h, delta));
    g = a.leading();
    // h <- g^delta / h^(delta - 1)
    if (delta > 0) {
      mpz_class num = pow_z(g, delta), den = pow_z(h, delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
  }
  // b is a nonzero constant.
  const int da = a.degree();
  mpz_class num = pow_z(b.leading(), da);
  if (da >= 1) {
    mpz_class den = pow_z(h, da - 1);
    mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  } else {
    h = num;
  }
  return s * t * h;
}

mpz_class discriminant(const IntPolynomial& f) {
  const int n = f.degree();
  if (n < 1) throw PreconditionError("discriminant requires degree >= 1");
  if (n == 1) return 1;
  mpz_class r = resultant(f, f.derivative());
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), f.leading().get_mpz_t());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = coeffs_[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    mpz_class mag = abs(c);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (i == 0 || mag != 1) out += mag.get_str();
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw InputError("empty polynomial expression");
  std::vector<mpz_class> coeffs;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw InputError("cannot parse polynomial '" + std::string(text) + "': " + why +
                     " at offset " + std::to_string(pos));
  };
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    mpz_class coeff = 1;
    bool have_digits = false;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos > start) {
      coeff = mpz_class(s.substr(start, pos - start));
      have_digits = true;
    }
    unsigned long power = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!have_digits) fail("'*' without coefficient");
      ++pos;
      if (pos >= s.size() || s[pos] != 'x') fail("expected 'x' after '*'");
    }
    if (pos < s.size() && s[pos] == 'x') {
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t e0 = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == e0) fail("expected exponent");
        power = std::stoul(s.substr(e0, pos - e0));
        if (power > 1u << 20) fail("exponent too large");
      }
    } else if (!have_digits) {
      fail("expected a term");
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1);
    coeffs[power] += sign * coeff;
  }
  return IntPolynomial(std::move(coeffs));
}

}  // namespace plwe
