#pragma once

// Dense univariate polynomials over the integers with arbitrary-precision
// coefficients, constant term first.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace plwe {

class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  static IntPolynomial monomial(unsigned degree, const mpz_class& c = 1);
  // x - root
  static IntPolynomial linear(const mpz_class& root);

  // Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  // Zero beyond the degree.
  mpz_class coefficient(std::size_t i) const;
  const mpz_class& leading() const { return coeffs_.back(); }

  mpz_class operator()(const mpz_class& x) const;
  // Horner evaluation modulo m (coefficients reduced first).
  std::uint64_t eval_mod(std::uint64_t x, std::uint64_t m) const;
  double eval(double x) const;

  IntPolynomial derivative() const;
  mpz_class content() const;
  // f(x + t)
  IntPolynomial taylor_shift(const mpz_class& t) const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const mpz_class& c);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  // Exact division by a monic divisor; throws PreconditionError if the
  // remainder is nonzero.
  IntPolynomial exact_div_monic(const IntPolynomial& divisor) const;
  // Remainder of lc(b)^(deg a - deg b + 1) * a divided by b.
  static IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);

  // Human-readable form such as "x^3 - x + 1".
  std::string to_string() const;
  // Parses the ASCII grammar documented in the README:
  //   poly   := ["-"|"+"] term { ("+"|"-") term }
  //   term   := coeff ["*"] "x" ["^" uint] | coeff | "x" ["^" uint]
  //   coeff  := digit { digit }
  // Whitespace is ignored. Throws InputError on malformed text.
  static IntPolynomial parse(std::string_view text);

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

// Res(a, b) by the subresultant pseudo-remainder sequence.
mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b);

// (-1)^{n(n-1)/2} Res(f, f') / lc(f). Requires deg f >= 1.
mpz_class discriminant(const IntPolynomial& f);

}  // namespace plwe
