#include "plwe/zq_poly.h"

#include <algorithm>

#include "plwe/error.h"

namespace plwe::zq {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly add(const Poly& a, const Poly& b, std::uint64_t q) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = add_mod(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, q);
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t q) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = sub_mod(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, q);
  }
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t q) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], q), q);
    }
  }
  trim(r);
  return r;
}

void divmod(const Poly& a, const Poly& b, std::uint64_t q, Poly& quot, Poly& remainder) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  remainder = a;
  trim(remainder);
  const std::size_t db = b.size() - 1;
  if (remainder.size() < b.size()) {
    quot.clear();
    return;
  }
  quot.assign(remainder.size() - db, 0);
  const Residue inv_lead = inv_mod(b.back(), q);
  for (std::size_t i = remainder.size(); i-- > db;) {
    const Residue c = mul_mod(remainder[i], inv_lead, q);
    quot[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      remainder[i - db + j] = sub_mod(remainder[i - db + j], mul_mod(c, b[j], q), q);
    }
  }
  remainder.resize(db);
  trim(remainder);
  trim(quot);
}

Poly rem(Poly a, const Poly& b, std::uint64_t q) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return a;
  const Residue inv_lead = inv_mod(b.back(), q);
  for (std::size_t i = a.size(); i-- > db;) {
    const Residue c = mul_mod(a[i], inv_lead, q);
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      a[i - db + j] = sub_mod(a[i - db + j], mul_mod(c, b[j], q), q);
    }
  }
  a.resize(db);
  trim(a);
  return a;
}

Poly make_monic(Poly a, std::uint64_t q) {
  trim(a);
  if (a.empty() || a.back() == 1) return a;
  const Residue inv = inv_mod(a.back(), q);
  for (auto& c : a) c = mul_mod(c, inv, q);
  return a;
}

Poly gcd(Poly a, Poly b, std::uint64_t q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(std::move(a), b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), q);
}

Poly derivative(const Poly& a, std::uint64_t q) {
  if (a.size() <= 1) return {};
  Poly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mul_mod(a[i], i % q, q);
  trim(d);
  return d;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m, std::uint64_t q) {
  Poly result = rem(Poly{1}, m, q);
  Poly b = rem(base, m, q);
  while (e > 0) {
    if (e & 1) result = rem(mul(result, b, q), m, q);
    e >>= 1;
    if (e > 0) b = rem(mul(b, b, q), m, q);
  }
  return result;
}

Residue eval(const Poly& p, Residue x, std::uint64_t q) {
  Residue acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = add_mod(mul_mod(acc, x, q), *it, q);
  return acc;
}

}  // namespace plwe::zq
