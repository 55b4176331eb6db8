#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "paraspec/errors.hpp"
#include "paraspec/rational.hpp"

namespace paraspec {

// Dense univariate polynomial, ascending coefficients, no trailing zeros.
template <class Field>
struct Poly {
  using Elem = typename Field::Elem;
  std::vector<Elem> c;

  int degree() const noexcept { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const noexcept { return c.empty(); }
  const Elem& lead() const { return c.back(); }
  bool operator==(const Poly&) const = default;
};

// Arithmetic in Field[x]. The ring holds a reference to its coefficient field,
// which must outlive it.
template <class Field>
class PolyRing {
 public:
  using Elem = typename Field::Elem;
  using P = Poly<Field>;

  explicit PolyRing(const Field& f) : f_(f) {}

  const Field& field() const noexcept { return f_; }

  P normalized(P a) const {
    while (!a.c.empty() && f_.is_zero(a.c.back())) a.c.pop_back();
    return a;
  }
  P from(std::vector<Elem> coeffs) const { return normalized(P{std::move(coeffs)}); }
  P constant(const Elem& v) const { return from({v}); }
  P one() const { return constant(f_.one()); }
  P x() const { return from({f_.zero(), f_.one()}); }
  P monomial(const Elem& v, int d) const {
    std::vector<Elem> cs(static_cast<std::size_t>(d) + 1, f_.zero());
    cs[d] = v;
    return from(std::move(cs));
  }

  Elem coeff(const P& a, int i) const {
    return (i >= 0 && i <= a.degree()) ? a.c[i] : f_.zero();
  }

  P add(const P& a, const P& b) const {
    P out;
    const std::size_t n = std::max(a.c.size(), b.c.size());
    out.c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= a.c.size()) {
        out.c.push_back(b.c[i]);
      } else if (i >= b.c.size()) {
        out.c.push_back(a.c[i]);
      } else {
        out.c.push_back(f_.add(a.c[i], b.c[i]));
      }
    }
    return normalized(std::move(out));
  }
  P neg(const P& a) const {
    P out = a;
    for (auto& v : out.c) v = f_.neg(v);
    return out;
  }
  P sub(const P& a, const P& b) const { return add(a, neg(b)); }
  P scale(const P& a, const Elem& s) const {
    if (f_.is_zero(s)) return P{};
    P out = a;
    for (auto& v : out.c) v = f_.mul(v, s);
    return normalized(std::move(out));
  }
  P mul(const P& a, const P& b) const {
    if (a.is_zero() || b.is_zero()) return P{};
    std::vector<Elem> out(a.c.size() + b.c.size() - 1, f_.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (f_.is_zero(a.c[i])) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) {
        out[i + j] = f_.add(out[i + j], f_.mul(a.c[i], b.c[j]));
      }
    }
    return from(std::move(out));
  }
  P shift_up(const P& a, int k) const {
    if (a.is_zero()) return a;
    P out;
    out.c.assign(static_cast<std::size_t>(k), f_.zero());
    out.c.insert(out.c.end(), a.c.begin(), a.c.end());
    return out;
  }
  // Keeps the terms of degree < n.
  P truncate(const P& a, int n) const {
    if (a.degree() < n) return a;
    P out{std::vector<Elem>(a.c.begin(), a.c.begin() + n)};
    return normalized(std::move(out));
  }

  std::pair<P, P> divmod(const P& a, const P& b) const {
    if (b.is_zero()) throw ComputationFailed("polynomial division by zero");
    P r = a;
    if (r.degree() < b.degree()) return {P{}, r};
    std::vector<Elem> q(static_cast<std::size_t>(r.degree() - b.degree()) + 1, f_.zero());
    const Elem lead_inv = f_.inv(b.lead());
    while (!r.is_zero() && r.degree() >= b.degree()) {
      const int shift = r.degree() - b.degree();
      const Elem coef = f_.mul(r.lead(), lead_inv);
      q[shift] = coef;
      for (int i = 0; i <= b.degree(); ++i) {
        r.c[shift + i] = f_.sub(r.c[shift + i], f_.mul(coef, b.c[i]));
      }
      r.c.pop_back();
      r = normalized(std::move(r));
    }
    return {from(std::move(q)), r};
  }
  P rem(const P& a, const P& b) const { return divmod(a, b).second; }
  P quo(const P& a, const P& b) const { return divmod(a, b).first; }
  P exact_div(const P& a, const P& b) const {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw ComputationFailed("inexact polynomial division");
    return q;
  }

  P monic(const P& a) const {
    if (a.is_zero()) return a;
    return scale(a, f_.inv(a.lead()));
  }

  // Monic gcd (zero if both inputs are zero).
  P gcd(P a, P b) const {
    while (!b.is_zero()) {
      P r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  // Returns (g, s, t) with s*a + t*b = g, g monic.
  struct ExtGcd {
    P g, s, t;
  };
  ExtGcd ext_gcd(const P& a, const P& b) const {
    P r0 = a, r1 = b, s0 = one(), s1{}, t0{}, t1 = one();
    while (!r1.is_zero()) {
      auto [q, r] = divmod(r0, r1);
      P s2 = sub(s0, mul(q, s1));
      P t2 = sub(t0, mul(q, t1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const Elem li = f_.inv(r0.lead());
    return {scale(r0, li), scale(s0, li), scale(t0, li)};
  }

  // Inverse of a modulo m; throws when not coprime.
  P inverse_mod(const P& a, const P& m) const {
    auto eg = ext_gcd(rem(a, m), m);
    if (eg.g.degree() != 0) throw ComputationFailed("polynomial not invertible modulo the given modulus");
    return rem(eg.s, m);
  }

  P derivative(const P& a) const {
    if (a.degree() <= 0) return P{};
    std::vector<Elem> out(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) {
      out[i - 1] = f_.mul(f_.from_int(static_cast<std::int64_t>(i)), a.c[i]);
    }
    return from(std::move(out));
  }

  Elem eval(const P& a, const Elem& x) const {
    Elem acc = f_.zero();
    for (std::size_t i = a.c.size(); i-- > 0;) acc = f_.add(f_.mul(acc, x), a.c[i]);
    return acc;
  }

  // a(x + s).
  P taylor_shift(const P& a, const Elem& s) const {
    std::vector<Elem> cs = a.c;
    const std::size_t n = cs.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = n - 1; j > i; --j) cs[j - 1] = f_.add(cs[j - 1], f_.mul(s, cs[j]));
    }
    return from(std::move(cs));
  }

  P powmod(P base, std::uint64_t e, const P& m) const {
    P acc = rem(one(), m);
    base = rem(base, m);
    while (e) {
      if (e & 1) acc = rem(mul(acc, base), m);
      e >>= 1;
      if (e) base = rem(mul(base, base), m);
    }
    return acc;
  }
  P powmod(P base, const Integer& e, const P& m) const {
    P acc = rem(one(), m);
    base = rem(base, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      acc = rem(mul(acc, acc), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) acc = rem(mul(acc, base), m);
    }
    return acc;
  }

  std::string to_string(const P& a, const std::string& var = "x") const {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = a.degree(); i >= 0; --i) {
      if (f_.is_zero(a.c[i])) continue;
      if (!first) os << " + ";
      first = false;
      const std::string cs = f_.to_string(a.c[i]);
      const bool unit = f_.eq(a.c[i], f_.one());
      if (i == 0) {
        os << cs;
      } else {
        if (!unit) os << "(" << cs << ")*";
        os << var;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

 private:
  const Field& f_;
};

}  // namespace paraspec
