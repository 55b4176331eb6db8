#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace paraspec {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "a", "-a" or "a/b" into a canonical rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

// The field of rationals in the shape expected by the generic polynomial code.
struct RationalField {
  using Elem = Rational;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(std::int64_t v) const { return Elem(static_cast<long>(v)); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const { return 1 / a; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  std::string to_string(const Elem& a) const { return paraspec::to_string(a); }
  std::string name() const { return "rationals"; }
};

// Exact integer k-th root if n is a perfect k-th power.
bool exact_root(const Integer& n, unsigned long k, Integer& root);

}  // namespace paraspec
