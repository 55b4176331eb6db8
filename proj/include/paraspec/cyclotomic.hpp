#pragma once

#include <string>
#include <vector>

#include "paraspec/rational.hpp"

namespace paraspec {

// Element of Q(zeta_N), stored as a polynomial in zeta_N reduced modulo the
// N-th cyclotomic polynomial. Values with different N are compared and
// combined inside Q(zeta_lcm), using zeta_{MN}^M = zeta_N.
class Cyclotomic {
 public:
  Cyclotomic() = default;  // zero
  explicit Cyclotomic(const Rational& v);
  static Cyclotomic root_of_unity(long num, long order);

  long conductor() const noexcept { return n_; }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }

  Cyclotomic lift(long m) const;  // requires conductor() | m
  Cyclotomic conjugate() const;
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_rational() const noexcept { return c_.size() <= 1; }
  bool is_real() const { return conjugate() == *this; }
  Rational rational_value() const;  // throws InvalidInput unless rational

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  bool operator==(const Cyclotomic& o) const;

  // "a + b*zeta4 + c*zeta4^2"; plain rational when rational.
  std::string to_string() const;

 private:
  Cyclotomic(long n, std::vector<Rational> c);
  static std::vector<Rational> reduce(long n, std::vector<Rational> c);

  long n_ = 1;
  std::vector<Rational> c_;
};

// Ascending coefficients of the N-th cyclotomic polynomial.
std::vector<Rational> cyclotomic_polynomial(long n);

}  // namespace paraspec
