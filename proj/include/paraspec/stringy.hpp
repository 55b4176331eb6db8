#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paraspec/cyclotomic.hpp"
#include "paraspec/rational.hpp"

namespace paraspec {

// Bivariate polynomial in u, v with rational exponents and integer coefficients.
class EPolynomial {
 public:
  using Exponent = std::pair<Rational, Rational>;

  void add_term(const Rational& p, const Rational& q, const Integer& c);
  const std::map<Exponent, Integer>& terms() const noexcept { return terms_; }

  EPolynomial operator+(const EPolynomial& o) const;
  EPolynomial operator*(const EPolynomial& o) const;
  bool operator==(const EPolynomial& o) const { return terms_ == o.terms_; }

  // Multiplies by (uv)^f.
  EPolynomial shifted(const Rational& f) const;
  // Value at u = v = x; throws InvalidInput when a fractional power of x is irrational.
  Rational evaluate_diagonal(const Integer& x) const;
  std::string to_string() const;

 private:
  std::map<Exponent, Integer> terms_;  // no zero coefficients
};

// sum_e c_e q^e with rational exponents.
using CountPolynomial = std::map<Rational, Integer>;
// sum_e c_e q^e with cyclotomic coefficients.
using SymbolicCount = std::map<Rational, Cyclotomic>;

struct RootOfUnity {
  long num = 0;
  long order = 1;
};

struct SectorComponent {
  std::string label;
  std::optional<EPolynomial> e_poly;
  std::optional<EPolynomial> twisted_e_poly;  // already restricted to the isotypic part
  std::optional<CountPolynomial> count;
  std::vector<int> eigen_exponents;
  std::optional<RootOfUnity> twist_trace;
};

struct GroupElement {
  std::string label;
  int order = 1;
};

struct OrbifoldDescription {
  int ambient_dim = 0;
  std::vector<GroupElement> group;
  std::map<std::string, std::vector<SectorComponent>> sectors;  // keyed by element label

  // Throws InvalidInput listing every violation.
  void validate() const;
  int order_of(const std::string& element) const;
};

Rational fermionic_shift(const std::vector<int>& exponents, int order);

EPolynomial stringy_E(const OrbifoldDescription& desc);
EPolynomial stringy_E_twisted(const OrbifoldDescription& desc);

SymbolicCount stringy_count(const OrbifoldDescription& desc);
SymbolicCount stringy_count_twisted(const OrbifoldDescription& desc);

// Exact value at an integer q; fractional exponents need q to be a perfect power.
Cyclotomic evaluate_count(const SymbolicCount& count, const Integer& q);
std::string to_string(const SymbolicCount& count);

Cyclotomic stringy_count_at(const OrbifoldDescription& desc, const Integer& q);
Cyclotomic stringy_count_twisted_at(const OrbifoldDescription& desc, const Integer& q);

// stringy_count at q^2 equals stringy_E at u = v = q.
bool weight_consistency(const OrbifoldDescription& desc, const Integer& q);

}  // namespace paraspec
