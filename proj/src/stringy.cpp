#include "paraspec/stringy.hpp"

#include <set>
#include <sstream>

#include "paraspec/errors.hpp"

namespace paraspec {

namespace {

// x^e for rational e, exactly.
Rational rational_power(const Integer& x, const Rational& e) {
  const Integer num = e.get_num(), den = e.get_den();
  Integer base = x;
  if (den != 1) {
    if (!den.fits_ulong_p() || !exact_root(x, den.get_ui(), base)) {
      throw InvalidInput("q = " + x.get_str() + " has no exact root of order " + den.get_str() +
                         ": evaluate at a perfect power or keep symbolic");
    }
  }
  const Integer mag = abs(num);
  if (!mag.fits_ulong_p()) throw InvalidInput("exponent too large");
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), mag.get_ui());
  if (sgn(num) >= 0) return Rational(p);
  if (sgn(p) == 0) throw InvalidInput("negative power of zero");
  return Rational(Integer(1), p);
}

std::string exponent_string(const std::string& var, const Rational& e) {
  if (e == 0) return "";
  if (e == 1) return var;
  if (e.get_den() == 1) return var + "^" + e.get_str();
  return var + "^(" + e.get_str() + ")";
}


void add_to(SymbolicCount& acc, const Rational& e, const Cyclotomic& c) {
  auto& slot = acc[e];
  slot += c;
  if (slot.is_zero()) acc.erase(e);
}

template <class Get>
SymbolicCount assemble_count(const OrbifoldDescription& desc, Get coefficient_of) {
  desc.validate();
  SymbolicCount out;
  for (const auto& [element, comps] : desc.sectors) {
    const int order = desc.order_of(element);
    for (const auto& comp : comps) {
      if (!comp.count) {
        throw InvalidInput("missing count for component '" + comp.label + "' of sector '" + element + "'");
      }
      const Rational f = fermionic_shift(comp.eigen_exponents, order);
      const Cyclotomic w = coefficient_of(element, comp);
      for (const auto& [e, c] : *comp.count) add_to(out, e + f, Cyclotomic(Rational(c)) * w);
    }
  }
  return out;
}

template <class Get>
EPolynomial assemble_E(const OrbifoldDescription& desc, Get poly_of) {
  desc.validate();
  EPolynomial out;
  for (const auto& [element, comps] : desc.sectors) {
    const int order = desc.order_of(element);
    for (const auto& comp : comps) {
      const std::optional<EPolynomial>& e = poly_of(comp);
      if (!e) throw InvalidInput("missing E-polynomial for component '" + comp.label + "' of sector '" + element + "'");
      out = out + e->shifted(fermionic_shift(comp.eigen_exponents, order));
    }
  }
  return out;
}

}  // namespace

void EPolynomial::add_term(const Rational& p, const Rational& q, const Integer& c) {
  if (sgn(c) == 0) return;
  auto key = Exponent{p, q};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
  } else {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

EPolynomial EPolynomial::operator+(const EPolynomial& o) const {
  EPolynomial out = *this;
  for (const auto& [k, c] : o.terms_) out.add_term(k.first, k.second, c);
  return out;
}

EPolynomial EPolynomial::operator*(const EPolynomial& o) const {
  EPolynomial out;
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) out.add_term(a.first + b.first, a.second + b.second, ca * cb);
  return out;
}

EPolynomial EPolynomial::shifted(const Rational& f) const {
  EPolynomial out;
  for (const auto& [k, c] : terms_) out.add_term(k.first + f, k.second + f, c);
  return out;
}

Rational EPolynomial::evaluate_diagonal(const Integer& x) const {
  Rational s = 0;
  for (const auto& [k, c] : terms_) s += Rational(c) * rational_power(x, k.first + k.second);
  return s;
}

std::string EPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    const bool neg = sgn(c) < 0;
    const Integer mag = abs(c);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    std::string mono = exponent_string("u", k.first);
    const std::string vp = exponent_string("v", k.second);
    if (!vp.empty()) mono += (mono.empty() ? "" : "*") + vp;
    if (mono.empty()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << mono;
    }
  }
  return os.str();
}

int OrbifoldDescription::order_of(const std::string& element) const {
  for (const auto& g : group)
    if (g.label == element) return g.order;
  throw InvalidInput("sector '" + element + "' names no group element");
}

void OrbifoldDescription::validate() const {
  std::vector<std::string> errors;
  if (ambient_dim < 0) errors.push_back("ambient_dim must be non-negative");
  std::set<std::string> labels;
  int identities = 0;
  for (const auto& g : group) {
    if (!labels.insert(g.label).second) errors.push_back("duplicate group element '" + g.label + "'");
    if (g.order < 1) errors.push_back("group element '" + g.label + "' has non-positive order");
    if (g.order == 1) ++identities;
  }
  if (identities != 1) errors.push_back("exactly one identity element (order 1) is required");
  for (const auto& [element, comps] : sectors) {
    if (!labels.count(element)) {
      errors.push_back("sector '" + element + "' names no group element");
      continue;
    }
    const int order = order_of(element);
    for (const auto& comp : comps) {
      const std::string where = "component '" + comp.label + "' of sector '" + element + "'";
      if (static_cast<int>(comp.eigen_exponents.size()) != ambient_dim) {
        errors.push_back(where + ": expected " + std::to_string(ambient_dim) + " eigen exponents");
      }
      for (int c : comp.eigen_exponents) {
        if (c < 0 || c >= order) errors.push_back(where + ": eigen exponent " + std::to_string(c) + " outside [0, order)");
        if (order == 1 && c != 0) errors.push_back(where + ": identity sector exponents must vanish");
      }
      if (comp.twist_trace && comp.twist_trace->order < 1) errors.push_back(where + ": trace order must be positive");
    }
  }
  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "; ") + e;
    throw InvalidInput(msg);
  }
}

Rational fermionic_shift(const std::vector<int>& exponents, int order) {
  if (order < 1) throw InvalidInput("group element order must be positive");
  Rational s = 0;
  for (int c : exponents) {
    if (c < 0 || c >= order) {
      throw InvalidInput("eigen exponent " + std::to_string(c) + " outside [0, " + std::to_string(order) + ")");
    }
    s += Rational(c, order);
  }
  s.canonicalize();
  return s;
}

EPolynomial stringy_E(const OrbifoldDescription& desc) {
  return assemble_E(desc, [](const SectorComponent& c) -> const std::optional<EPolynomial>& { return c.e_poly; });
}

EPolynomial stringy_E_twisted(const OrbifoldDescription& desc) {
  return assemble_E(desc, [](const SectorComponent& c) -> const std::optional<EPolynomial>& {
    return c.twisted_e_poly;
  });
}

SymbolicCount stringy_count(const OrbifoldDescription& desc) {
  return assemble_count(desc, [](const std::string&, const SectorComponent&) { return Cyclotomic(Rational(1)); });
}

SymbolicCount stringy_count_twisted(const OrbifoldDescription& desc) {
  return assemble_count(desc, [](const std::string& element, const SectorComponent& c) {
    if (!c.twist_trace) {
      throw InvalidInput("missing twist trace for component '" + c.label + "' of sector '" + element + "'");
    }
    return Cyclotomic::root_of_unity(c.twist_trace->num, c.twist_trace->order);
  });
}

Cyclotomic evaluate_count(const SymbolicCount& count, const Integer& q) {
  Cyclotomic out;
  for (const auto& [e, c] : count) out += c * Cyclotomic(rational_power(q, e));
  return out;
}

std::string to_string(const SymbolicCount& count) {
  if (count.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = count.rbegin(); it != count.rend(); ++it) {
    const auto& [e, c] = *it;
    const std::string mono = exponent_string("q", e);
    std::string coeff = c.to_string();
    const bool simple = c.is_rational();
    const bool neg = simple && sgn(c.rational_value()) < 0;
    if (simple) coeff = paraspec::to_string(abs(c.rational_value()));
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (mono.empty()) {
      os << (simple ? coeff : "(" + coeff + ")");
    } else if (simple && coeff == "1") {
      os << mono;
    } else {
      os << (simple ? coeff : "(" + coeff + ")") << "*" << mono;
    }
  }
  return os.str();
}

Cyclotomic stringy_count_at(const OrbifoldDescription& desc, const Integer& q) {
  return evaluate_count(stringy_count(desc), q);
}

Cyclotomic stringy_count_twisted_at(const OrbifoldDescription& desc, const Integer& q) {
  return evaluate_count(stringy_count_twisted(desc), q);
}

bool weight_consistency(const OrbifoldDescription& desc, const Integer& q) {
  const Cyclotomic count = stringy_count_at(desc, q * q);
  const Rational e = stringy_E(desc).evaluate_diagonal(q);
  return count == Cyclotomic(e);
}

}  // namespace paraspec
