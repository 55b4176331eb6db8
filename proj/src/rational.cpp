#include "paraspec/rational.hpp"

#include <cctype>

#include "paraspec/errors.hpp"

namespace paraspec {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidInput("empty rational literal");
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/')) {
      throw InvalidInput("malformed rational literal '" + s + "'");
    }
  }
  if (s.front() == '+') s.erase(s.begin());
  Rational r;
  if (r.set_str(s, 10) != 0) throw InvalidInput("malformed rational literal '" + std::string(text) + "'");
  if (sgn(r.get_den()) == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(10); }

std::string to_string(const Integer& x) { return x.get_str(10); }

bool exact_root(const Integer& n, unsigned long k, Integer& root) {
  if (k == 0) return false;
  if (sgn(n) < 0) {
    if (k % 2 == 0) return false;
    Integer pos = -n;
    if (!exact_root(pos, k, root)) return false;
    root = -root;
    return true;
  }
  return mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0;
}

}  // namespace paraspec
