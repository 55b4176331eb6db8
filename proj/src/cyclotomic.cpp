#include "paraspec/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "paraspec/errors.hpp"
#include "paraspec/poly.hpp"

namespace paraspec {

namespace {

const RationalField kQ{};

}  // namespace

std::vector<Rational> cyclotomic_polynomial(long n) {
  if (n < 1) throw InvalidInput("cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<long, std::vector<Rational>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // Phi_n = prod_{d | n} (x^d - 1)^{moebius(n/d)}: multiply by the numerator
  // binomials, then divide by the others exactly (synthetic division).
  auto moebius = [](long m) {
    int sign = 1;
    for (long p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) return 0;
      sign = -sign;
    }
    return m > 1 ? -sign : sign;
  };
  std::vector<Integer> f{Integer(1)};
  std::vector<long> divide_by;
  for (long d = 1; d <= n; ++d) {
    if (n % d) continue;
    const int m = moebius(n / d);
    if (m == 1) {
      std::vector<Integer> g(f.size() + static_cast<std::size_t>(d), Integer(0));
      for (std::size_t i = 0; i < f.size(); ++i) {
        g[i + static_cast<std::size_t>(d)] += f[i];
        g[i] -= f[i];
      }
      f = std::move(g);
    } else if (m == -1) {
      divide_by.push_back(d);
    }
  }
  for (long d : divide_by) {
    // f / (x^d - 1): q_i = q_{i+d} - ... computed from the top down
    const std::size_t k = static_cast<std::size_t>(d);
    std::vector<Integer> q(f.size() - k, Integer(0));
    for (std::size_t i = q.size(); i-- > 0;) {
      q[i] = f[i + k] + (i + k < q.size() ? q[i + k] : Integer(0));
    }
    f = std::move(q);
  }
  std::vector<Rational> out(f.begin(), f.end());
  std::lock_guard lock(mu);
  cache.emplace(n, out);
  return out;
}

Cyclotomic::Cyclotomic(const Rational& v) : n_(1) {
  if (sgn(v) != 0) c_ = {v};
}

Cyclotomic::Cyclotomic(long n, std::vector<Rational> c) : n_(n), c_(reduce(n, std::move(c))) {}

std::vector<Rational> Cyclotomic::reduce(long n, std::vector<Rational> c) {
  PolyRing<RationalField> R(kQ);
  return R.rem(R.from(std::move(c)), R.from(cyclotomic_polynomial(n))).c;
}

Cyclotomic Cyclotomic::root_of_unity(long num, long order) {
  if (order < 1) throw InvalidInput("root of unity order must be positive");
  long k = num % order;
  if (k < 0) k += order;
  const long g = std::gcd(k, order);
  const long n = order / g;
  k /= g;
  std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
  c[k] = 1;
  return Cyclotomic(n, std::move(c));
}

Cyclotomic Cyclotomic::lift(long m) const {
  if (m % n_ != 0) throw InvalidInput("cannot lift Q(zeta_" + std::to_string(n_) + ") to conductor " + std::to_string(m));
  if (m == n_) return *this;
  const long step = m / n_;
  std::vector<Rational> c(c_.empty() ? 0 : (c_.size() - 1) * static_cast<std::size_t>(step) + 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) c[i * static_cast<std::size_t>(step)] = c_[i];
  return Cyclotomic(m, std::move(c));
}

Cyclotomic Cyclotomic::conjugate() const {
  std::vector<Rational> c(static_cast<std::size_t>(n_) + 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) c[(static_cast<long>(n_) - static_cast<long>(i)) % n_] += c_[i];
  return Cyclotomic(n_, std::move(c));
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) throw InvalidInput("value " + to_string() + " is not rational");
  return c_.empty() ? Rational(0) : c_[0];
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  const long m = std::lcm(n_, o.n_);
  auto a = lift(m), b = o.lift(m);
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Cyclotomic(m, std::move(c));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + o * Cyclotomic(Rational(-1)); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  const long m = std::lcm(n_, o.n_);
  auto a = lift(m), b = o.lift(m);
  if (a.c_.empty() || b.c_.empty()) return Cyclotomic(m, {});
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Cyclotomic(m, std::move(c));
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  const long m = std::lcm(n_, o.n_);
  return lift(m).c_ == o.lift(m).c_;
}

std::string Cyclotomic::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  const std::string z = "zeta" + std::to_string(n_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    const bool neg = sgn(c_[i]) < 0;
    const Rational mag = abs(c_[i]);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (i == 0) {
      os << paraspec::to_string(mag);
      continue;
    }
    if (mag != 1) os << paraspec::to_string(mag) << "*";
    os << z;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace paraspec
