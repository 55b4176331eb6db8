#include "paraspec/finite_field.hpp"

#include <algorithm>
#include <tuple>

#include "paraspec/errors.hpp"

namespace paraspec {

namespace {

using Digits = std::vector<std::uint32_t>;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Arithmetic in F_p[x] / (f) on digit vectors of length deg f.
class DigitRing {
 public:
  DigitRing(std::uint32_t p, Digits monic) : p_(p), f_(std::move(monic)), k_(f_.size() - 1) {}

  Digits mul(const Digits& a, const Digits& b) const {
    std::vector<std::uint64_t> prod(2 * k_, 0);
    for (unsigned i = 0; i < k_; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
    }
    for (unsigned d = 2 * k_ - 1; d >= k_; --d) {
      std::uint64_t top = prod[d];
      if (top == 0) continue;
      prod[d] = 0;
      for (unsigned i = 0; i < k_; ++i) {
        prod[d - k_ + i] = (prod[d - k_ + i] + (p_ - top) * f_[i]) % p_;
      }
    }
    Digits out(k_);
    for (unsigned i = 0; i < k_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
  }

  Digits pow(Digits base, std::uint64_t e) const {
    Digits acc(k_, 0);
    acc[0] = 1;
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  Digits x() const {
    Digits v(k_, 0);
    if (k_ == 1) {
      v[0] = static_cast<std::uint32_t>((p_ - f_[0]) % p_);
    } else {
      v[1] = 1;
    }
    return v;
  }

 private:
  std::uint32_t p_;
  Digits f_;
  unsigned k_;
};

bool is_one(const Digits& d) {
  if (d[0] != 1) return false;
  return std::all_of(d.begin() + 1, d.end(), [](std::uint32_t v) { return v == 0; });
}

// Polynomial gcd over F_p on plain ascending coefficient vectors; used only
// for Rabin's irreducibility test while searching for a modulus.
Digits trim(Digits a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Digits poly_rem(Digits a, const Digits& b, std::uint32_t p) {
  a = trim(std::move(a));
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * b[i] % p) % p);
    }
    a = trim(std::move(a));
  }
  return a;
}

std::size_t poly_gcd_degree(Digits a, Digits b, std::uint32_t p) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    Digits r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? 0 : a.size() - 1;
}

bool rabin_irreducible(const Digits& f, std::uint32_t p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  DigitRing ring(p, f);
  const Digits x = ring.x();
  auto frob_power = [&](unsigned j) {
    Digits v = x;
    for (unsigned i = 0; i < j; ++i) v = ring.pow(v, p);
    return v;
  };
  Digits full = frob_power(k);
  if (full != x) return false;
  for (std::uint64_t ell : prime_factors(k)) {
    Digits h = frob_power(static_cast<unsigned>(k / ell));
    h[1 % k] = (h[1 % k] + p - 1) % p;  // x^{p^{k/l}} - x
    if (poly_gcd_degree(f, h, p) != 0) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<std::uint32_t, unsigned> prime_power_decompose(std::uint64_t q) {
  if (q < 2) throw InvalidInput("field order " + std::to_string(q) + " is not a prime power");
  for (std::uint64_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    if (!is_prime(p)) continue;
    unsigned k = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
      r /= p;
      ++k;
    }
    if (r != 1) throw InvalidInput("field order " + std::to_string(q) + " is not a prime power");
    if (p >= (std::uint64_t{1} << 31)) throw InvalidInput("characteristic too large");
    return {static_cast<std::uint32_t>(p), k};
  }
  throw InvalidInput("field order " + std::to_string(q) + " is not a prime power");
}

FiniteField::FiniteField(std::uint64_t q)
    : FiniteField(prime_power_decompose(q).first, prime_power_decompose(q).second) {}

FiniteField::FiniteField(std::uint32_t p, unsigned k) : p_(p), k_(k) {
  if (!is_prime(p)) throw InvalidInput("characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw InvalidInput("extension degree must be positive");
  q_ = 1;
  for (unsigned i = 0; i < k; ++i) {
    q_ *= p;
    if (k > 1 && q_ > kMaxTableOrder) {
      throw ResourceExhausted("GF(" + std::to_string(p) + "^" + std::to_string(k) +
                              ") exceeds the table-driven field size limit");
    }
  }
  if (k == 1) {
    build_prime();
  } else {
    build_extension();
  }
}

void FiniteField::build_prime() {
  auto t = std::make_shared<Tables>();
  t->modulus = {0, 1};
  tables_ = t;
  if (p_ == 2) {
    generator_ = 1;
    return;
  }
  const auto factors = prime_factors(p_ - 1);
  for (Elem g = 2; g < p_; ++g) {
    bool primitive = std::all_of(factors.begin(), factors.end(),
                                 [&](std::uint64_t ell) { return pow(g, (p_ - 1) / ell) != 1; });
    if (primitive) {
      generator_ = g;
      return;
    }
  }
}

void FiniteField::build_extension() {
  const auto order_factors = prime_factors(q_ - 1);
  Digits f(k_ + 1, 0);
  f[k_] = 1;
  std::uint64_t tail_count = q_;  // p^k choices for the lower coefficients
  for (std::uint64_t code = 0; code < tail_count; ++code) {
    std::uint64_t c = code;
    for (unsigned i = 0; i < k_; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p_);
      c /= p_;
    }
    if (f[0] == 0) continue;
    if (!rabin_irreducible(f, p_)) continue;
    DigitRing ring(p_, f);
    const Digits x = ring.x();
    bool primitive = std::all_of(order_factors.begin(), order_factors.end(), [&](std::uint64_t ell) {
      return !is_one(ring.pow(x, (q_ - 1) / ell));
    });
    if (!primitive) continue;

    auto t = std::make_shared<Tables>();
    t->modulus = f;
    t->exp.resize(q_ - 1);
    t->log.assign(q_, 0);
    Digits cur(k_, 0);
    cur[0] = 1;
    for (std::uint64_t i = 0; i + 1 < q_; ++i) {
      Elem e = from_digits(cur);
      t->exp[i] = e;
      t->log[e] = static_cast<std::uint32_t>(i);
      cur = ring.mul(cur, x);
    }
    t->zech.resize(q_ - 1);
    for (std::uint64_t n = 0; n + 1 < q_; ++n) {
      Elem a = t->exp[n];
      Elem b = (a % p_ == p_ - 1) ? a - (p_ - 1) : a + 1;
      t->zech[n] = b == 0 ? -1 : static_cast<std::int64_t>(t->log[b]);
    }
    tables_ = std::move(t);
    generator_ = p_;  // the class of x
    return;
  }
  throw Error("no primitive polynomial found for GF(" + std::to_string(q_) + ")");
}

FiniteField::Elem FiniteField::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw ComputationFailed("division by zero in " + name());
  if (k_ == 1) return inv_mod(a, p_);
  std::uint64_t l = tables_->log[a];
  return tables_->exp[l == 0 ? 0 : (q_ - 1) - l];
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const noexcept {
  Elem acc = 1;
  while (e) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

std::vector<std::uint32_t> FiniteField::digits(Elem a) const {
  std::vector<std::uint32_t> d(k_);
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

FiniteField::Elem FiniteField::from_digits(const std::vector<std::uint32_t>& d) const {
  std::uint64_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i];
  return static_cast<Elem>(v);
}

FieldEmbedding::FieldEmbedding(const FiniteField& small, const FiniteField& big) {
  if (small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0) {
    throw InvalidInput(small.name() + " does not embed in " + big.name());
  }
  image_.resize(small.order());
  if (small.same_field(big)) {
    for (std::uint64_t a = 0; a < small.order(); ++a) image_[a] = static_cast<FiniteField::Elem>(a);
    return;
  }
  if (small.is_prime_field()) {
    for (std::uint64_t a = 0; a < small.order(); ++a) image_[a] = big.from_int(static_cast<std::int64_t>(a));
    return;
  }
  const auto& f = small.modulus();
  auto eval_modulus = [&](FiniteField::Elem beta) {
    FiniteField::Elem acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = big.add(big.mul(acc, beta), big.from_int(f[i]));
    return acc;
  };
  const std::uint64_t step = (big.order() - 1) / (small.order() - 1);
  const FiniteField::Elem g = big.pow(big.generator(), step);
  FiniteField::Elem beta = 0;
  bool found = false;
  FiniteField::Elem cand = g;
  for (std::uint64_t j = 1; j < small.order(); ++j, cand = big.mul(cand, g)) {
    if (eval_modulus(cand) == 0) {
      beta = cand;
      found = true;
      break;
    }
  }
  if (!found) throw Error("no root of the subfield modulus found in " + big.name());
  for (std::uint64_t a = 0; a < small.order(); ++a) {
    auto d = small.digits(static_cast<FiniteField::Elem>(a));
    FiniteField::Elem acc = 0;
    for (std::size_t i = d.size(); i-- > 0;) acc = big.add(big.mul(acc, beta), big.from_int(d[i]));
    image_[a] = acc;
  }
}

}  // namespace paraspec
