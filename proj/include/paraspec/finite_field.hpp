#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace paraspec {

// GF(p^k). Elements are encoded as packed base-p digit vectors
// (a = sum d_i p^i over the polynomial basis modulo the field's defining
// polynomial), so for prime fields an element is its residue.
//
// Prime fields use direct modular arithmetic. Proper extensions use
// exp/log/Zech tables over the lexicographically first primitive modulus,
// which keeps every operation O(1) but caps the order at kMaxTableOrder.
class FiniteField {
 public:
  using Elem = std::uint32_t;

  static constexpr std::uint64_t kMaxTableOrder = std::uint64_t{1} << 22;

  explicit FiniteField(std::uint64_t q);
  FiniteField(std::uint32_t p, unsigned k);

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return k_; }
  std::uint64_t order() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return k_ == 1; }

  // Monic defining polynomial over F_p, ascending coefficients (x for k = 1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return tables_->modulus; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem from_int(std::int64_t v) const noexcept;

  Elem add(Elem a, Elem b) const noexcept {
    if (k_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_ext(a, b);
  }
  Elem neg(Elem a) const noexcept {
    if (a == 0) return 0;
    if (k_ == 1) return p_ - a;
    if (p_ == 2) return a;
    return tables_->exp[(tables_->log[a] + (q_ - 1) / 2) % (q_ - 1)];
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (k_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    std::uint64_t s = std::uint64_t{tables_->log[a]} + tables_->log[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return tables_->exp[s];
  }
  Elem inv(Elem a) const;  // throws on zero
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  bool is_zero(Elem a) const noexcept { return a == 0; }
  bool eq(Elem a, Elem b) const noexcept { return a == b; }

  // A fixed generator of the multiplicative group.
  Elem generator() const noexcept { return generator_; }

  // Elements are exactly the integers 0..order()-1.
  Elem element(std::uint64_t index) const noexcept { return static_cast<Elem>(index); }
  Elem random(std::mt19937_64& rng) const { return static_cast<Elem>(rng() % q_); }
  Elem random_nonzero(std::mt19937_64& rng) const { return static_cast<Elem>(1 + rng() % (q_ - 1)); }

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;

  std::string to_string(Elem a) const { return std::to_string(a); }
  std::string name() const { return "GF(" + std::to_string(q_) + ")"; }

  bool same_field(const FiniteField& other) const noexcept {
    return p_ == other.p_ && k_ == other.k_;
  }

 private:
  struct Tables {
    std::vector<std::uint32_t> modulus;
    std::vector<Elem> exp;              // g^i, i in [0, q-1)
    std::vector<std::uint32_t> log;     // log_g(a), a != 0
    std::vector<std::int64_t> zech;     // log(1 + g^n), -1 when 1 + g^n = 0
  };

  Elem add_ext(Elem a, Elem b) const noexcept {
    if (a == 0) return b;
    if (b == 0) return a;
    const auto& t = *tables_;
    std::uint64_t la = t.log[a], lb = t.log[b];
    std::uint64_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
    std::int64_t z = t.zech[d];
    if (z < 0) return 0;
    std::uint64_t s = la + static_cast<std::uint64_t>(z);
    if (s >= q_ - 1) s -= q_ - 1;
    return t.exp[s];
  }

  void build_prime();
  void build_extension();

  std::uint32_t p_ = 0;
  unsigned k_ = 0;
  std::uint64_t q_ = 0;
  Elem generator_ = 1;
  std::shared_ptr<const Tables> tables_;
};

// Splits a prime power into (p, k); throws InvalidInput otherwise.
std::pair<std::uint32_t, unsigned> prime_power_decompose(std::uint64_t q);

bool is_prime(std::uint64_t n);

// Field homomorphism GF(p^a) -> GF(p^b) for a | b, fixed by sending the
// small field's basis root to the first root of its modulus in the big field.
class FieldEmbedding {
 public:
  FieldEmbedding(const FiniteField& small, const FiniteField& big);

  FiniteField::Elem operator()(FiniteField::Elem a) const { return image_[a]; }

 private:
  std::vector<FiniteField::Elem> image_;
};

}  // namespace paraspec
