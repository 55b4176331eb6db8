#include "paraspec/zeta.hpp"

#include <sstream>

#include "paraspec/errors.hpp"

namespace paraspec {

namespace {

Integer ipow(std::uint64_t q, unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), q, e);
  return out;
}

// Power sums S_1..S_K of the inverse roots from L.
std::vector<Integer> power_sums(const LPolynomial& L, int K) {
  std::vector<Integer> S(static_cast<std::size_t>(K) + 1);
  auto b = [&](int k) { return k < static_cast<int>(L.b.size()) ? L.b[k] : Integer(0); };
  for (int k = 1; k <= K; ++k) {
    Integer s = -k * b(k);
    for (int i = 1; i < k; ++i) s -= S[i] * b(k - i);
    S[k] = s;
  }
  return S;
}

}  // namespace

Integer LPolynomial::at_one() const {
  Integer s = 0;
  for (const auto& v : b) s += v;
  return s;
}

std::string LPolynomial::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (sgn(b[i]) == 0) continue;
    const bool neg = sgn(b[i]) < 0;
    const Integer mag = abs(b[i]);
    if (first) {
      os << (neg ? "-" : "");
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return first ? "0" : os.str();
}

LPolynomial zeta_fit(const std::vector<Integer>& counts, std::uint64_t q, int g) {
  if (g < 0) throw InvalidInput("genus must be non-negative");
  if (static_cast<int>(counts.size()) < g) {
    throw InvalidInput("zeta fit needs " + std::to_string(g) + " counts, got " + std::to_string(counts.size()));
  }
  std::vector<Integer> S(static_cast<std::size_t>(g) + 1);
  for (int m = 1; m <= g; ++m) S[m] = ipow(q, static_cast<unsigned long>(m)) + 1 - counts[m - 1];
  LPolynomial L;
  L.b.assign(static_cast<std::size_t>(2 * g) + 1, Integer(0));
  L.b[0] = 1;
  for (int k = 1; k <= g; ++k) {
    Integer acc = 0;
    for (int i = 1; i <= k; ++i) acc -= S[i] * L.b[k - i];
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(k))) {
      throw ComputationFailed("zeta fit failed: non-integral coefficient b_" + std::to_string(k));
    }
    L.b[k] = acc / k;
  }
  for (int i = 0; i < g; ++i) L.b[2 * g - i] = ipow(q, static_cast<unsigned long>(g - i)) * L.b[i];
  const auto predicted = predicted_counts(L, q, static_cast<int>(counts.size()));
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (predicted[m] != counts[m]) {
      throw ComputationFailed("zeta fit failed: N_" + std::to_string(m + 1) + " = " + counts[m].get_str() +
                              " but the fitted L predicts " + predicted[m].get_str());
    }
  }
  return L;
}

std::vector<Integer> predicted_counts(const LPolynomial& L, std::uint64_t q, int K) {
  const auto S = power_sums(L, K);
  std::vector<Integer> out;
  for (int m = 1; m <= K; ++m) out.push_back(ipow(q, static_cast<unsigned long>(m)) + 1 - S[m]);
  return out;
}

std::optional<int> infer_genus(const std::vector<Integer>& counts, std::uint64_t q, int max_genus) {
  for (int g = 0; g <= max_genus && g < static_cast<int>(counts.size()); ++g) {
    try {
      zeta_fit(counts, q, g);
      return g;
    } catch (const ComputationFailed&) {
    }
  }
  return std::nullopt;
}

ClassNumbers class_numbers(const LPolynomial& L, const LPolynomial& base_L) {
  ClassNumbers out;
  out.h_jac = L.at_one();
  const Integer base = base_L.at_one();
  if (sgn(base) == 0 || !mpz_divisible_p(out.h_jac.get_mpz_t(), base.get_mpz_t())) {
    throw ComputationFailed("Prym L-division failed");
  }
  out.h_prym = out.h_jac / base;
  return out;
}

bool weil_check(const std::vector<Integer>& counts, int g, std::uint64_t q) {
  for (std::size_t m = 0; m < counts.size(); ++m) {
    const Integer qm = ipow(q, static_cast<unsigned long>(m + 1));
    const Integer dev = counts[m] - qm - 1;
    if (dev * dev > 4 * Integer(g) * g * qm) return false;
  }
  return true;
}

bool functional_equation_holds(const LPolynomial& L, std::uint64_t q) {
  const int n = static_cast<int>(L.b.size()) - 1;
  if (n % 2 != 0 || L.b.empty() || L.b[0] != 1) return false;
  const int g = n / 2;
  for (int i = 0; i <= g; ++i)
    if (L.b[2 * g - i] != ipow(q, static_cast<unsigned long>(g - i)) * L.b[i]) return false;
  return true;
}

}  // namespace paraspec
