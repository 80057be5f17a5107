#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "hproj/character.hpp"
#include "hproj/power_series.hpp"

namespace hproj {

// prod_{n>=1} (1 - q^n) through q^N, from the pentagonal exponents.
IntSeries euler_product_series(std::size_t N);

// prod eta(t z)^r over (t, r) pairs. Requires sum t r = 0 mod 24.
class EtaQuotientSpec {
 public:
  explicit EtaQuotientSpec(std::vector<std::pair<int, int>> factors);
  // "8:8,4:-2,16:-2"
  static EtaQuotientSpec parse(std::string_view text);

  const std::vector<std::pair<int, int>>& factors() const { return factors_; }
  // Exponent of the leading power of q.
  long leading_exponent() const;

 private:
  std::vector<std::pair<int, int>> factors_;
};

IntSeries eta_quotient(const EtaQuotientSpec& spec, std::size_t N);

// sum_{n in Z, n^2 <= N} chi(n) n^nu q^(n^2), nu the parity of chi.
IntSeries theta_series(const DirichletCharacter& chi, std::size_t N);

// f | V(t): a(n) moves to index t n.
IntSeries v_operator(const IntSeries& f, std::size_t t);

// Weight-2 Hecke operator for trivial character, odd prime p:
// sum (c(np) + p c(n/p)) q^n. Output precision floor(N / p).
IntSeries hecke_t_p(const IntSeries& f, unsigned p);

struct S2Basis {
  IntSeries f1, f2, f3;
  std::array<const IntSeries*, 3> list() const { return {&f1, &f2, &f3}; }
};

// f1 = eta(8z)^8 / (eta(4z)^2 eta(16z)^2), f2 = eta(4z)^2 eta(8z)^2, f3 = f2 | V(2).
S2Basis basis_s2_64(std::size_t N);

}  // namespace hproj
