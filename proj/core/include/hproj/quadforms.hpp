#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "hproj/rational.hpp"

namespace hproj {

// Binary quadratic form a x^2 + b xy + c y^2.
struct BQF {
  std::int64_t a = 0, b = 0, c = 0;
  __int128 discriminant() const { return static_cast<__int128>(b) * b - static_cast<__int128>(4) * a * c; }
  bool is_primitive() const;
  friend bool operator==(const BQF&, const BQF&) = default;
  friend auto operator<=>(const BQF&, const BQF&) = default;
};

// Hurwitz class number H(n); H(0) = -1/12 and H(n) = 0 for n = 1, 2 mod 4.
// Direct backend: weighted count of reduced forms, n <= kHurwitzDirectLimit.
inline constexpr std::uint64_t kHurwitzDirectLimit = 100'000'000;
inline constexpr std::uint64_t kHurwitzCrossover = 1'000'000;
Rational hurwitz_direct(std::uint64_t n);
// Class number formula over the fundamental discriminant of -n.
Rational hurwitz_fast(std::uint64_t n);
// Direct below kHurwitzCrossover, fast above.
Rational hurwitz(std::uint64_t n);

// h(D) for a negative fundamental discriminant, from a smoothed L-series sum
// with a certified error bound. Throws convergence_error if the bound does
// not isolate an integer.
std::int64_t class_number_fundamental(std::int64_t d);
// Units of the order of discriminant D < 0.
int unit_count(std::int64_t d);

struct PellSolution {
  mpz_class t, u;
};

// Smallest t, u > 0 with t^2 - d u^2 = 4, for non-square discriminants d > 0.
PellSolution pell_fundamental(std::int64_t d);
// 2 log((t + u sqrt d) / 2), or log d for square d.
double regulator(std::int64_t d);

// Narrow class number of primitive forms of discriminant d > 0.
std::int64_t hplus(std::int64_t d);
// (1 / 2 pi) sum over l^2 | d with d / l^2 a discriminant of R(d/l^2) h+(d/l^2).
// Zero when no such l exists.
double hstar(std::int64_t d);

// Indefinite reduction helpers, d > 0 non-square.
bool is_reduced_indefinite(const BQF& f, std::int64_t d);
BQF rho(const BQF& f, std::int64_t d);
std::vector<BQF> reduced_indefinite_forms(std::int64_t d);
std::vector<std::vector<BQF>> reduced_cycles(std::int64_t d);

}  // namespace hproj
