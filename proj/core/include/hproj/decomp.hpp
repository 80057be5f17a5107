#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hproj/power_series.hpp"

namespace hproj {

struct BasisSolve {
  std::vector<std::int64_t> pivots;
  std::vector<double> coefficients;
  double residual_max = 0.0;
  std::int64_t residual_index = 0;  // 0 when no non-pivot index was available
  double condition_number = 0.0;    // infinity-norm condition of the pivot matrix
};

// Solves sum_j x_j basis_j(p) = target(p) at the pivots p, then scans
// |target(h) - sum_j x_j basis_j(h)| over every other index h present in the
// target and within basis precision. With weights, each residual is divided
// by max(weight(h), 1).
BasisSolve solve_on_basis(const std::map<std::int64_t, double>& target, const std::vector<IntSeries>& basis,
                          const std::vector<std::int64_t>& pivots,
                          const std::map<std::int64_t, double>* weights = nullptr);

// max_n |(T_p f)(n) - lambda f(n)| over 1 <= n <= precision(f) / p.
double verify_hecke(const IntSeries& f, unsigned p, long expected_eigenvalue);

struct PatternCheck {
  std::int64_t k = 0;
  std::string rule;
  double value = 0.0;
  double base = 0.0;       // unit of the lattice r(k) should lie on; 0 for vanishing rules
  double ratio = 0.0;      // value / base
  long nearest = 0;        // nearest lattice multiple
  double distance = 0.0;   // |ratio - nearest|, or |value| for vanishing rules
  double allowance = 0.0;  // tolerance plus propagated uncertainty
  bool violated = false;
};

struct PatternReport {
  std::vector<PatternCheck> checks;
  std::vector<PatternCheck> violations;
  double r1 = 0.0, r5_half = 0.0;
  bool r1_matches_half_r5 = false;  // observation only
};

// Lattice rules for the r-values of the chi_4 projection:
//   k = 2 mod 4: r(k) / r(2) integral;  k = 1 mod 8: r(k) / r(1) integral;
//   k = 5 mod 8: r(k) / (r(5)/2) integral; odd k with p || k for a prime
//   p = 3 mod 4: r(k) = 0.
// Ratio distances are compared against tol plus the uncertainty of the
// ratio propagated from `uncertainty` (absent entries count as exact).
PatternReport arithmetic_patterns(const std::map<std::int64_t, double>& rvalues, double tol,
                                  const std::map<std::int64_t, double>& uncertainty = {});

std::string to_json(const BasisSolve& solve, const PatternReport* patterns);

}  // namespace hproj
