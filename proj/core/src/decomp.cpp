#include "hproj/decomp.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hproj/arith.hpp"
#include "hproj/qseries.hpp"

namespace hproj {

namespace {

// Gaussian elimination with partial pivoting; throws on a singular matrix.
std::vector<double> solve_dense(std::vector<std::vector<double>> A, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (A[piv][col] == 0.0) throw std::domain_error("solve_on_basis: singular pivot matrix");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = A[r][col] / A[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= A[i][c] * x[c];
    x[i] = s / A[i][i];
  }
  return x;
}

double inf_norm(const std::vector<std::vector<double>>& A) {
  double m = 0;
  for (const auto& row : A) {
    double s = 0;
    for (double v : row) s += std::abs(v);
    m = std::max(m, s);
  }
  return m;
}

std::vector<std::vector<double>> inverse(const std::vector<std::vector<double>>& A) {
  const std::size_t n = A.size();
  std::vector<std::vector<double>> inv(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    auto col = solve_dense(A, e);
    for (std::size_t i = 0; i < n; ++i) inv[i][j] = col[i];
  }
  return inv;
}

bool has_exact_prime_3mod4(std::int64_t k) {
  for (const auto& pp : factorize(static_cast<u128>(k))) {
    if (pp.prime % 4 == 3 && pp.exponent == 1) return true;
  }
  return false;
}

}  // namespace

BasisSolve solve_on_basis(const std::map<std::int64_t, double>& target, const std::vector<IntSeries>& basis,
                          const std::vector<std::int64_t>& pivots, const std::map<std::int64_t, double>* weights) {
  if (basis.empty() || basis.size() != pivots.size()) {
    throw std::invalid_argument("solve_on_basis: need as many pivots as basis elements");
  }
  const std::size_t n = basis.size();
  std::size_t prec = basis[0].precision();
  for (const auto& f : basis) prec = std::min(prec, f.precision());
  std::vector<std::vector<double>> A(n, std::vector<double>(n));
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = pivots[i];
    if (p < 0 || static_cast<std::size_t>(p) > prec) throw std::invalid_argument("solve_on_basis: pivot beyond basis precision");
    auto it = target.find(p);
    if (it == target.end()) throw std::invalid_argument("solve_on_basis: target lacks pivot " + std::to_string(p));
    rhs[i] = it->second;
    for (std::size_t j = 0; j < n; ++j) A[i][j] = basis[j][static_cast<std::size_t>(p)].get_d();
  }
  BasisSolve out;
  out.pivots = pivots;
  out.coefficients = solve_dense(A, rhs);
  out.condition_number = inf_norm(A) * inf_norm(inverse(A));
  for (const auto& [h, v] : target) {
    if (h < 0 || static_cast<std::size_t>(h) > prec) continue;
    if (std::find(pivots.begin(), pivots.end(), h) != pivots.end()) continue;
    double fit = 0.0;
    for (std::size_t j = 0; j < n; ++j) fit += out.coefficients[j] * basis[j][static_cast<std::size_t>(h)].get_d();
    double res = std::abs(v - fit);
    if (weights) {
      auto w = weights->find(h);
      if (w != weights->end()) res /= std::max(w->second, 1.0);
    }
    if (res > out.residual_max || out.residual_index == 0) {
      out.residual_max = res;
      out.residual_index = h;
    }
  }
  return out;
}

double verify_hecke(const IntSeries& f, unsigned p, long expected_eigenvalue) {
  IntSeries t = hecke_t_p(f, p);
  if (t.precision() < 1) throw precision_error("verify_hecke: series too short for T_p");
  mpz_class worst = 0;
  for (std::size_t n = 1; n <= t.precision(); ++n) {
    mpz_class d = abs(t[n] - expected_eigenvalue * f[n]);
    if (d > worst) worst = d;
  }
  return worst.get_d();
}

PatternReport arithmetic_patterns(const std::map<std::int64_t, double>& rvalues, double tol,
                                  const std::map<std::int64_t, double>& uncertainty) {
  auto value = [&](std::int64_t k) -> const double* {
    auto it = rvalues.find(k);
    return it == rvalues.end() ? nullptr : &it->second;
  };
  auto unc = [&](std::int64_t k) {
    auto it = uncertainty.find(k);
    return it == uncertainty.end() ? 0.0 : it->second;
  };
  PatternReport rep;
  const double* r1 = value(1);
  const double* r2 = value(2);
  const double* r5 = value(5);

  for (const auto& [k, v] : rvalues) {
    if (k < 1) continue;
    PatternCheck c;
    c.k = k;
    c.value = v;
    if (k % 2 == 1 && has_exact_prime_3mod4(k)) {
      c.rule = "odd k with p||k, p = 3 mod 4: r(k) = 0";
      c.distance = std::abs(v);
      c.allowance = tol + unc(k);
    } else {
      double base = 0, ubase = 0;
      if (k % 4 == 2 && r2) {
        c.rule = "k = 2 mod 4: r(k) in r(2) Z";
        base = *r2;
        ubase = unc(2);
      } else if (k % 8 == 1 && r1) {
        c.rule = "k = 1 mod 8: r(k) in r(1) Z";
        base = *r1;
        ubase = unc(1);
      } else if (k % 8 == 5 && r5) {
        c.rule = "k = 5 mod 8: r(k) in (r(5)/2) Z";
        base = *r5 / 2;
        ubase = unc(5) / 2;
      } else {
        continue;
      }
      if (base == 0.0) continue;
      c.base = base;
      c.ratio = v / base;
      c.nearest = std::lround(c.ratio);
      c.distance = std::abs(c.ratio - static_cast<double>(c.nearest));
      c.allowance = tol + (unc(k) + std::abs(c.ratio) * ubase) / std::abs(base);
    }
    c.violated = c.distance > c.allowance;
    rep.checks.push_back(c);
    if (c.violated) rep.violations.push_back(c);
  }
  if (r1 && r5) {
    rep.r1 = *r1;
    rep.r5_half = *r5 / 2;
    rep.r1_matches_half_r5 = std::abs(*r1 - *r5 / 2) <= tol * std::max(std::abs(*r1), 1e-300) + unc(1) + unc(5) / 2;
  }
  return rep;
}

std::string to_json(const BasisSolve& solve, const PatternReport* patterns) {
  nlohmann::ordered_json j;
  j["pivots"] = solve.pivots;
  j["coefficients"] = solve.coefficients;
  j["residual_max"] = solve.residual_max;
  j["residual_index"] = solve.residual_index;
  j["condition_number"] = solve.condition_number;
  auto arr = nlohmann::ordered_json::array();
  if (patterns) {
    for (const auto& c : patterns->violations) {
      arr.push_back({{"k", c.k},
                     {"rule", c.rule},
                     {"value", c.value},
                     {"ratio", c.ratio},
                     {"nearest", c.nearest},
                     {"distance", c.distance},
                     {"allowance", c.allowance}});
    }
  }
  j["pattern_violations"] = arr;
  if (patterns) {
    j["r1_vs_half_r5"] = {{"r1", patterns->r1},
                          {"half_r5", patterns->r5_half},
                          {"match", patterns->r1_matches_half_r5}};
  }
  return j.dump(2);
}

}  // namespace hproj
