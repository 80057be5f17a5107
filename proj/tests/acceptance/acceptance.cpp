// Acceptance run: one PASS/FAIL line per criterion, diagnostics indented below.
// Exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "hproj/hproj.hpp"
#include "support/pell_oracle.hpp"

using namespace hproj;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct TableRow {
  std::int64_t k;
  double numerical, expected, abs_error;
};

std::vector<TableRow> load_table() {
  std::ifstream in(std::string(HPROJ_TEST_DATA) + "/projection_table.csv");
  if (!in) throw std::runtime_error("missing projection_table.csv");
  std::vector<TableRow> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    TableRow r{};
    char c;
    std::istringstream ss(line);
    ss >> r.k >> c >> r.numerical >> c >> r.expected >> c >> r.abs_error;
    rows.push_back(r);
  }
  return rows;
}

IntSeries load_golden(const std::string& name) {
  std::ifstream in(std::string(HPROJ_TEST_DATA) + "/" + name);
  if (!in) throw std::runtime_error("missing " + name);
  return read_series_csv(in);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 6) {
  std::ostringstream s;
  s << std::setprecision(prec) << v;
  return s.str();
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

int failures = 0;

void report(int id, bool ok, const std::string& name, const std::string& summary) {
  std::cout << "CRITERION " << id << ' ' << (ok ? "PASS" : "FAIL") << ' ' << name << ": " << summary << std::endl;
  if (!ok) ++failures;
}

void note(const std::string& s) { std::cout << "    " << s << std::endl; }

const DirichletCharacter chi4 = DirichletCharacter::kronecker(-4);

// r-values shared by criteria 1, 2 and 7
std::map<std::int64_t, RChiBreakdown> rvals;

void criterion1(const std::vector<TableRow>& table) {
  ProjectionConfig cfg;  // M = 10^4, pairing, log 4 pi h, corrected prefactor
  std::vector<std::int64_t> ks;
  for (const auto& r : table) ks.push_back(r.k);
  auto t0 = std::chrono::steady_clock::now();
  auto rows = r_chi_batch(ks, chi4, cfg, 1);
  double secs = seconds_since(t0);
  for (const auto& r : rows) rvals[r.h] = r;

  double worst_num = 0, worst_exp_excess = -1e300;
  std::int64_t worst_num_k = 0, worst_exp_k = 0;
  std::vector<std::string> bad;
  for (const auto& t : table) {
    double v = rvals[t.k].total;
    double dn = std::fabs(v - t.numerical);
    double excess = std::fabs(v - t.expected) - (t.abs_error + 2e-3);
    if (dn > worst_num) worst_num = dn, worst_num_k = t.k;
    if (excess > worst_exp_excess) worst_exp_excess = excess, worst_exp_k = t.k;
    if (dn > 2e-3 || excess > 0)
      bad.push_back("k=" + std::to_string(t.k) + " r=" + fmt(v, 8) + " numerical=" + fmt(t.numerical) +
                    " expected=" + fmt(t.expected) + " unc=" + fmt(rvals[t.k].uncertainty, 2));
  }
  bool ok = bad.empty() && secs <= 300;
  report(1, ok, "table reproduction",
         std::to_string(table.size() - bad.size()) + "/" + std::to_string(table.size()) +
             " rows within tolerance; max |r - numerical| = " + fmt(worst_num, 3) + " at k=" +
             std::to_string(worst_num_k) + "; max excess over expected band = " + fmt(worst_exp_excess, 3) +
             " at k=" + std::to_string(worst_exp_k) + "; " + fmt(secs, 4) + " s single-threaded");
  for (const auto& b : bad) note("out of tolerance: " + b);

  // diagnostics: plain truncation and the printed sqrt(pi) prefactor
  ProjectionConfig plain = cfg;
  plain.acceleration = Acceleration::none;
  auto prow = r_chi_batch(ks, chi4, plain, std::max(1u, std::thread::hardware_concurrency()));
  std::size_t plain_ok = 0;
  std::vector<std::string> plain_bad;
  for (std::size_t i = 0; i < table.size(); ++i) {
    double v = prow[i].total;
    bool good = std::fabs(v - table[i].numerical) <= 2e-3 &&
                std::fabs(v - table[i].expected) <= table[i].abs_error + 2e-3;
    if (good) ++plain_ok;
    else plain_bad.push_back(std::to_string(table[i].k) + " (" + fmt(v, 6) + ")");
  }
  std::string list;
  for (const auto& s : plain_bad) list += (list.empty() ? "" : ", ") + s;
  note("diagnostic, plain truncation (no pairing): " + std::to_string(plain_ok) + "/" + std::to_string(table.size()) +
       " rows within tolerance" + (list.empty() ? "" : "; outside: " + list));
  ProjectionConfig printed = cfg;
  printed.harmonic = HarmonicNormalization::printed;
  auto r1p = r_chi(1, chi4, printed).total;
  note("diagnostic, sqrt(pi) h prefactor: r(1) = " + fmt(r1p, 6) + " vs numerical 0.0289");
  ProjectionConfig sqrt_log = cfg;
  sqrt_log.constant_log_variant = LogVariant::log_sqrt_h;
  note("diagnostic, log(4 pi sqrt h) variant: r(9) = " + fmt(r_chi(9, chi4, sqrt_log).total, 6) +
       " vs numerical -0.0869; default variant gives " + fmt(rvals[9].total, 6));
}

void fill_remaining_rvalues() {
  ProjectionConfig cfg;
  std::vector<std::int64_t> ks;
  for (std::int64_t k = 1; k <= 98; ++k)
    if (!rvals.count(k)) ks.push_back(k);
  auto rows = r_chi_batch(ks, chi4, cfg, std::max(1u, std::thread::hardware_concurrency()));
  for (const auto& r : rows) rvals[r.h] = r;
}

void criterion2(const std::vector<TableRow>& table) {
  auto b = basis_s2_64(100);
  std::vector<IntSeries> B{b.f1, b.f2, b.f3};
  std::map<std::int64_t, double> target;
  for (const auto& t : table) target[t.k] = rvals[t.k].total;
  auto s = solve_on_basis(target, B, {1, 2, 5});
  const auto& x = s.coefficients;
  bool ok = std::fabs(x[0] - 0.0286) <= 2e-3 && std::fabs(x[2] - 0.0579) <= 2e-3 && std::fabs(x[1]) <= 2e-3;
  report(2, ok, "decomposition", "x1 = " + fmt(x[0], 7) + ", x2 = " + fmt(x[1], 3) + ", x3 = " + fmt(x[2], 7) +
                                     " (M = 10^4, pivots 1,2,5)");
  note("residual_max over the table indices = " + fmt(s.residual_max, 4) + " at k=" +
       std::to_string(s.residual_index) + "; condition number " + fmt(s.condition_number, 4));
  const char* ext = std::getenv("HPROJ_ACCEPTANCE_EXTENDED");
  if (ext && std::string(ext) == "1") {
    ProjectionConfig big;
    big.M = 50000;
    std::vector<std::int64_t> ks{1, 2, 5};
    auto rows = r_chi_batch(ks, chi4, big, std::max(1u, std::thread::hardware_concurrency()));
    std::map<std::int64_t, double> t{{1, rows[0].total}, {2, rows[1].total}, {5, rows[2].total}};
    auto e = solve_on_basis(t, B, {1, 2, 5});
    bool eok = std::fabs(e.coefficients[0] - 0.0286) <= 5e-4 && std::fabs(e.coefficients[2] - 0.0579) <= 5e-4 &&
               std::fabs(e.coefficients[1]) <= 5e-4;
    note(std::string("extended M = 5*10^4: ") + (eok ? "PASS" : "FAIL") + " x = (" + fmt(e.coefficients[0], 7) +
         ", " + fmt(e.coefficients[1], 3) + ", " + fmt(e.coefficients[2], 7) + ")");
  } else {
    note("extended M = 5*10^4 check not run (set HPROJ_ACCEPTANCE_EXTENDED=1)");
  }
}

void criterion3() {
  ProjectionConfig cfg;
  int checked = 0;
  std::vector<std::int64_t> bad;
  for (std::int64_t k = 1; k <= 200; ++k) {
    if (k % 4 != 0 && k % 4 != 3) continue;
    auto r = rvals.count(k) ? rvals[k] : r_chi(k, chi4, cfg);
    ++checked;
    if (r.constant != 0.0 || r.harmonic != 0.0 || r.holomorphic != 0.0 || r.sesquiharmonic != 0.0 || r.total != 0.0)
      bad.push_back(k);
  }
  report(3, bad.empty(), "exact vanishing",
         std::to_string(checked - static_cast<int>(bad.size())) + "/" + std::to_string(checked) +
             " indices k = 0,3 mod 4 up to 200 have all four parts exactly zero");
}

void criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> bad;
  for (std::uint64_t n = 0; n <= 10000; ++n)
    if (hurwitz_fast(n) != hurwitz_direct(n)) bad.push_back(n);
  std::mt19937_64 rng(20261016);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t n = rng() % 1'000'000 + 1;
    if (hurwitz_fast(n) != hurwitz_direct(n)) bad.push_back(n);
  }
  double secs = seconds_since(t0);
  report(4, bad.empty() && secs <= 60, "class-number oracle equivalence",
         std::to_string(bad.size()) + " mismatches over n <= 10^4 and 100 random n <= 10^6; " + fmt(secs, 3) + " s");
}

void criterion5() {
  bool ok = true;
  std::string detail;
  auto check = [&](const std::string& name, const IntSeries& got, const IntSeries& want) {
    bool same = got == want;
    ok = ok && same;
    detail += name + (same ? " ok" : " MISMATCH") + "; ";
  };
  check("f1 through q^17", eta_quotient(EtaQuotientSpec::parse("8:8,4:-2,16:-2"), 17), load_golden("f1_golden.csv"));
  check("f2 through q^25", eta_quotient(EtaQuotientSpec::parse("4:2,8:2"), 25), load_golden("f2_golden.csv"));
  check("f3 through q^50", basis_s2_64(50).f3, load_golden("f3_golden.csv"));
  // naive product of (1 - q^n)^24
  const std::size_t N = 300;
  std::vector<mpz_class> c(N, 0);
  c[0] = 1;
  for (std::size_t n = 1; n < N; ++n)
    for (int k = 0; k < 24; ++k)
      for (std::size_t i = N - 1; i >= n; --i) c[i] -= c[i - n];
  auto delta = eta_quotient(EtaQuotientSpec({{1, 24}}), N);
  bool dok = delta[0] == 0;
  for (std::size_t n = 1; n <= N; ++n) dok = dok && delta[n] == c[n - 1];
  ok = ok && dok;
  detail += std::string("eta^24 through q^300 ") + (dok ? "ok" : "MISMATCH");
  report(5, ok, "eta golden files", detail);
}

void criterion6() {
  struct Item {
    std::string name;
    double quad, closed;
  };
  std::vector<Item> items;
  for (double a : {1.0, 2.5}) {
    const double c = 4 * kPi * a;
    items.push_back({"log moment a=" + fmt(a),
                     integrate_0_inf([c](double y) { return std::exp(-c * y) * std::log(y); }, 1e-13).value,
                     -(kEulerGamma + std::log(c)) / c});
    items.push_back({"sqrt moment a=" + fmt(a),
                     integrate_0_inf([c](double y) { return std::sqrt(y) * std::exp(-c * y); }, 1e-13).value,
                     1 / (16 * kPi * std::pow(a, 1.5))});
    items.push_back(
        {"sqrt log moment a=" + fmt(a),
         integrate_0_inf([c](double y) { return std::sqrt(y) * std::log(y) * std::exp(-c * y); }, 1e-13).value,
         -(-2 + kEulerGamma + std::log(16 * kPi * a)) / (16 * kPi * std::pow(a, 1.5))});
  }
  for (auto [n, m] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}}) {
    const double N = n + m * m;
    double q = integrate_0_inf(
                   [&](double y) { return alpha_numeric(4 * n * y, 1e-13).value * std::exp(-4 * kPi * N * y); }, 1e-11)
                   .value;
    items.push_back({"alpha kernel (n,m)=(" + fmt(n) + "," + fmt(m) + ")", 4 * kPi * N * q, alpha_nm(n, m)});
  }
  {
    const double s = 0.5, n = 1, N = 3;
    double q = integrate_0_inf(
                   [&](double y) {
                     return std::pow(y, s) * upper_gamma_half(4 * kPi * n * y) * std::exp(-4 * kPi * N * y);
                   },
                   1e-13)
                   .value;
    items.push_back({"incomplete gamma moment s=1/2", q,
                     std::tgamma(1.5 + s) * hyp2f1(1 + s, 1.5 + s, 2 + s, -N / n) /
                         ((1 + s) * std::pow(4 * kPi * n, 1 + s))});
  }
  for (auto [n, m] : {std::pair{1.0, 2.0}, {3.0, 2.0}, {7.0, 4.0}}) {
    const double N = m * m - n;
    double q = integrate_0_inf(
                   [&](double y) { return upper_gamma_half(4 * kPi * n * y) * std::exp(-4 * kPi * N * y); }, 1e-13)
                   .value;
    items.push_back({"harmonic kernel (n,m)=(" + fmt(n) + "," + fmt(m) + ")", q,
                     1 / (4 * std::sqrt(kPi) * (m + std::sqrt(n)) * m)});
  }
  double worst = 0;
  std::string worst_name;
  for (const auto& it : items) {
    double e = rel(it.quad, it.closed);
    if (e > worst) worst = e, worst_name = it.name;
  }
  report(6, worst <= 1e-8, "integral identity validation",
         std::to_string(items.size()) + " quadratures; worst relative error " + fmt(worst, 3) + " (" + worst_name + ")");
}

void criterion7() {
  auto b = basis_s2_64(100);
  double h1 = verify_hecke(b.f2, 5, -2), h2 = verify_hecke(b.f3, 5, -2), h3 = verify_hecke(b.f1, 3, 0);
  auto tw = basis_s2_64(1000);
  int twist_bad = 0;
  for (std::size_t n = 1; n <= 1000; n += 2)
    if (tw.f1[n] != kronecker(8, static_cast<std::int64_t>(n)) * tw.f2[n]) ++twist_bad;
  std::map<std::int64_t, double> vals, unc;
  for (const auto& [k, r] : rvals)
    if (k <= 98) vals[k] = r.total, unc[k] = r.uncertainty;
  auto rep = arithmetic_patterns(vals, 1e-2, unc);
  bool ok = h1 == 0 && h2 == 0 && h3 == 0 && twist_bad == 0 && rep.violations.empty();
  report(7, ok, "Hecke, twist and pattern checks",
         "T5 f2 dev " + fmt(h1) + ", T5 f3 dev " + fmt(h2) + ", T3 f1 dev " + fmt(h3) + "; twist mismatches " +
             std::to_string(twist_bad) + "; " + std::to_string(rep.checks.size()) + " pattern checks, " +
             std::to_string(rep.violations.size()) + " violations");
  for (const auto& v : rep.violations)
    note("violation k=" + std::to_string(v.k) + " [" + v.rule + "] value=" + fmt(v.value, 7) +
         " ratio=" + fmt(v.ratio, 7) + " distance=" + fmt(v.distance, 4) + " allowance=" + fmt(v.allowance, 4));
  note("observation: r(1) = " + fmt(rep.r1, 7) + ", r(5)/2 = " + fmt(rep.r5_half, 7) +
       (rep.r1_matches_half_r5 ? " (agree within tolerance)" : " (differ beyond tolerance)"));
}

void criterion8() {
  int checked = 0, bad = 0, nonminimal = 0, certified = 0;
  for (std::int64_t d = 5; d <= 10000; ++d) {
    if (!is_discriminant(d) || sqrt_if_square(static_cast<std::uint64_t>(d))) continue;
    ++checked;
    auto p = pell_fundamental(d);
    if (p.t * p.t - d * p.u * p.u != 4 || p.t <= 0 || p.u <= 0) ++bad;
    if (d <= 500) {
      // exhaustive below 2*10^7, Lucas-power certificate for the rest
      bool small = p.u < 20'000'000;
      if (small) {
        for (std::int64_t u = 1; u < p.u.get_si(); ++u)
          if (sqrt_if_square(static_cast<std::uint64_t>(d * u * u + 4))) {
            ++nonminimal;
            break;
          }
      } else {
        ++certified;
      }
      if (!hproj::testing::pell_is_minimal(d, p.t)) ++nonminimal;
    }
  }
  double worst = 0;
  for (std::int64_t d : {5, 8, 13}) {
    std::int64_t u = 1, t = 0;
    for (;; ++u) {
      auto r = sqrt_if_square(static_cast<std::uint64_t>(d * u * u + 4));
      if (r) {
        t = static_cast<std::int64_t>(*r);
        break;
      }
    }
    double brute = 2 * std::log((t + u * std::sqrt(static_cast<double>(d))) / 2);
    worst = std::max(worst, std::fabs(regulator(d) - brute));
  }
  report(8, bad == 0 && nonminimal == 0 && worst <= 1e-10, "Pell and regulator",
         std::to_string(checked) + " non-square discriminants, " + std::to_string(bad) + " bad, " +
             std::to_string(nonminimal) + " non-minimal (d <= 500, " + std::to_string(certified) +
             " beyond exhaustive range by power certificate); max regulator error " + fmt(worst, 3));
}

void criterion9() {
  auto t0 = std::chrono::steady_clock::now();
  auto series = partial_sums(14, chi4, 10000, hurwitz_cache(), 1);
  double secs = seconds_since(t0);
  auto fit = fit_exponent(series, 0, GrowthScale::square);
  auto lin = fit_exponent(series, 0, GrowthScale::linear);
  // |S| / X^{3/2}, X = m^2: maximum over successive decades
  auto decade_max = [&](std::int64_t lo, std::int64_t hi) {
    double mx = 0;
    for (const auto& r : series.rows)
      if (r.m >= lo && r.m <= hi) mx = std::max(mx, std::fabs(r.S.to_double()) / std::pow(growth_x(r.m, GrowthScale::square), 1.5));
    return mx;
  };
  double d1 = decade_max(100, 1000), d2 = decade_max(1000, 10000);
  double resid = symmetrized_check(14, chi4, 2.0, 10000);
  bool ok = fit.c >= 1.0 && fit.c <= 1.45 && d2 < d1 && secs <= 600 && resid <= 1e-12;
  report(9, ok, "shifted-convolution growth",
         "c = " + fmt(fit.c, 4) + " +- " + fmt(fit.stderr_c, 2) + " (X = m^2, " + std::to_string(fit.points) +
             " points); max |S|/X^(3/2) " + fmt(d1, 3) + " on m in [100,1000] -> " + fmt(d2, 3) +
             " on [1000,10^4]; symmetrized residual " + fmt(resid, 3) + "; " + fmt(secs, 3) + " s");
  note("diagnostic, exponent against X = m: c = " + fmt(lin.c, 4));
}

void criterion10() {
  ProjectionConfig cfg;
  auto F = z_coefficients(20, cfg.M * cfg.M);
  auto g = CuspCoefficients::from_character(chi4, cfg.M);
  auto rows = project_general_breakdown(F, g, 20, cfg);
  double worst = 0;
  for (std::int64_t h = 1; h <= 20; ++h) {
    auto r = rvals.count(h) ? rvals[h] : r_chi(h, chi4, cfg);
    const auto& b = rows[static_cast<std::size_t>(h - 1)];
    for (double d : {b.constant - r.constant, b.harmonic - r.harmonic, b.holomorphic - r.holomorphic,
                     b.sesquiharmonic - r.sesquiharmonic, b.total - r.total})
      worst = std::max(worst, std::fabs(d));
  }
  double worst_h = 0;
  for (std::int64_t h : {1, 2, 5, 14, 29, 98}) {
    auto a = harmonic_term(h, chi4, cfg);
    auto s = symmetrized_half_sum(h, chi4, cfg.M, cfg.acceleration);
    worst_h = std::max(worst_h, std::fabs(a.value - s.value));
  }
  report(10, worst <= 1e-12 && worst_h <= 1e-10, "cross-module consistency",
         "general projection vs r_chi max diff " + fmt(worst, 3) + " (h <= 20); harmonic vs s=1/2 form max diff " +
             fmt(worst_h, 3));
}

void run(const std::function<void()>& f, int id) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, false, "exception", e.what());
  }
}

}  // namespace

int main() {
  std::cout << "hproj acceptance run, library " << kVersion << std::endl;
  const auto table = load_table();
  run([&] { criterion1(table); }, 1);
  run(fill_remaining_rvalues, 0);
  run([&] { criterion2(table); }, 2);
  run(criterion3, 3);
  run(criterion4, 4);
  run(criterion5, 5);
  run(criterion6, 6);
  run(criterion7, 7);
  run(criterion8, 8);
  run(criterion9, 9);
  run(criterion10, 10);
  std::cout << failures << " criterion(s) failed" << std::endl;
  return failures == 0 ? 0 : 1;
}
