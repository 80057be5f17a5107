#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hproj/hproj.hpp"

namespace hproj::cli {

namespace {

struct Check {
  std::string name;
  std::function<bool()> run;
};

constexpr double kPi = 3.14159265358979323846;

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace

int selftest(std::ostream& out) {
  const auto chi = DirichletCharacter::kronecker(-4);
  std::vector<Check> checks{
      {"hurwitz small values",
       [] {
         return hurwitz(3) == Rational(1, 3) && hurwitz(4) == Rational(1, 2) && hurwitz(12) == Rational(4, 3) &&
                hurwitz(23) == Rational(3) && hurwitz(0) == Rational(-1, 12);
       }},
      {"hurwitz direct equals fast",
       [] {
         for (std::uint64_t n = 1; n <= 2000; ++n)
           if (hurwitz_direct(n) != hurwitz_fast(n)) return false;
         return true;
       }},
      {"class numbers", [] { return class_number_fundamental(-23) == 3 && class_number_fundamental(-4) == 1; }},
      {"regulator of 5", [] { return close(regulator(5), 2.0 * std::log((3 + std::sqrt(5.0)) / 2), 1e-12); }},
      {"narrow class numbers", [] { return hplus(5) == 1 && hplus(8) == 1 && hplus(12) == 2; }},
      {"eta^24 leading coefficients",
       [] {
         auto d = eta_quotient(EtaQuotientSpec({{1, 24}}), 6);
         return d[1] == 1 && d[2] == -24 && d[3] == 252 && d[4] == -1472 && d[5] == 4830 && d[6] == -6048;
       }},
      {"Hecke relations of the basis",
       [] {
         auto b = basis_s2_64(60);
         return verify_hecke(b.f1, 3, 0) == 0.0 && verify_hecke(b.f2, 5, -2) == 0.0;
       }},
      {"erfc and incomplete gamma",
       [] { return close(erfc(1.0), 0.15729920705028513, 1e-15) && close(upper_gamma_half(1.0), 0.2788055852806619, 1e-14); }},
      {"digamma at 3/2",
       [] { return close(digamma_quadrature(1.5).value, 2.0 - kEulerGamma - 2.0 * std::log(2.0), 1e-11); }},
      {"log moment against quadrature",
       [] {
         const double a = 2.5, c = 4 * kPi * a;
         auto q = integrate_0_inf([c](double y) { return std::exp(-c * y) * std::log(y); }, 1e-12);
         return close(q.value, -(kEulerGamma + std::log(c)) / c, 1e-10);
       }},
      {"incomplete gamma moment against quadrature",
       [] {
         const double n = 2, m = 3;
         auto q = integrate_0_inf(
             [&](double y) { return upper_gamma_half(4 * kPi * n * y) * std::exp(-4 * kPi * (m * m - n) * y); }, 1e-12);
         return close(q.value, 1 / (4 * std::sqrt(kPi) * (m + std::sqrt(n)) * m), 1e-10);
       }},
      {"eta golden coefficients",
       [] {
         auto b = basis_s2_64(50);
         const std::vector<std::pair<std::size_t, long>> f1{{1, 1}, {5, 2}, {9, -3}, {13, -6}, {17, 2}};
         const std::vector<std::pair<std::size_t, long>> f2{{1, 1}, {5, -2}, {9, -3}, {13, 6}, {17, 2}, {25, -1}};
         for (auto [n, c] : f1)
           if (b.f1[n] != c) return false;
         for (auto [n, c] : f2)
           if (b.f2[n] != c || b.f3[2 * n] != c) return false;
         return true;
       }},
      {"table rows 1, 2, 5", [&] {
         ProjectionConfig cfg;
         const std::vector<std::pair<std::int64_t, double>> rows{{1, 0.0289}, {2, 0.058}, {5, 0.0577}};
         for (auto [k, v] : rows)
           if (!close(r_chi(k, chi, cfg).total, v, 2e-3)) return false;
         return true;
       }}};

  int failures = 0;
  for (const auto& c : checks) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      out << "  (" << e.what() << ")\n";
    }
    out << (ok ? "PASS " : "FAIL ") << c.name << '\n';
    if (!ok) ++failures;
  }
  out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << '\n';
  return failures;
}

}  // namespace hproj::cli
