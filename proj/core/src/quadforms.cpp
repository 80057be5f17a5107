#include "hproj/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "hproj/arith.hpp"
#include "hproj/errors.hpp"

namespace hproj {

namespace {

constexpr std::uint32_t kSpfLimit = 1u << 21;

const std::vector<std::uint32_t>& spf_table() {
  static const std::vector<std::uint32_t> spf = [] {
    std::vector<std::uint32_t> t(kSpfLimit + 1, 0);
    for (std::uint32_t i = 2; i <= kSpfLimit; ++i) {
      if (t[i]) continue;
      for (std::uint32_t j = i; j <= kSpfLimit; j += i)
        if (!t[j]) t[j] = i;
    }
    return t;
  }();
  return spf;
}

// kronecker(D, n) for 0 <= n <= N via multiplicativity; prime values computed once.
std::vector<signed char> character_table(std::int64_t D, std::size_t N) {
  std::vector<signed char> chi(N + 1, 0);
  if (N >= 1) chi[1] = 1;
  if (N > kSpfLimit) {
    for (std::size_t n = 2; n <= N; ++n) chi[n] = static_cast<signed char>(kronecker(D, static_cast<std::int64_t>(n)));
    return chi;
  }
  const auto& spf = spf_table();
  for (std::size_t n = 2; n <= N; ++n) {
    std::uint32_t p = spf[n];
    if (p == n) {
      chi[n] = static_cast<signed char>(kronecker(D, static_cast<std::int64_t>(n)));
    } else {
      chi[n] = static_cast<signed char>(chi[p] * chi[n / p]);
    }
  }
  return chi;
}

// Abramowitz-Stegun 7.1.26 without the exponential factor: erfc(x) ~ t*poly(t)*exp(-x^2),
// absolute error at most 1.5e-7 for x >= 0.
inline double erfc_as_prefactor(double x) {
  constexpr double p = 0.3275911;
  constexpr double a1 = 0.254829592, a2 = -0.284496736, a3 = 1.421413741, a4 = -1.453152027, a5 = 1.061405429;
  double t = 1.0 / (1.0 + p * x);
  return t * (a1 + t * (a2 + t * (a3 + t * (a4 + t * a5))));
}
constexpr double kErfcApproxError = 1.5e-7;

// Bound on sum_{n > N} e^{-pi n^2 / A} (1 + sqrt(A) / (pi n)).
double smoothed_tail(double A, std::size_t N) {
  double n1 = static_cast<double>(N + 1);
  double first = std::exp(-std::numbers::pi * n1 * n1 / A);
  double ratio = std::exp(-std::numbers::pi * (2.0 * n1 + 1.0) / A);
  return (1.0 + std::sqrt(A) / (std::numbers::pi * n1)) * first / (1.0 - ratio);
}

bool less_than_sqrt(std::int64_t x, std::int64_t d) { return x < 0 || static_cast<__int128>(x) * x < d; }

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) { return std::gcd(std::gcd(a, b), c); }

// Orbit count for square discriminants d = f^2 inside the box max(|a|,|b|,|c|) <= B.
std::int64_t square_orbit_components(std::int64_t d, std::int64_t f, std::int64_t B) {
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::vector<BQF> forms;
  auto key = [B](const BQF& q) {
    std::uint64_t w = static_cast<std::uint64_t>(2 * B + 1);
    return (static_cast<std::uint64_t>(q.a + B) * w + static_cast<std::uint64_t>(q.b + B)) * w +
           static_cast<std::uint64_t>(q.c + B);
  };
  for (std::int64_t a = -B; a <= B; ++a) {
    for (std::int64_t b = -B; b <= B; ++b) {
      if (floor_mod(b - f, 2) != 0) continue;
      if (a == 0) {
        if (b * b != d) continue;
        for (std::int64_t c = -B; c <= B; ++c) {
          BQF q{0, b, c};
          if (q.is_primitive()) {
            index.emplace(key(q), forms.size());
            forms.push_back(q);
          }
        }
        continue;
      }
      std::int64_t num = b * b - d;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (c < -B || c > B) continue;
      BQF q{a, b, c};
      if (!q.is_primitive()) continue;
      index.emplace(key(q), forms.size());
      forms.push_back(q);
    }
  }
  std::vector<std::size_t> parent(forms.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::int64_t components = static_cast<std::int64_t>(forms.size());
  auto unite = [&](std::size_t x, const BQF& img) {
    if (std::max({std::abs(img.a), std::abs(img.b), std::abs(img.c)}) > B) return;
    auto it = index.find(key(img));
    if (it == index.end()) return;
    auto rx = find(x), ry = find(it->second);
    if (rx != ry) {
      parent[rx] = ry;
      --components;
    }
  };
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const BQF& q = forms[i];
    unite(i, BQF{q.c, -q.b, q.a});                     // S
    unite(i, BQF{q.a, q.b + 2 * q.a, q.a + q.b + q.c});  // T
  }
  return components;
}

}  // namespace

bool BQF::is_primitive() const { return gcd3(a, b, c) == 1; }

Rational hurwitz_direct(std::uint64_t n) {
  if (n == 0) return Rational(-1, 12);
  if (n > kHurwitzDirectLimit) throw std::domain_error("hurwitz_direct: n exceeds 1e8, use hurwitz_fast");
  if (n % 4 == 1 || n % 4 == 2) return Rational(0);
  const auto N = static_cast<std::int64_t>(n);
  std::int64_t twelfths = 0;
  for (std::int64_t a = 1; 3 * a * a <= N; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (floor_mod(b - N, 2) != 0) continue;
      std::int64_t num = b * b + N;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (a == b && b == c) {
        twelfths += 4;
      } else if (b == 0 && a == c) {
        twelfths += 6;
      } else {
        twelfths += 12;
      }
    }
  }
  return Rational(twelfths, 12);
}

int unit_count(std::int64_t d) {
  if (d >= 0 || !is_discriminant(d)) throw std::invalid_argument("unit_count: D must be a negative discriminant");
  if (d == -3) return 6;
  if (d == -4) return 4;
  return 2;
}

std::int64_t class_number_fundamental(std::int64_t d) {
  if (d >= 0 || !is_fundamental_discriminant(d)) {
    throw std::invalid_argument("class_number_fundamental: D must be a negative fundamental discriminant");
  }
  const double A = -static_cast<double>(d);
  const double w = unit_count(d);
  // h = (w/2) sum chi(n) [erfc(n sqrt(pi/A)) + sqrt(A)/(pi n) exp(-pi n^2/A)]
  std::size_t N = static_cast<std::size_t>(std::ceil(std::sqrt(A))) + 1;
  while (smoothed_tail(A, N) * w / 2 > 0.02) N += N / 4 + 1;
  const bool approx = static_cast<double>(N) * kErfcApproxError < 0.05;

  auto chi = character_table(d, N);
  const double sqrtA = std::sqrt(A);
  const double c = std::sqrt(std::numbers::pi / A);
  const double q = std::exp(-2.0 * std::numbers::pi / A);
  double E = 1.0, R = std::exp(-std::numbers::pi / A);
  double sum = 0.0, comp = 0.0, mag = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    if ((n & 255) == 0) {
      double nd = static_cast<double>(n);
      E = std::exp(-std::numbers::pi * (nd - 1) * (nd - 1) / A);
      R = std::exp(-std::numbers::pi * (2 * nd - 1) / A);
    }
    E *= R;
    R *= q;
    if (chi[n] == 0) continue;
    double x = c * static_cast<double>(n);
    double erfc_part = approx ? erfc_as_prefactor(x) * E : std::erfc(x);
    double term = erfc_part + sqrtA / (std::numbers::pi * static_cast<double>(n)) * E;
    if (chi[n] < 0) term = -term;
    double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    mag += std::abs(term);
  }
  double estimate = (w / 2) * (sum + comp);
  double bound = (w / 2) * (smoothed_tail(A, N) + (approx ? static_cast<double>(N) * kErfcApproxError : 0.0) +
                            1e-13 * mag + 1e-15 * static_cast<double>(N));
  double h = std::round(estimate);
  if (h < 1 || std::abs(estimate - h) + bound >= 0.5) {
    throw convergence_error("class_number_fundamental: error bound does not isolate an integer for D=" +
                            std::to_string(d));
  }
  return static_cast<std::int64_t>(h);
}

Rational hurwitz_fast(std::uint64_t n) {
  if (n == 0) return Rational(-1, 12);
  if (n % 4 == 1 || n % 4 == 2) return Rational(0);
  if (n > static_cast<std::uint64_t>(INT64_MAX)) throw std::overflow_error("hurwitz_fast: n too large");
  auto fd = fundamental_decomposition(-static_cast<std::int64_t>(n));
  std::int64_t h0 = class_number_fundamental(fd.fundamental);
  int w0 = unit_count(fd.fundamental);
  auto ff = factorize(static_cast<u128>(fd.conductor));
  __int128 s = 0;
  for (std::uint64_t dv : divisors(ff)) {
    auto fdv = factorize(dv);
    int mu = moebius(fdv);
    if (mu == 0) continue;
    int k = kronecker(fd.fundamental, static_cast<std::int64_t>(dv));
    if (k == 0) continue;
    s += static_cast<__int128>(mu * k) * static_cast<__int128>(sigma1(factorize(static_cast<u128>(fd.conductor) / dv)));
  }
  return Rational(1, w0) * Rational(2 * h0) * Rational(static_cast<std::int64_t>(s));
}

Rational hurwitz(std::uint64_t n) { return n < kHurwitzCrossover ? hurwitz_direct(n) : hurwitz_fast(n); }

PellSolution pell_fundamental(std::int64_t d) {
  if (d <= 0 || !is_discriminant(d)) throw std::invalid_argument("pell_fundamental: d must be a positive discriminant");
  const std::int64_t s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(d)));
  if (s * s == d) throw std::invalid_argument("pell_fundamental: d must not be a square");
  const std::int64_t b0 = d & 1;
  // Continued fraction of (P + sqrt d)/Q starting from omega = (b0 + sqrt d)/2.
  mpz_class P = b0, Q = 2;
  mpz_class A1 = 1, A2 = 0, B1 = 0, B2 = 1;
  const mpz_class D = d, S = s;
  const mpz_class b0z = b0;
  for (long step = 0;; ++step) {
    if (Q <= 0) throw std::logic_error("pell_fundamental: non-positive denominator");
    mpz_class a = (P + S) / Q;  // floor, both positive
    mpz_class A = a * A1 + A2;
    mpz_class B = a * B1 + B2;
    A2 = A1;
    A1 = A;
    B2 = B1;
    B1 = B;
    // Norm of A - B*omega', omega' the conjugate.
    mpz_class norm = A * A - A * B * b0z + B * B * ((b0z * b0z - D) / 4);
    if (norm == 1 || norm == -1) {
      mpz_class t = 2 * A - B * b0z, u = B;
      if (norm == -1) {
        mpz_class t2 = (t * t + D * u * u) / 2;
        u = t * u;
        t = t2;
      }
      if (t * t - D * u * u != 4) throw std::logic_error("pell_fundamental: verification failed");
      return {t, u};
    }
    if (mpz_sizeinbase(A.get_mpz_t(), 2) > (1u << 20)) throw std::overflow_error("pell_fundamental: unit too large");
    mpz_class Pn = a * Q - P;
    mpz_class Qn = (D - Pn * Pn) / Q;
    P = Pn;
    Q = Qn;
  }
}

double regulator(std::int64_t d) {
  if (d <= 0 || !is_discriminant(d)) throw std::invalid_argument("regulator: d must be a positive discriminant");
  if (sqrt_if_square(static_cast<std::uint64_t>(d))) return std::log(static_cast<double>(d));
  auto sol = pell_fundamental(d);
  const mp_bitcnt_t prec = 128 + mpz_sizeinbase(sol.t.get_mpz_t(), 2);
  mpf_class root(d, prec), x(0, prec);
  root = sqrt(root);
  x = (mpf_class(sol.t, prec) + mpf_class(sol.u, prec) * root) / 2;
  long exp2 = 0;
  double mant = mpf_get_d_2exp(&exp2, x.get_mpf_t());
  return 2.0 * (std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2);
}

bool is_reduced_indefinite(const BQF& f, std::int64_t d) {
  if (f.b <= 0 || !less_than_sqrt(f.b, d)) return false;
  std::int64_t two_a = 2 * std::abs(f.a);
  // sqrt d - b < 2|a|  and  2|a| < sqrt d + b
  bool lower = static_cast<__int128>(two_a + f.b) * (two_a + f.b) > d;
  bool upper = less_than_sqrt(two_a - f.b, d);
  return lower && upper;
}

BQF rho(const BQF& f, std::int64_t d) {
  if (f.c == 0) throw std::invalid_argument("rho: c must be nonzero");
  const std::int64_t s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(d)));
  const std::int64_t m = 2 * std::abs(f.c);
  std::int64_t b = s - floor_mod(s + f.b, m);
  std::int64_t num = b * b - d;
  return BQF{f.c, b, num / (4 * f.c)};
}

std::vector<BQF> reduced_indefinite_forms(std::int64_t d) {
  if (d <= 0 || !is_discriminant(d) || sqrt_if_square(static_cast<std::uint64_t>(d))) {
    throw std::invalid_argument("reduced_indefinite_forms: d must be a positive non-square discriminant");
  }
  std::vector<BQF> out;
  for (std::int64_t b = 1; less_than_sqrt(b, d); ++b) {
    if (floor_mod(b - d, 2) != 0) continue;
    std::int64_t ac = (d - b * b) / 4;  // a * (-c) = ac
    for (std::int64_t a = 1; a * a <= ac; ++a) {
      if (ac % a != 0) continue;
      for (std::int64_t av : {a, ac / a}) {
        for (std::int64_t sign : {1, -1}) {
          BQF q{sign * av, b, -sign * (ac / av)};
          if (q.is_primitive() && is_reduced_indefinite(q, d)) out.push_back(q);
        }
        if (a * a == ac) break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<BQF>> reduced_cycles(std::int64_t d) {
  auto forms = reduced_indefinite_forms(d);
  std::set<BQF> seen;
  std::vector<std::vector<BQF>> cycles;
  for (const auto& f : forms) {
    if (seen.count(f)) continue;
    std::vector<BQF> cyc;
    BQF g = f;
    do {
      cyc.push_back(g);
      seen.insert(g);
      g = rho(g, d);
      if (cyc.size() > forms.size()) throw std::logic_error("reduced_cycles: rho left the reduced set");
    } while (!(g == f));
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

std::int64_t hplus(std::int64_t d) {
  if (d <= 0 || !is_discriminant(d)) throw std::invalid_argument("hplus: d must be a positive discriminant");
  auto root = sqrt_if_square(static_cast<std::uint64_t>(d));
  if (!root) return static_cast<std::int64_t>(reduced_cycles(d).size());
  const auto f = static_cast<std::int64_t>(*root);
  std::int64_t B = 2 * f + 2;
  std::int64_t prev = square_orbit_components(d, f, B);
  int stable = 0;
  for (int doubling = 0; doubling < 6; ++doubling) {
    B *= 2;
    std::int64_t cur = square_orbit_components(d, f, B);
    stable = cur == prev ? stable + 1 : 0;
    prev = cur;
    if (stable == 2) return cur;
  }
  throw convergence_error("hplus: square-discriminant orbit count did not stabilize for d=" + std::to_string(d));
}

double hstar(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("hstar: d must be >= 1");
  double s = 0.0;
  for (std::uint64_t l : square_divisors(static_cast<std::uint64_t>(d))) {
    auto q = d / static_cast<std::int64_t>(l * l);
    if (!is_discriminant(q) || q == 1) continue;  // R(1) = 0
    s += regulator(q) * static_cast<double>(hplus(q));
  }
  return s / (2.0 * std::numbers::pi);
}

}  // namespace hproj
