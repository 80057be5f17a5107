#include "hproj/arith.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hproj {

namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

int kronecker_two(i128 a) {
  // (a/2): 0 for even a, 1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
  int r = static_cast<int>(((a % 8) + 8) % 8);
  if (r % 2 == 0) return 0;
  return (r == 1 || r == 7) ? 1 : -1;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for all 64-bit inputs with these bases.
bool miller_rabin64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

mpz_class to_mpz(u128 v) {
  mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return (hi << 64) + lo;
}

u128 from_mpz(const mpz_class& z) {
  mpz_class hi = z >> 64;
  mpz_class lo = z - (hi << 64);
  return (static_cast<u128>(hi.get_ui()) << 64) | static_cast<u128>(lo.get_ui());
}

std::uint64_t pollard_brent64(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t block = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += block) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

mpz_class pollard_brent_big(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    auto f = [&](const mpz_class& x) { return mpz_class((x * x + c) % n); };
    mpz_class y = 2, x = 2, g = 1, q = 1, ys = 2;
    const unsigned long block = 128;
    for (unsigned long r = 1; g == 1; r <<= 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      for (unsigned long k = 0; k < r && g == 1; k += block) {
        ys = y;
        for (unsigned long i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          mpz_class diff = abs(x - y);
          q = (q * diff) % n;
        }
        g = gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(mpz_class(abs(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

u128 find_factor(u128 n) {
  if (n >> 64 == 0) return pollard_brent64(static_cast<std::uint64_t>(n));
  return from_mpz(pollard_brent_big(to_mpz(n)));
}

void split(u128 n, std::map<u128, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u128 d = find_factor(n);
  if (d <= 1 || d >= n || n % d != 0) throw std::logic_error("factorize: invalid split");
  split(d, out);
  split(n / d, out);
}

}  // namespace

int kronecker(std::int64_t a_in, std::int64_t n_in) {
  i128 a = a_in, n = n_in;
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int k = 1;
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v % 2 == 1) k = kronecker_two(a);
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  // Jacobi symbol for odd n > 0.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    int t = 0;
    while (a % 2 == 0) {
      a /= 2;
      ++t;
    }
    if (t % 2 == 1) {
      i128 r = n % 8;
      if (r == 3 || r == 5) k = -k;
    }
    if (a % 4 == 3 && n % 4 == 3) k = -k;
    i128 tmp = a;
    a = n % a;
    n = tmp;
  }
  return n == 1 ? k : 0;
}

Factorization::Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end(), [](const PrimePower& x, const PrimePower& y) { return x.prime < y.prime; });
}

u128 Factorization::value() const {
  u128 v = 1;
  for (const auto& pp : factors_) {
    for (int i = 0; i < pp.exponent; ++i) {
      if (v > ~static_cast<u128>(0) / pp.prime) throw std::overflow_error("Factorization::value overflow");
      v *= pp.prime;
    }
  }
  return v;
}

int Factorization::exponent_of(u128 p) const {
  for (const auto& pp : factors_)
    if (pp.prime == p) return pp.exponent;
  return 0;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> ps;
    for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      ps.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return ps;
  }();
  return primes;
}

bool is_prime(u128 n) {
  if (n < 2) return false;
  if (n >> 64 == 0) return miller_rabin64(static_cast<std::uint64_t>(n));
  for (std::uint32_t p : small_primes()) {
    if (p > 1000) break;
    if (n % p == 0) return false;
  }
  // Beyond 64 bits: 50 rounds of Miller-Rabin after a BPSW test in GMP.
  return mpz_probab_prime_p(to_mpz(n).get_mpz_t(), 50) > 0;
}

Factorization factorize(u128 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<PrimePower> out;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<u128>(p) * p > n) break;
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) {
    if (n < static_cast<u128>(kTrialLimit) * kTrialLimit) {
      out.push_back({n, 1});
    } else {
      std::map<u128, int> rest;
      split(n, rest);
      for (auto [p, e] : rest) out.push_back({p, e});
    }
  }
  return Factorization(std::move(out));
}

std::uint64_t isqrt(std::uint64_t n) {
  auto x = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<u128>(x) * x > n) --x;
  while (static_cast<u128>(x + 1) * (x + 1) <= n) ++x;
  return x;
}

u128 isqrt(u128 n) {
  if (n >> 64 == 0) return isqrt(static_cast<std::uint64_t>(n));
  // Newton iteration from above.
  u128 x = static_cast<u128>(std::sqrt(static_cast<long double>(n))) + 1;
  while (true) {
    u128 y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

std::optional<std::uint64_t> sqrt_if_square(std::uint64_t h) {
  if (h == 0) throw std::invalid_argument("sqrt_if_square: h must be >= 1");
  std::uint64_t r = isqrt(h);
  if (static_cast<u128>(r) * r == h) return r;
  return std::nullopt;
}

bool is_discriminant(std::int64_t d) {
  if (d == 0) return false;
  std::int64_t r = ((d % 4) + 4) % 4;
  return r == 0 || r == 1;
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (!is_discriminant(d)) return false;
  auto fd = fundamental_decomposition(d);
  return fd.conductor == 1;
}

FundamentalDecomposition fundamental_decomposition(std::int64_t d) {
  if (!is_discriminant(d)) throw std::invalid_argument("fundamental_decomposition: not a discriminant");
  u128 absd = d < 0 ? static_cast<u128>(-static_cast<i128>(d)) : static_cast<u128>(d);
  std::int64_t core = 1, f = 1;
  for (const auto& pp : factorize(absd)) {
    auto p = static_cast<std::int64_t>(pp.prime);
    if (pp.exponent % 2 == 1) core *= p;
    for (int i = 0; i < pp.exponent / 2; ++i) f *= p;
  }
  if (d < 0) core = -core;
  std::int64_t r = ((core % 4) + 4) % 4;
  if (r != 1) {
    core *= 4;
    f /= 2;
  }
  return {core, f};
}

std::vector<std::uint64_t> square_divisors(std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("square_divisors: d must be >= 1");
  std::vector<std::uint64_t> out{1};
  for (const auto& pp : factorize(d)) {
    auto p = static_cast<std::uint64_t>(pp.prime);
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= pp.exponent / 2; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out{1};
  for (const auto& pp : f) {
    auto p = static_cast<std::uint64_t>(pp.prime);
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= pp.exponent; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int moebius(const Factorization& f) {
  int mu = 1;
  for (const auto& pp : f) {
    if (pp.exponent > 1) return 0;
    mu = -mu;
  }
  return mu;
}

u128 sigma1(const Factorization& f) {
  u128 s = 1;
  for (const auto& pp : f) {
    u128 term = 1, pk = 1;
    for (int k = 1; k <= pp.exponent; ++k) {
      pk *= pp.prime;
      term += pk;
    }
    s *= term;
  }
  return s;
}

std::uint64_t euler_phi(const Factorization& f) {
  std::uint64_t phi = 1;
  for (const auto& pp : f) {
    auto p = static_cast<std::uint64_t>(pp.prime);
    phi *= p - 1;
    for (int k = 1; k < pp.exponent; ++k) phi *= p;
  }
  return phi;
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace hproj
