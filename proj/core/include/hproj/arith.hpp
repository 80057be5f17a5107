#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hproj {

using u128 = unsigned __int128;
using i128 = __int128;

// Kronecker symbol (a/n) for any integers a, n. (a/0) is 1 when |a| = 1, else 0.
int kronecker(std::int64_t a, std::int64_t n);

struct PrimePower {
  u128 prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization with primes in increasing order. The empty
// factorization represents 1.
class Factorization {
 public:
  Factorization() = default;
  explicit Factorization(std::vector<PrimePower> factors);

  const std::vector<PrimePower>& factors() const { return factors_; }
  auto begin() const { return factors_.begin(); }
  auto end() const { return factors_.end(); }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }

  // Product of the prime powers; throws std::overflow_error past 128 bits.
  u128 value() const;
  int exponent_of(u128 p) const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> factors_;
};

// Trial division by primes below 10^6, then Miller-Rabin and Pollard-Brent
// on the cofactor. Every split is verified by multiplication.
// Throws std::invalid_argument for n == 0.
Factorization factorize(u128 n);

bool is_prime(u128 n);

std::uint64_t isqrt(std::uint64_t n);
u128 isqrt(u128 n);

// Positive square root of h when h is a perfect square, for h >= 1.
std::optional<std::uint64_t> sqrt_if_square(std::uint64_t h);

// Nonzero d with d = 0 or 1 mod 4.
bool is_discriminant(std::int64_t d);
// 1 counts as fundamental (the square-class representative).
bool is_fundamental_discriminant(std::int64_t d);

struct FundamentalDecomposition {
  std::int64_t fundamental;  // D0
  std::int64_t conductor;    // f with D = D0 f^2
};

// D = D0 f^2 with D0 fundamental. Squares decompose as (1, sqrt D).
// Throws std::invalid_argument if D is not a discriminant.
FundamentalDecomposition fundamental_decomposition(std::int64_t d);

// All l >= 1 with l^2 | d, ascending. Requires d >= 1.
std::vector<std::uint64_t> square_divisors(std::uint64_t d);

std::vector<std::uint64_t> divisors(const Factorization& f);
int moebius(const Factorization& f);
u128 sigma1(const Factorization& f);
std::uint64_t euler_phi(const Factorization& f);

// Primes below limit by a sieve. The shared table below 10^6 is built once.
const std::vector<std::uint32_t>& small_primes();

std::string to_string(u128 v);

}  // namespace hproj
