#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hproj/errors.hpp"

namespace hproj {

namespace detail {
inline bool is_zero(const mpz_class& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_unit(const mpz_class& x) { return x == 1 || x == -1; }
inline bool is_unit(double x) { return x != 0.0; }
}  // namespace detail

// Truncated q-expansion sum_{n=0}^{N} c(n) q^n, known modulo q^{N+1}.
// precision() is N. Values are immutable; every operation returns a new series.
template <class T>
class PowerSeries {
 public:
  using value_type = T;

  PowerSeries() : c_(1, T(0)) {}
  explicit PowerSeries(std::size_t precision) : c_(precision + 1, T(0)) {}
  explicit PowerSeries(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("PowerSeries: need at least one coefficient");
  }

  static PowerSeries one(std::size_t precision) {
    PowerSeries s(precision);
    s.c_[0] = T(1);
    return s;
  }
  static PowerSeries monomial(std::size_t k, T v, std::size_t precision) {
    PowerSeries s(precision);
    if (k <= precision) s.c_[k] = std::move(v);
    return s;
  }

  std::size_t precision() const { return c_.size() - 1; }
  const std::vector<T>& coefficients() const { return c_; }

  const T& operator[](std::size_t n) const { return at(n); }
  const T& at(std::size_t n) const {
    if (n >= c_.size()) {
      throw precision_error("PowerSeries: index " + std::to_string(n) + " beyond precision " +
                            std::to_string(precision()));
    }
    return c_[n];
  }

  PowerSeries truncated(std::size_t N) const {
    if (N > precision()) throw precision_error("PowerSeries: cannot extend precision by truncation");
    return PowerSeries(std::vector<T>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(N + 1)));
  }

  PowerSeries operator-() const {
    PowerSeries r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    std::size_t N = std::min(a.precision(), b.precision());
    PowerSeries r(N);
    for (std::size_t i = 0; i <= N; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + (-b); }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    std::size_t N = std::min(a.precision(), b.precision());
    PowerSeries r(N);
    std::vector<std::size_t> nzb;
    for (std::size_t j = 0; j <= N; ++j)
      if (!detail::is_zero(b.c_[j])) nzb.push_back(j);
    for (std::size_t i = 0; i <= N; ++i) {
      if (detail::is_zero(a.c_[i])) continue;
      for (std::size_t j : nzb) {
        if (i + j > N) break;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  friend PowerSeries operator*(const T& s, const PowerSeries& a) {
    PowerSeries r(a);
    for (auto& x : r.c_) x *= s;
    return r;
  }

  // 1/f; needs an invertible constant coefficient (+-1 over the integers).
  PowerSeries inverse() const {
    if (!detail::is_unit(c_[0])) throw std::domain_error("PowerSeries: constant term is not invertible");
    const std::size_t N = precision();
    PowerSeries r(N);
    std::vector<std::size_t> nz;
    for (std::size_t k = 1; k <= N; ++k)
      if (!detail::is_zero(c_[k])) nz.push_back(k);
    T inv0 = T(1) / c_[0];
    r.c_[0] = inv0;
    for (std::size_t n = 1; n <= N; ++n) {
      T acc(0);
      for (std::size_t k : nz) {
        if (k > n) break;
        acc += c_[k] * r.c_[n - k];
      }
      r.c_[n] = -acc * inv0;
    }
    return r;
  }

  PowerSeries pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    PowerSeries result = one(precision());
    PowerSeries base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  // f(q^t): coefficient c(n) moves to index t n; precision becomes t N.
  PowerSeries substitute(std::size_t t) const {
    if (t == 0) throw std::invalid_argument("PowerSeries: substitution power must be positive");
    PowerSeries r(precision() * t);
    for (std::size_t n = 0; n <= precision(); ++n) r.c_[n * t] = c_[n];
    return r;
  }

  // q^k f; precision grows by k.
  PowerSeries shifted(std::size_t k) const {
    PowerSeries r(precision() + k);
    for (std::size_t n = 0; n <= precision(); ++n) r.c_[n + k] = c_[n];
    return r;
  }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<T> c_;
};

using IntSeries = PowerSeries<mpz_class>;
using RealSeries = PowerSeries<double>;

// CSV with header "n,coefficient", one row per index 0..precision.
void write_series_csv(std::ostream& out, const IntSeries& s);
void write_series_csv(std::ostream& out, const RealSeries& s);
IntSeries read_series_csv(std::istream& in);

}  // namespace hproj
