#include "hproj/qseries.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hproj/arith.hpp"

namespace hproj {

IntSeries euler_product_series(std::size_t N) {
  std::vector<mpz_class> c(N + 1, 0);
  c[0] = 1;
  // Exponents k(3k-1)/2 for k = +-1, +-2, ... with sign (-1)^k.
  for (long k = 1;; ++k) {
    auto e1 = static_cast<std::size_t>(k * (3 * k - 1) / 2);
    auto e2 = static_cast<std::size_t>(k * (3 * k + 1) / 2);
    if (e1 > N) break;
    int sign = (k % 2 == 1) ? -1 : 1;
    c[e1] += sign;
    if (e2 <= N) c[e2] += sign;
  }
  return IntSeries(std::move(c));
}

EtaQuotientSpec::EtaQuotientSpec(std::vector<std::pair<int, int>> factors) : factors_(std::move(factors)) {
  for (auto [t, r] : factors_)
    if (t <= 0) throw std::invalid_argument("eta quotient: scale must be positive");
  long s = 0;
  for (auto [t, r] : factors_) s += static_cast<long>(t) * r;
  if (s % 24 != 0) throw std::invalid_argument("eta quotient: sum of t*r must be divisible by 24");
  if (s < 0) throw std::invalid_argument("eta quotient: negative leading exponent is not a power series");
}

EtaQuotientSpec EtaQuotientSpec::parse(std::string_view text) {
  std::vector<std::pair<int, int>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(pos, comma - pos);
    auto colon = item.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("eta quotient: expected t:r pairs");
    int t = 0, r = 0;
    auto a = item.substr(0, colon), b = item.substr(colon + 1);
    auto r1 = std::from_chars(a.data(), a.data() + a.size(), t);
    auto r2 = std::from_chars(b.data(), b.data() + b.size(), r);
    if (r1.ec != std::errc() || r1.ptr != a.data() + a.size() || r2.ec != std::errc() ||
        r2.ptr != b.data() + b.size()) {
      throw std::invalid_argument("eta quotient: bad pair '" + std::string(item) + "'");
    }
    out.emplace_back(t, r);
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("eta quotient: empty spec");
  return EtaQuotientSpec(std::move(out));
}

long EtaQuotientSpec::leading_exponent() const {
  long s = 0;
  for (auto [t, r] : factors_) s += static_cast<long>(t) * r;
  return s / 24;
}

IntSeries eta_quotient(const EtaQuotientSpec& spec, std::size_t N) {
  const auto lead = static_cast<std::size_t>(spec.leading_exponent());
  if (lead > N) return IntSeries(N);
  const std::size_t M = N - lead;  // precision needed for the product part
  IntSeries prod = IntSeries::one(M);
  for (auto [t, r] : spec.factors()) {
    auto ts = static_cast<std::size_t>(t);
    IntSeries base = euler_product_series(M / ts).substitute(ts);
    // substitute gives precision t*floor(M/t) <= M; pad with exact zeros up to M.
    std::vector<mpz_class> c(base.coefficients());
    c.resize(M + 1, 0);
    prod = prod * IntSeries(std::move(c)).pow(r);
  }
  return prod.shifted(lead);
}

IntSeries theta_series(const DirichletCharacter& chi, std::size_t N) {
  std::vector<mpz_class> c(N + 1, 0);
  const int nu = chi.parity();
  if (nu == 0) c[0] = chi(0);
  for (std::size_t n = 1; n * n <= N; ++n) {
    auto ni = static_cast<std::int64_t>(n);
    mpz_class v = chi(ni);
    if (nu == 1) v *= ni;
    c[n * n] += 2 * v;  // n and -n contribute equally
  }
  return IntSeries(std::move(c));
}

IntSeries v_operator(const IntSeries& f, std::size_t t) { return f.substitute(t); }

IntSeries hecke_t_p(const IntSeries& f, unsigned p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("hecke_t_p: p must be an odd prime");
  const std::size_t N = f.precision() / p;
  std::vector<mpz_class> c(N + 1);
  c[0] = f[0] * (1 + p);
  for (std::size_t n = 1; n <= N; ++n) {
    c[n] = f[n * p];
    if (n % p == 0) c[n] += p * f[n / p];
  }
  return IntSeries(std::move(c));
}

S2Basis basis_s2_64(std::size_t N) {
  if (N < 5) throw std::invalid_argument("basis_s2_64: N must be >= 5");
  IntSeries f1 = eta_quotient(EtaQuotientSpec({{8, 8}, {4, -2}, {16, -2}}), N);
  IntSeries f2 = eta_quotient(EtaQuotientSpec({{4, 2}, {8, 2}}), N);
  IntSeries f3 = v_operator(f2.truncated(N / 2), 2);
  if (f3.precision() < N) {
    std::vector<mpz_class> c(f3.coefficients());
    // index N is odd here; f3 is supported on even indices.
    c.resize(N + 1, 0);
    f3 = IntSeries(std::move(c));
  }
  return {std::move(f1), std::move(f2), std::move(f3)};
}

void write_series_csv(std::ostream& out, const IntSeries& s) {
  out << "n,coefficient\n";
  for (std::size_t n = 0; n <= s.precision(); ++n) out << n << ',' << s[n].get_str() << '\n';
}

void write_series_csv(std::ostream& out, const RealSeries& s) {
  out << "n,coefficient\n";
  auto old = out.precision(17);
  for (std::size_t n = 0; n <= s.precision(); ++n) out << n << ',' << s[n] << '\n';
  out.precision(old);
}

IntSeries read_series_csv(std::istream& in) {
  std::string line;
  std::vector<mpz_class> c;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header && line.rfind("n,", 0) == 0) {
      header = false;
      continue;
    }
    header = false;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("series csv: expected n,coefficient");
    std::size_t n = std::stoul(line.substr(0, comma));
    if (n != c.size()) throw std::invalid_argument("series csv: indices must be consecutive from 0");
    c.emplace_back(line.substr(comma + 1));
  }
  if (c.empty()) throw std::invalid_argument("series csv: no rows");
  return IntSeries(std::move(c));
}

}  // namespace hproj
