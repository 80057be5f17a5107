#include "hproj/projection.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "hproj/arith.hpp"
#include "hproj/quadforms.hpp"
#include "hproj/special.hpp"
#include "hproj/summation.hpp"

namespace hproj {

namespace {

constexpr double kPi = std::numbers::pi;

// Sums the active terms for m in [lo, hi] in increasing order. With pairing,
// consecutive active terms are added two at a time and a final unpaired term
// gets half weight. The uncertainty is the size of the last group.
template <class TermFn>
HarmonicSum tail_sum(std::int64_t lo, std::int64_t hi, Acceleration acc, TermFn term) {
  CompensatedSum s;
  double last_group = 0.0, prev = 0.0, pending = 0.0;
  bool have_prev = false, have_pending = false;
  for (std::int64_t m = lo; m <= hi; ++m) {
    double v;
    if (!term(m, v)) continue;
    if (acc == Acceleration::none) {
      s += v;
      last_group = have_prev ? prev + v : v;
      prev = v;
      have_prev = true;
    } else if (!have_pending) {
      pending = v;
      have_pending = true;
    } else {
      double p = pending + v;
      s += p;
      last_group = p;
      have_pending = false;
    }
  }
  if (have_pending) {
    s += 0.5 * pending;
    last_group = 0.5 * pending;
  }
  return {s.value(), std::abs(last_group)};
}

double harmonic_prefactor(std::int64_t h, const ProjectionConfig& cfg) {
  double p = static_cast<double>(h);
  return cfg.harmonic == HarmonicNormalization::printed ? std::sqrt(kPi) * p : p;
}

double log_term(std::int64_t h, const ProjectionConfig& cfg) {
  double hd = static_cast<double>(h);
  return cfg.constant_log_variant == LogVariant::log_h ? std::log(4 * kPi * hd) : std::log(4 * kPi * std::sqrt(hd));
}

std::int64_t floor_sqrt(std::int64_t h) { return static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(h))); }

void require_h(std::int64_t h) {
  if (h < 1) throw std::invalid_argument("projection: h must be >= 1");
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  threads = std::max(1u, threads);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    try {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
    } catch (...) {
      std::lock_guard g(mu);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string to_string(Acceleration a) { return a == Acceleration::pairing ? "pairing" : "none"; }
std::string to_string(LogVariant v) { return v == LogVariant::log_h ? "log_h" : "log_sqrt_h"; }
std::string to_string(HarmonicNormalization n) {
  return n == HarmonicNormalization::corrected ? "corrected" : "printed";
}

Acceleration parse_acceleration(const std::string& s) {
  if (s == "pairing") return Acceleration::pairing;
  if (s == "none") return Acceleration::none;
  throw std::invalid_argument("acceleration must be 'pairing' or 'none'");
}

LogVariant parse_log_variant(const std::string& s) {
  if (s == "log_h") return LogVariant::log_h;
  if (s == "log_sqrt_h") return LogVariant::log_sqrt_h;
  throw std::invalid_argument("log variant must be 'log_h' or 'log_sqrt_h'");
}

HarmonicNormalization parse_harmonic_normalization(const std::string& s) {
  if (s == "corrected") return HarmonicNormalization::corrected;
  if (s == "printed") return HarmonicNormalization::printed;
  throw std::invalid_argument("harmonic normalization must be 'corrected' or 'printed'");
}

void ProjectionConfig::validate() const {
  if (M < 1) throw std::invalid_argument("ProjectionConfig: M must be >= 1");
  if (!(tolerance > 0)) throw std::invalid_argument("ProjectionConfig: tolerance must be positive");
}

double alpha_nm(double n, double m) {
  if (!(n > 0) || !(m > 0)) throw std::invalid_argument("alpha_nm: n and m must be positive");
  const double rn = std::sqrt(n);
  return (2 * rn * std::atan(m / rn) - m * std::log(4 * n / (n + m * m))) / (4 * kPi * m);
}

HarmonicSum harmonic_term(std::int64_t h, const DirichletCharacter& chi, const ProjectionConfig& cfg,
                          HurwitzCache& cache) {
  require_h(h);
  cfg.validate();
  const std::int64_t r = floor_sqrt(h);
  auto sum = tail_sum(r + 1, cfg.M, cfg.acceleration, [&](std::int64_t m, double& v) {
    int x = chi(m);
    if (x == 0) return false;
    auto n = static_cast<std::uint64_t>(m * m - h);
    double H = cache.get_double(n);
    double rn = std::sqrt(static_cast<double>(n));
    v = H * x / (rn * (static_cast<double>(m) + rn));
    return true;
  });
  const double pre = harmonic_prefactor(h, cfg);
  return {pre * sum.value, pre * sum.uncertainty};
}

double holomorphic_term(std::int64_t h, const DirichletCharacter& chi) {
  require_h(h);
  CompensatedSum s;
  for (std::int64_t m = 1; m * m < h; ++m) {
    int x = chi(m);
    if (x == 0) continue;
    std::int64_t n = h - m * m;
    double hs = hstar(n);
    if (hs == 0.0) continue;
    s += hs / std::sqrt(static_cast<double>(n)) * (x * static_cast<double>(m));
  }
  return s.value();
}

double sesqui_term(std::int64_t h, const DirichletCharacter& chi) {
  require_h(h);
  CompensatedSum s;
  for (std::int64_t m = 1; m * m < h; ++m) {
    int x = chi(m);
    if (x == 0) continue;
    auto root = sqrt_if_square(static_cast<std::uint64_t>(h - m * m));
    if (!root) continue;
    double n = static_cast<double>(*root), md = static_cast<double>(m);
    double hd = static_cast<double>(h);
    s += x / (2 * kPi) * (2 * n * std::atan(md / n) - md * std::log(4 * n * n / hd));
  }
  return s.value();
}

double constant_term(std::int64_t h, const DirichletCharacter& chi, const ProjectionConfig& cfg) {
  require_h(h);
  auto root = sqrt_if_square(static_cast<std::uint64_t>(h));
  if (!root) return 0.0;
  auto r = static_cast<std::int64_t>(*root);
  int x = chi(r);
  if (x == 0) return 0.0;
  const double g = kEulerGamma;
  double block = (g - std::log(16 * kPi)) / (4 * kPi) + (log_term(h, cfg) + g) / (4 * kPi) + 1.0 / (12.0 * r);
  return x * static_cast<double>(r) * block;
}

RChiBreakdown r_chi(std::int64_t h, const DirichletCharacter& chi, const ProjectionConfig& cfg, HurwitzCache& cache) {
  if (chi.parity() != 1) throw std::domain_error("r_chi: the character must be odd");
  RChiBreakdown b;
  b.h = h;
  b.constant = constant_term(h, chi, cfg);
  auto harm = harmonic_term(h, chi, cfg, cache);
  b.harmonic = harm.value;
  b.uncertainty = harm.uncertainty;
  b.holomorphic = holomorphic_term(h, chi);
  b.sesquiharmonic = sesqui_term(h, chi);
  b.total = ((b.constant + b.harmonic) + b.holomorphic) + b.sesquiharmonic;
  return b;
}

std::vector<RChiBreakdown> r_chi_batch(std::span<const std::int64_t> hs, const DirichletCharacter& chi,
                                       const ProjectionConfig& cfg, unsigned threads, HurwitzCache& cache) {
  if (chi.parity() != 1) throw std::domain_error("r_chi: the character must be odd");
  cfg.validate();
  std::vector<std::uint64_t> ns;
  for (auto h : hs) {
    require_h(h);
    for (std::int64_t m = floor_sqrt(h) + 1; m <= cfg.M; ++m) {
      if (chi(m) == 0) continue;
      auto n = static_cast<std::uint64_t>(m * m - h);
      if (n % 4 == 0 || n % 4 == 3) ns.push_back(n);
    }
  }
  cache.prefetch(ns, threads);
  std::vector<RChiBreakdown> out(hs.size());
  parallel_for(hs.size(), threads, [&](std::size_t i) { out[i] = r_chi(hs[i], chi, cfg, cache); });
  return out;
}

double SesquiCoefficients::c_at(std::int64_t n) const {
  auto it = c.find(n);
  return it == c.end() ? 0.0 : it->second;
}

double SesquiCoefficients::a_at(std::int64_t n) const {
  auto it = a.find(n);
  return it == a.end() ? 0.0 : it->second;
}

double SesquiCoefficients::b_at(std::int64_t n) const {
  auto it = b.find(n);
  if (it != b.end()) return it->second;
  if (n < 0 && b_tail) return b_tail(n);
  return 0.0;
}

CuspCoefficients CuspCoefficients::from_character(const DirichletCharacter& chi, std::int64_t mmax) {
  if (mmax < 1) throw std::invalid_argument("CuspCoefficients: mmax must be >= 1");
  CuspCoefficients g;
  g.l.assign(static_cast<std::size_t>(mmax) + 1, 0.0);
  for (std::int64_t m = 1; m <= mmax; ++m) g.l[static_cast<std::size_t>(m)] = chi(m) * static_cast<double>(m);
  return g;
}

std::vector<RChiBreakdown> project_general_breakdown(const SesquiCoefficients& F, const CuspCoefficients& g,
                                                     std::int64_t hmax, const ProjectionConfig& cfg) {
  cfg.validate();
  if (F.twice_weight != 1) throw std::invalid_argument("project_general: F must have weight 1/2");
  if (hmax < 1) throw std::invalid_argument("project_general: hmax must be >= 1");
  if (hmax - 1 > F.complete_through) {
    throw std::invalid_argument("project_general: coefficient streams do not reach hmax - 1");
  }
  std::int64_t cmin = 0;
  if (!F.c.empty() && F.c.begin()->first < 0) cmin = F.c.begin()->first;
  const double g0 = kEulerGamma;
  std::vector<RChiBreakdown> out;
  for (std::int64_t h = 1; h <= hmax; ++h) {
    RChiBreakdown b;
    b.h = h;
    const std::int64_t r = floor_sqrt(h);
    const double hd = static_cast<double>(h);

    // constant block
    if (r * r == h && g.at(r) != 0.0) {
      double L = log_term(h, cfg);
      double block = (F.d[0] - F.d[1] * (L + g0)) +
                     (F.d[2] + F.d[3] * (2 - std::log(16 * kPi * hd) - g0)) / (4.0 * static_cast<double>(r));
      b.constant = g.at(r) * block;
    }

    // holomorphic: n = h - m^2 over n != 0 down to the principal part
    CompensatedSum hol;
    for (std::int64_t m = 1; h - m * m >= cmin; ++m) {
      std::int64_t n = h - m * m;
      if (n == 0) continue;
      double l = g.at(m);
      if (l == 0.0) continue;
      double c = F.c_at(n);
      if (c != 0.0) hol += c * l;
    }
    b.holomorphic = hol.value();

    // sesquiharmonic: n = h - m^2 > 0
    CompensatedSum ses;
    for (std::int64_t m = 1; m * m < h; ++m) {
      double l = g.at(m);
      std::int64_t n = h - m * m;
      double a = F.a_at(n);
      if (l == 0.0 || a == 0.0) continue;
      ses += a * l * alpha_nm(static_cast<double>(n), static_cast<double>(m));
    }
    b.sesquiharmonic = ses.value();

    // harmonic: finitely many n > 0, then the truncated n < 0 tail
    CompensatedSum head;
    for (std::int64_t m = 1; m * m < h; ++m) {
      std::int64_t n = h - m * m;
      auto it = F.b.find(n);
      double l = g.at(m);
      if (it == F.b.end() || l == 0.0) continue;
      double rn = std::sqrt(static_cast<double>(n));
      head += it->second * l / ((static_cast<double>(m) + rn) * static_cast<double>(m));
    }
    auto tail = tail_sum(r + 1, cfg.M, cfg.acceleration, [&](std::int64_t m, double& v) {
      double l = g.at(m);
      if (l == 0.0) return false;
      std::int64_t n = h - m * m;
      double rn = std::sqrt(static_cast<double>(-n));
      double md = static_cast<double>(m);
      v = F.b_at(n) * l / ((md + rn) * md);
      return true;
    });
    const double pre = harmonic_prefactor(h, cfg);
    b.harmonic = pre * (head.value() + tail.value);
    b.uncertainty = pre * tail.uncertainty;

    b.total = ((b.constant + b.harmonic) + b.holomorphic) + b.sesquiharmonic;
    out.push_back(b);
  }
  return out;
}

RealSeries project_general(const SesquiCoefficients& F, const CuspCoefficients& g, std::int64_t hmax,
                           const ProjectionConfig& cfg) {
  auto rows = project_general_breakdown(F, g, hmax, cfg);
  std::vector<double> c(static_cast<std::size_t>(hmax) + 1, 0.0);
  for (const auto& row : rows) c[static_cast<std::size_t>(row.h)] = row.total;
  return RealSeries(std::move(c));
}

SesquiCoefficients z_coefficients(std::int64_t nmax, std::int64_t b_callback_limit, HurwitzCache& cache) {
  if (nmax < 1) throw std::invalid_argument("z_coefficients: nmax must be >= 1");
  SesquiCoefficients F;
  F.d = {(kEulerGamma - std::log(16 * kPi)) / (4 * kPi), -1.0 / (4 * kPi), 1.0 / 3.0, 0.0};
  for (std::int64_t d = 1; d <= nmax; ++d) {
    double hs = hstar(d);
    if (hs != 0.0) F.c[d] = hs / std::sqrt(static_cast<double>(d));
  }
  for (std::int64_t j = 1; j * j <= nmax; ++j) F.a[j * j] = 2.0;
  HurwitzCache* cp = &cache;
  F.b_tail = [cp, b_callback_limit](std::int64_t n) {
    if (n >= 0) throw std::invalid_argument("z_coefficients: b callback needs n < 0");
    if (-n > b_callback_limit) throw std::out_of_range("z_coefficients: b(n) requested beyond the callback limit");
    auto an = static_cast<std::uint64_t>(-n);
    return cp->get_double(an) / std::sqrt(static_cast<double>(an));
  };
  F.complete_through = nmax;
  F.twice_weight = 1;
  return F;
}

SesquiCoefficients zagier_coefficients(std::int64_t nmax, HurwitzCache& cache) {
  if (nmax < 1) throw std::invalid_argument("zagier_coefficients: nmax must be >= 1");
  SesquiCoefficients F;
  F.d = {-1.0 / 12.0, 0.0, 0.0, 0.0};
  for (std::int64_t n = 1; n <= nmax; ++n) {
    double v = cache.get_double(static_cast<std::uint64_t>(n));
    if (v != 0.0) F.c[n] = v;
  }
  F.complete_through = nmax;
  F.twice_weight = 3;
  return F;
}

}  // namespace hproj
