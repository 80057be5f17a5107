#include "hproj/shiftedconv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hproj/arith.hpp"
#include "hproj/summation.hpp"

namespace hproj {

namespace {

std::int64_t floor_sqrt(std::int64_t h) { return static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(h))); }

void require(std::int64_t h) {
  if (h < 1) throw std::invalid_argument("shiftedconv: h must be >= 1");
}

}  // namespace

ShiftedSumSeries partial_sums(std::int64_t h, const DirichletCharacter& chi, std::int64_t m_max, HurwitzCache& cache,
                              unsigned threads) {
  require(h);
  ShiftedSumSeries out;
  out.h = h;
  out.chi = chi;
  const std::int64_t lo = floor_sqrt(h) + 1;
  if (m_max < lo) return out;
  std::vector<std::uint64_t> ns;
  for (std::int64_t m = lo; m <= m_max; ++m)
    if (chi(m) != 0) ns.push_back(static_cast<std::uint64_t>(m * m - h));
  cache.prefetch(ns, threads);
  Rational S(0);
  out.rows.reserve(static_cast<std::size_t>(m_max - lo + 1));
  for (std::int64_t m = lo; m <= m_max; ++m) {
    int x = chi(m);
    if (x != 0) S += cache.get(static_cast<std::uint64_t>(m * m - h)) * Rational(x * m);
    out.rows.push_back({m, S});
  }
  return out;
}

double growth_x(std::int64_t m, GrowthScale scale) {
  double md = static_cast<double>(m);
  return scale == GrowthScale::square ? md * md : md;
}

std::vector<GrowthPoint> growth_points(const ShiftedSumSeries& series, GrowthScale scale) {
  std::vector<GrowthPoint> pts;
  pts.reserve(series.rows.size());
  for (const auto& r : series.rows) pts.push_back({growth_x(r.m, scale), r.S.to_double()});
  return pts;
}

ExponentFit fit_exponent(std::span<const GrowthPoint> points, std::size_t window) {
  // running maximum over the whole series, then the trailing window
  std::vector<std::pair<double, double>> run;
  run.reserve(points.size());
  double mx = 0.0;
  for (const auto& p : points) {
    mx = std::max(mx, std::abs(p.S));
    run.emplace_back(p.X, mx);
  }
  if (window == 0) window = run.size() / 2;
  window = std::min(window, run.size());
  std::vector<std::pair<double, double>> xy;
  for (std::size_t i = run.size() - window; i < run.size(); ++i) {
    auto [X, M] = run[i];
    if (X > 0 && M > 0) xy.emplace_back(std::log(X), std::log(M));
  }
  if (xy.size() < 20) throw std::domain_error("fit_exponent: fewer than 20 usable points");
  const double n = static_cast<double>(xy.size());
  double sx = 0, sy = 0;
  for (auto [x, y] : xy) {
    sx += x;
    sy += y;
  }
  const double mxv = sx / n, myv = sy / n;
  double sxx = 0, sxy = 0;
  for (auto [x, y] : xy) {
    sxx += (x - mxv) * (x - mxv);
    sxy += (x - mxv) * (y - myv);
  }
  if (!(sxx > 0)) throw std::domain_error("fit_exponent: degenerate abscissae");
  ExponentFit fit;
  fit.c = sxy / sxx;
  const double icpt = myv - fit.c * mxv;
  double ss = 0;
  for (auto [x, y] : xy) {
    double r = y - (icpt + fit.c * x);
    ss += r * r;
  }
  fit.stderr_c = xy.size() > 2 ? std::sqrt(ss / (n - 2) / sxx) : 0.0;
  fit.points = xy.size();
  return fit;
}

ExponentFit fit_exponent(const ShiftedSumSeries& series, std::size_t window, GrowthScale scale) {
  auto pts = growth_points(series, scale);
  return fit_exponent(pts, window);
}

std::string shifted_sum_csv(const ShiftedSumSeries& series, GrowthScale scale) {
  std::ostringstream out;
  out.precision(17);
  out << "m,S_exact_num,S_exact_den,S_float,normalized_54,normalized_32\n";
  for (const auto& r : series.rows) {
    double X = growth_x(r.m, scale);
    double s = r.S.to_double();
    out << r.m << ',' << r.S.num() << ',' << r.S.den() << ',' << s << ',' << s / std::pow(X, 1.25) << ','
        << s / std::pow(X, 1.5) << '\n';
  }
  return out.str();
}

DSeriesValue d_series_truncated(std::int64_t h, const DirichletCharacter& chi, double s, std::int64_t M,
                                HurwitzCache& cache) {
  require(h);
  if (!(s > 1)) throw std::invalid_argument("d_series_truncated: s must exceed 1");
  const std::int64_t lo = floor_sqrt(h) + 1;
  CompensatedSum sum;
  double scaled = 0.0;
  std::int64_t scaled_count = 0;
  const std::int64_t window_start = std::max(lo, M - std::max<std::int64_t>(M / 10, 1) + 1);
  for (std::int64_t m = lo; m <= M; ++m) {
    int x = chi(m);
    if (x == 0) continue;
    double H = cache.get_double(static_cast<std::uint64_t>(m * m - h));
    double md = static_cast<double>(m);
    double term = H * x * md / std::pow(md, 2 * s + 1);
    sum += term;
    if (m >= window_start) {
      scaled += std::abs(term) * std::pow(md, 2 * s - 1);
      ++scaled_count;
    }
  }
  DSeriesValue v;
  v.value = sum.value();
  if (scaled_count > 0) {
    double C = scaled / static_cast<double>(scaled_count);
    v.tail_estimate = C * std::pow(static_cast<double>(M), 2 - 2 * s) / (2 * s - 2);
  }
  return v;
}

double symmetrized_check(std::int64_t h, const DirichletCharacter& chi, double s, std::int64_t M, HurwitzCache& cache) {
  require(h);
  if (!(s > 1.5)) throw std::invalid_argument("symmetrized_check: s must exceed 3/2");
  const std::int64_t lo = floor_sqrt(h) + 1;
  CompensatedSum grouped, shifted;
  for (std::int64_t m = lo; m <= M; ++m) {
    int x = chi(m);
    if (x == 0) continue;
    auto n = static_cast<double>(m * m - h);
    double H = cache.get_double(static_cast<std::uint64_t>(m * m - h));
    double md = static_cast<double>(m);
    double w = H * md * x;
    grouped += w * (std::pow(n, -s) - std::pow(md, -2 * s));
    shifted += w * std::pow(n, -s);
  }
  double d = d_series_truncated(h, chi, s - 0.5, M, cache).value;
  return std::abs(grouped.value() - (shifted.value() - d));
}

HarmonicSum symmetrized_half_sum(std::int64_t h, const DirichletCharacter& chi, std::int64_t M, Acceleration acc,
                                 HurwitzCache& cache) {
  require(h);
  const std::int64_t lo = floor_sqrt(h) + 1;
  CompensatedSum s;
  double pending = 0.0, last = 0.0, prev = 0.0;
  bool have_pending = false, have_prev = false;
  for (std::int64_t m = lo; m <= M; ++m) {
    int x = chi(m);
    if (x == 0) continue;
    double H = cache.get_double(static_cast<std::uint64_t>(m * m - h));
    double md = static_cast<double>(m);
    double v = H * md * x * (1.0 / std::sqrt(md * md - static_cast<double>(h)) - 1.0 / md);
    if (acc == Acceleration::none) {
      s += v;
      last = have_prev ? prev + v : v;
      prev = v;
      have_prev = true;
    } else if (!have_pending) {
      pending = v;
      have_pending = true;
    } else {
      s += pending + v;
      last = pending + v;
      have_pending = false;
    }
  }
  if (have_pending) {
    s += 0.5 * pending;
    last = 0.5 * pending;
  }
  return {s.value(), std::abs(last)};
}

}  // namespace hproj
