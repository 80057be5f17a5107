#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hproj/character.hpp"
#include "hproj/hurwitz_cache.hpp"
#include "hproj/projection.hpp"
#include "hproj/rational.hpp"

namespace hproj {

struct ShiftedSumRow {
  std::int64_t m = 0;
  Rational S;  // sum over sqrt(h) < k <= m of H(k^2 - h) k chi(k)
};

struct ShiftedSumSeries {
  std::int64_t h = 0;
  DirichletCharacter chi = DirichletCharacter::trivial();
  std::vector<ShiftedSumRow> rows;  // one row per m, strictly increasing
};

// Exact partial sums for floor(sqrt h) < m <= m_max. Empty when m_max <= sqrt h.
ShiftedSumSeries partial_sums(std::int64_t h, const DirichletCharacter& chi, std::int64_t m_max,
                              HurwitzCache& cache = hurwitz_cache(), unsigned threads = 1);

// Growth variable attached to row m. square: X = m^2 (odd m = 2x+1 gives
// X = (2x+1)^2). linear: X = m.
enum class GrowthScale { square, linear };
double growth_x(std::int64_t m, GrowthScale scale);

struct GrowthPoint {
  double X = 0;
  double S = 0;
};

struct ExponentFit {
  double c = 0;
  double stderr_c = 0;
  std::size_t points = 0;
};

// Least squares of log(running max |S|) against log X over the trailing
// `window` points (0 selects the trailing half). Needs >= 20 usable points;
// throws std::domain_error on a degenerate fit.
ExponentFit fit_exponent(std::span<const GrowthPoint> points, std::size_t window = 0);
ExponentFit fit_exponent(const ShiftedSumSeries& series, std::size_t window = 0,
                         GrowthScale scale = GrowthScale::square);

std::vector<GrowthPoint> growth_points(const ShiftedSumSeries& series, GrowthScale scale);

// CSV "m,S_exact_num,S_exact_den,S_float,normalized_54,normalized_32" with
// normalized_k = S / X^k for the chosen growth variable.
std::string shifted_sum_csv(const ShiftedSumSeries& series, GrowthScale scale);

struct DSeriesValue {
  double value = 0;
  double tail_estimate = 0;
};

// sum_{sqrt h < m <= M} H(m^2 - h) chi(m) m / m^{2s+1}, s > 1.
DSeriesValue d_series_truncated(std::int64_t h, const DirichletCharacter& chi, double s, std::int64_t M,
                                HurwitzCache& cache = hurwitz_cache());

// |sum H(n) m chi(m) (n^{-s} - m^{-2s}) - (sum H(n) m chi(m) n^{-s} - D_h(s - 1/2))|
// over the same truncation, s > 3/2.
double symmetrized_check(std::int64_t h, const DirichletCharacter& chi, double s, std::int64_t M,
                         HurwitzCache& cache = hurwitz_cache());

// sum H(n) m chi(m) (1/sqrt n - 1/m), grouped like harmonic_term.
HarmonicSum symmetrized_half_sum(std::int64_t h, const DirichletCharacter& chi, std::int64_t M, Acceleration acc,
                                 HurwitzCache& cache = hurwitz_cache());

}  // namespace hproj
