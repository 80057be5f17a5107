#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hproj/quadforms.hpp"
#include "hproj/shiftedconv.hpp"

using namespace hproj;

namespace {

const DirichletCharacter& chi4() {
  static const auto c = DirichletCharacter::kronecker(-4);
  return c;
}

}  // namespace

TEST(PartialSums, HandSumForSmallRange) {
  auto s = partial_sums(14, chi4(), 10);
  ASSERT_FALSE(s.rows.empty());
  EXPECT_EQ(s.rows.front().m, 4);
  EXPECT_EQ(s.rows.back().m, 10);
  Rational hand = hurwitz_direct(11) * Rational(5) - hurwitz_direct(35) * Rational(7) + hurwitz_direct(67) * Rational(9);
  EXPECT_EQ(s.rows.back().S, hand);
  EXPECT_EQ(hurwitz_direct(11), Rational(1));
}

TEST(PartialSums, EmptyBelowRoot) {
  EXPECT_TRUE(partial_sums(14, chi4(), 3).rows.empty());
  EXPECT_THROW(partial_sums(0, chi4(), 10), std::invalid_argument);
}

TEST(PartialSums, ExactRecomputationAtThousand) {
  auto s = partial_sums(14, chi4(), 1000);
  for (std::size_t i = 1; i < s.rows.size(); ++i) ASSERT_GT(s.rows[i].m, s.rows[i - 1].m);
  Rational fresh;
  for (std::int64_t m = 4; m <= 1000; ++m)
    if (chi4()(m) != 0) fresh += hurwitz_direct(static_cast<std::uint64_t>(m * m - 14)) * Rational(chi4()(m) * m);
  EXPECT_EQ(s.rows.back().S, fresh);
}

TEST(PartialSums, ThreadCountDoesNotChangeRows) {
  auto a = partial_sums(14, chi4(), 2000, hurwitz_cache(), 1);
  HurwitzCache fresh;
  auto b = partial_sums(14, chi4(), 2000, fresh, 4);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].S, b.rows[i].S);
}

TEST(FitExponent, SyntheticSeries) {
  std::vector<GrowthPoint> pts;
  for (int m = 1; m <= 2000; ++m) pts.push_back({static_cast<double>(m), std::pow(m, 1.25)});
  auto f = fit_exponent(pts);
  EXPECT_NEAR(f.c, 1.25, 1e-6);
  std::vector<GrowthPoint> flat;
  for (int m = 1; m <= 100; ++m) flat.push_back({static_cast<double>(m), 3.0});
  EXPECT_NEAR(fit_exponent(flat).c, 0.0, 1e-12);
  std::vector<GrowthPoint> few(30, GrowthPoint{2.0, 1.0});
  EXPECT_THROW(fit_exponent(few), std::domain_error);
  EXPECT_THROW(fit_exponent(std::span<const GrowthPoint>(pts.data(), 10)), std::domain_error);
}

TEST(FitExponent, OscillatingSeriesUsesRunningMaximum) {
  std::vector<GrowthPoint> pts;
  for (int m = 1; m <= 4000; ++m) pts.push_back({static_cast<double>(m), std::pow(m, 1.1) * std::cos(0.37 * m)});
  EXPECT_NEAR(fit_exponent(pts).c, 1.1, 0.02);
}

TEST(ShiftedCsv, HeaderAndColumns) {
  auto s = partial_sums(14, chi4(), 12);
  std::istringstream in(shifted_sum_csv(s, GrowthScale::linear));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "m,S_exact_num,S_exact_den,S_float,normalized_54,normalized_32");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, s.rows.size());
}

TEST(DSeries, ConvergesForLargeS) {
  auto a = d_series_truncated(14, chi4(), 3.0, 5000);
  auto b = d_series_truncated(14, chi4(), 3.0, 10000);
  EXPECT_LT(std::fabs(a.value - b.value), 1e-6);
  EXPECT_GE(a.tail_estimate, 0.0);
  EXPECT_LE(std::fabs(a.value - b.value), 10 * a.tail_estimate);
  EXPECT_EQ(d_series_truncated(14, chi4(), 2.0, 3).value, 0.0);
  EXPECT_THROW(d_series_truncated(14, chi4(), 1.0, 100), std::invalid_argument);
}

TEST(DSeries, RefinementStabilizes) {
  double prev = 0, prev_step = 1e300;
  for (std::int64_t M : {500, 1000, 2000, 4000, 8000}) {
    double v = d_series_truncated(5, chi4(), 2.5, M).value;
    if (M > 500) {
      double step = std::fabs(v - prev);
      EXPECT_LT(step, prev_step);
      prev_step = step;
    }
    prev = v;
  }
}

TEST(Symmetrized, RegroupingVanishes) {
  EXPECT_LE(symmetrized_check(5, chi4(), 2.0, 500), 1e-12);
  EXPECT_LE(symmetrized_check(14, chi4(), 2.0, 10000), 1e-12);
  EXPECT_THROW(symmetrized_check(5, chi4(), 1.5, 100), std::invalid_argument);
}

TEST(Symmetrized, StableUnderDoublingAtTwo) {
  // the grouped s = 2 series converges absolutely, so doubling M moves it little
  double a = 0, b = 0;
  for (std::int64_t m = 3; m <= 4000; ++m) {
    int x = chi4()(m);
    if (!x) continue;
    double n = static_cast<double>(m * m - 5), H = hurwitz(static_cast<std::uint64_t>(m * m - 5)).to_double();
    double t = H * m * x * (std::pow(n, -2.0) - std::pow(static_cast<double>(m), -4.0));
    if (m <= 2000) a += t;
    b += t;
  }
  EXPECT_LT(std::fabs(a - b), 1e-6);
}
