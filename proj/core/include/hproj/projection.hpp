#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hproj/character.hpp"
#include "hproj/hurwitz_cache.hpp"
#include "hproj/power_series.hpp"

namespace hproj {

enum class Acceleration { none, pairing };
enum class LogVariant { log_h, log_sqrt_h };
// corrected: prefactor h on the harmonic sum. printed: sqrt(pi) h.
enum class HarmonicNormalization { corrected, printed };

std::string to_string(Acceleration a);
std::string to_string(LogVariant v);
std::string to_string(HarmonicNormalization n);
Acceleration parse_acceleration(const std::string& s);
LogVariant parse_log_variant(const std::string& s);
HarmonicNormalization parse_harmonic_normalization(const std::string& s);

struct ProjectionConfig {
  std::int64_t M = 10000;  // harmonic sum runs over floor(sqrt h) < m <= M
  Acceleration acceleration = Acceleration::pairing;
  LogVariant constant_log_variant = LogVariant::log_h;
  HarmonicNormalization harmonic = HarmonicNormalization::corrected;
  double tolerance = 1e-12;

  void validate() const;
};

struct RChiBreakdown {
  std::int64_t h = 0;
  double constant = 0, harmonic = 0, holomorphic = 0, sesquiharmonic = 0, total = 0;
  double uncertainty = 0;
};

struct HarmonicSum {
  double value = 0;
  double uncertainty = 0;
};

// Sesquiharmonic weight alpha_{n,m}, closed form.
double alpha_nm(double n, double m);

HarmonicSum harmonic_term(std::int64_t h, const DirichletCharacter& chi, const ProjectionConfig& cfg,
                          HurwitzCache& cache = hurwitz_cache());
double holomorphic_term(std::int64_t h, const DirichletCharacter& chi);
double sesqui_term(std::int64_t h, const DirichletCharacter& chi);
double constant_term(std::int64_t h, const DirichletCharacter& chi, const ProjectionConfig& cfg);

// Throws std::domain_error for even characters.
RChiBreakdown r_chi(std::int64_t h, const DirichletCharacter& chi, const ProjectionConfig& cfg,
                    HurwitzCache& cache = hurwitz_cache());
// Independent h values in parallel; H values are prefetched first.
std::vector<RChiBreakdown> r_chi_batch(std::span<const std::int64_t> hs, const DirichletCharacter& chi,
                                       const ProjectionConfig& cfg, unsigned threads,
                                       HurwitzCache& cache = hurwitz_cache());

// Coefficient streams of a weight 1/2 sesquiharmonic form:
// (d0 + d1 log y + d2 y^1/2 + d3 y^1/2 log y) + sum c(n) q^n
//   + sum b(n) beta(-4ny) q^n + sum a(n) alpha(4ny) q^n.
struct SesquiCoefficients {
  std::array<double, 4> d{};
  std::map<std::int64_t, double> c;          // n != 0; n < 0 is the principal part
  std::map<std::int64_t, double> b;          // finitely many entries, any sign
  std::function<double(std::int64_t)> b_tail;  // b(n) for n < 0 not present in `b`
  std::map<std::int64_t, double> a;          // n >= 1
  std::int64_t complete_through = 0;         // c and a are exhaustive for 1..complete_through
  int twice_weight = 1;                      // 1 for weight 1/2, 3 for weight 3/2

  double c_at(std::int64_t n) const;
  double a_at(std::int64_t n) const;
  double b_at(std::int64_t n) const;
};

// g = sum_{m>=1} l(m) q^{m^2}; l(m) = 0 past the stored range.
struct CuspCoefficients {
  std::vector<double> l;  // l[m], index 0 unused

  double at(std::int64_t m) const {
    return m >= 1 && static_cast<std::size_t>(m) < l.size() ? l[static_cast<std::size_t>(m)] : 0.0;
  }
  // l(m) = chi(m) m for 1 <= m <= mmax.
  static CuspCoefficients from_character(const DirichletCharacter& chi, std::int64_t mmax);
};

// Holomorphic projection coefficients a_1..a_hmax of F g (a_0 = 0).
RealSeries project_general(const SesquiCoefficients& F, const CuspCoefficients& g, std::int64_t hmax,
                           const ProjectionConfig& cfg);
std::vector<RChiBreakdown> project_general_breakdown(const SesquiCoefficients& F, const CuspCoefficients& g,
                                                     std::int64_t hmax, const ProjectionConfig& cfg);

// Z: c(d) = h*(d)/sqrt d, a(n^2) = 2, b(n) = H(|n|)/sqrt|n| for n < 0 (callback),
// d = ((gamma - log 16 pi)/(4 pi), -1/(4 pi), 1/3, 0).
SesquiCoefficients z_coefficients(std::int64_t nmax, std::int64_t b_callback_limit,
                                  HurwitzCache& cache = hurwitz_cache());
// -1/12 + sum H(n) q^n as a weight 3/2 stream; rejected by project_general.
SesquiCoefficients zagier_coefficients(std::int64_t nmax, HurwitzCache& cache = hurwitz_cache());

}  // namespace hproj
