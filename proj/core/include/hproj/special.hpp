#pragma once

#include <functional>

namespace hproj {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

inline constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double euler_gamma() { return kEulerGamma; }

// Complementary error function: positive-term series below 2, Lentz continued fraction above.
double erfc(double x);
// Gamma(1/2, x) = sqrt(pi) erfc(sqrt x), x >= 0.
double upper_gamma_half(double x);
// Gamma(1/2, pi y) / sqrt(pi).
double beta_fn(double y);

// Adaptive Gauss-Kronrod (7/15) on [a, b]. Converged when the summed
// |K15 - G7| estimate is at most tol times the integral of |f|.
// Throws convergence_error when the panel budget runs out.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol);

// Integral over (0, inf) for integrands that decay exponentially. [0, 1] is
// mapped by y = u^2 (removes y^{-1/2} and softens log y); [1, A] grows by
// doubling until an exponential tail estimate is below tolerance. The tail
// estimate is folded into error_estimate, not into value.
QuadratureResult integrate_0_inf(const std::function<double(double)>& f, double tol);

// (sqrt y / 4 pi) int_0^inf t^{-1/2} e^{-pi y t} log(1 + t) dt, y > 0.
QuadratureResult alpha_numeric(double y, double tol = 1e-12);

// Gauss 2F1 for real z < 1; Pfaff transformation for z < 0.
double hyp2f1(double a, double b, double c, double z);

// digamma(x) = -gamma + int_0^1 (1 - t^{x-1}) / (1 - t) dt, x > 0.
QuadratureResult digamma_quadrature(double x, double tol = 1e-12);

}  // namespace hproj
