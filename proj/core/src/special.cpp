#include "hproj/special.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

#include "hproj/errors.hpp"

namespace hproj {

namespace {

constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error, absval;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double k = kWgk[7] * fc, g = kWg[3] * fc, ka = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    double f1 = f(c - dx), f2 = f(c + dx);
    k += kWgk[j] * (f1 + f2);
    ka += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, k * h, std::abs((k - g) * h), ka * std::abs(h)};
}

constexpr int kMaxPanels = 20000;

}  // namespace

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0) return 2.0 - erfc(-x);
  if (x < 2.0) {
    // erf(x) = 2/sqrt(pi) e^{-x^2} sum 2^n x^{2n+1} / (1*3*...*(2n+1))
    double term = x, sum = x;
    for (int n = 1; n < 200; ++n) {
      term *= 2.0 * x * x / (2.0 * n + 1.0);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return 1.0 - 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x * x) * sum;
  }
  // erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), modified Lentz.
  constexpr double tiny = 1e-300;
  double fval = x, C = x, D = 0.0;
  for (int n = 1; n < 5000; ++n) {
    double an = 0.5 * n;
    D = x + an * D;
    if (D == 0.0) D = tiny;
    C = x + an / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    double delta = C * D;
    fval *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) / (std::sqrt(std::numbers::pi) * fval);
}

double upper_gamma_half(double x) {
  if (x < 0) throw std::invalid_argument("upper_gamma_half: x must be >= 0");
  return std::sqrt(std::numbers::pi) * erfc(std::sqrt(x));
}

double beta_fn(double y) {
  if (y < 0) throw std::invalid_argument("beta_fn: y must be >= 0");
  return erfc(std::sqrt(std::numbers::pi * y));
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("integrate: tol must be positive");
  std::priority_queue<Panel> heap;
  Panel first = gk15(f, a, b);
  long evals = 15;
  double value = first.value, error = first.error, absval = first.absval;
  heap.push(first);
  int panels = 1;
  while (error > tol * absval && error > 1e-300) {
    if (panels >= kMaxPanels) throw convergence_error("integrate: tolerance not met within panel budget");
    Panel worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) throw convergence_error("integrate: interval cannot be subdivided further");
    Panel l = gk15(f, worst.a, mid), r = gk15(f, mid, worst.b);
    evals += 30;
    ++panels;
    value += l.value + r.value - worst.value;
    error += l.error + r.error - worst.error;
    absval += l.absval + r.absval - worst.absval;
    heap.push(l);
    heap.push(r);
  }
  // Re-add from the panels to avoid drift in the running sums.
  double v = 0, e = 0;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  (void)value;
  return {v, e, evals};
}

QuadratureResult integrate_0_inf(const std::function<double(double)>& f, double tol) {
  auto head = integrate([&](double u) { return 2.0 * u * f(u * u); }, 0.0, 1.0, tol);
  QuadratureResult total = head;
  double lo = 1.0, A = 2.0;
  for (int iter = 0; iter < 60; ++iter) {
    auto piece = integrate(f, lo, A, tol);
    total.value += piece.value;
    total.error_estimate += piece.error_estimate;
    total.evaluations += piece.evaluations + 2;
    double fa = std::abs(f(A)), fh = std::abs(f(0.5 * A));
    double tail;
    if (fa == 0.0) {
      tail = 0.0;
    } else if (fh > fa) {
      double rate = std::log(fh / fa) / (0.5 * A);
      tail = fa / rate;
    } else {
      tail = std::numeric_limits<double>::infinity();
    }
    if (tail <= 0.1 * tol * std::abs(total.value)) {
      total.error_estimate += tail;
      return total;
    }
    lo = A;
    A *= 2.0;
  }
  throw convergence_error("integrate_0_inf: integrand does not decay fast enough");
}

QuadratureResult alpha_numeric(double y, double tol) {
  if (!(y > 0)) throw std::invalid_argument("alpha_numeric: y must be positive");
  const double py = std::numbers::pi * y;
  auto r = integrate_0_inf([py](double u) { return 2.0 * std::exp(-py * u * u) * std::log1p(u * u); }, tol);
  const double scale = std::sqrt(y) / (4.0 * std::numbers::pi);
  r.value *= scale;
  r.error_estimate *= scale;
  return r;
}

double hyp2f1(double a, double b, double c, double z) {
  if (c <= 0 && c == std::floor(c)) throw std::invalid_argument("hyp2f1: c must not be a non-positive integer");
  if (!(z < 1.0)) throw std::domain_error("hyp2f1: requires z < 1");
  if (z < 0) {
    double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * hyp2f1(a, c - b, c, w);
  }
  double term = 1.0, sum = 1.0;
  for (long n = 0; n < 10'000'000; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && n > 2) return sum;
  }
  throw convergence_error("hyp2f1: series did not converge");
}

QuadratureResult digamma_quadrature(double x, double tol) {
  if (!(x > 0)) throw std::invalid_argument("digamma_quadrature: x must be positive");
  auto r = integrate([x](double t) { return -std::expm1((x - 1.0) * std::log(t)) / (1.0 - t); }, 0.0, 1.0, tol);
  r.value -= kEulerGamma;
  return r;
}

}  // namespace hproj
