#include "semcom/lambert_w.hpp"

#include <cmath>
#include <stdexcept>

namespace semcom {

namespace {

// For very large arguments exp(w) overflows before w*exp(w) does not; solve
// the equivalent w + log(w) = log(x) with Newton instead.
double solve_log_form(double x) {
  const double lx = std::log(x);
  double w = lx - std::log(lx);
  for (int i = 0; i < 50; ++i) {
    const double f = w + std::log(w) - lx;
    const double step = f * w / (w + 1.0);
    w -= step;
    if (std::abs(f) <= 1e-14 * (1.0 + std::abs(lx))) break;
  }
  return w;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < 0.0)
    throw std::domain_error("lambert_w0: argument must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  if (x > 1e100) return solve_log_form(x);

  double w = std::log1p(x);
  for (int i = 0; i < 50; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= 1e-13 * std::fmax(1.0, x)) break;
    const double fp = ew * (1.0 + w);
    // Halley step: f'' = ew * (2 + w).
    const double denom = fp - f * (2.0 + w) / (2.0 * (1.0 + w));
    const double step = f / denom;
    w -= step;
    if (w < 0.0) w = 0.0;  // iterates stay on the principal branch
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

}  // namespace semcom
