#pragma once

namespace semcom {

// Principal-branch Lambert W on [0, inf): returns w >= 0 with w*exp(w) == x
// to a relative residual of 1e-12. Initial guess log1p(x), refined by Halley
// iterations (at most 50). Throws std::domain_error for x < 0.
double lambert_w0(double x);

}  // namespace semcom
