#pragma once

// Shared evaluation of the integrals that appear throughout the library:
//
//   \int |m(z)|^p (1+|z|)^{-p [kink]} exp(-c|z|^2 + Re(L z) + K) dm(z)
//
// with m an EntireSymbol. The quadratic part is completed around its peak so
// the quadrature weight is centered where the mass is.

#include "fockops/quadrature.hpp"
#include "fockops/symbols.hpp"

namespace fockops::detail {

struct GaussianForm {
  double decay = 1.0;
  cplx linear{0.0, 0.0};
  double constant = 0.0;
  EntireSymbol factor;
  double power = 1.0;
  bool kink = false;
};

struct FormResult {
  double value = 0.0;
  double error = 0.0;
  /// exp(constant) left the double range; value is +Inf.
  bool overflow = false;
};

/// Throws DivergentTail when p |q2| >= c.
FormResult integrate_form(const GaussianForm& form, const Tolerance& tol);

} // namespace fockops::detail
