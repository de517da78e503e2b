#include "fockops/fock_core.hpp"

#include "fockops/error.hpp"
#include "gaussian_form.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fockops {

void FockParams::validate() const {
  if (!(p > 0.0) || !std::isfinite(p)) throw PreconditionError("p must be positive");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw PreconditionError("alpha must be positive");
}

KernelValue kernel_eval(cplx w, cplx z, double alpha, bool normalized) {
  if (!(alpha > 0.0)) throw PreconditionError("alpha must be positive");
  cplx exponent = alpha * std::conj(w) * z;
  if (normalized) exponent -= 0.5 * alpha * std::norm(w);
  // log(DBL_MAX) ~ 709.78
  if (exponent.real() > 709.0)
    return {cplx{std::numeric_limits<double>::infinity(), 0.0}, true};
  return {std::exp(exponent), false};
}

EntireSymbol normalized_kernel(cplx w, double alpha) {
  return EntireSymbol(Polynomial::constant(1.0),
                      Polynomial({-0.5 * alpha * std::norm(w), alpha * std::conj(w)}));
}

NormResult fock_norm(const EntireSymbol& f, const FockParams& params, const Tolerance& tol) {
  params.validate();
  detail::GaussianForm form;
  form.decay = params.decay();
  form.factor = f;
  form.power = params.p;
  try {
    const auto r = detail::integrate_form(form, tol);
    const double norm = params.p * params.alpha / (2.0 * std::numbers::pi);
    const double integral = norm * r.value;
    const double value = std::pow(integral, 1.0 / params.p);
    const double error = integral > 0.0 ? value * norm * r.error / (params.p * integral) : 0.0;
    return {value, std::isfinite(value), error};
  } catch (const DivergentTail&) {
    return {std::numeric_limits<double>::infinity(), false, 0.0};
  }
}

NormResult derivative_functional(const EntireSymbol& f, const FockParams& params,
                                 const Tolerance& tol) {
  params.validate();
  detail::GaussianForm form;
  form.decay = params.decay();
  form.factor = f.derivative();
  form.power = params.p;
  form.kink = true;
  try {
    const auto r = detail::integrate_form(form, tol);
    const double norm = params.p * params.alpha / (2.0 * std::numbers::pi);
    const double total = std::pow(std::abs(f(0.0)), params.p) + norm * r.value;
    const double value = std::pow(total, 1.0 / params.p);
    const double error = total > 0.0 ? value * norm * r.error / (params.p * total) : 0.0;
    return {value, std::isfinite(value), error};
  } catch (const DivergentTail&) {
    return {std::numeric_limits<double>::infinity(), false, 0.0};
  }
}

cplx monomial_gram(int m, int n, double alpha) {
  if (m < 0 || n < 0) throw PreconditionError("monomial indices must be non-negative");
  if (!(alpha > 0.0)) throw PreconditionError("alpha must be positive");
  if (m != n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - n * std::log(alpha));
}

double basis_scale(int n, double alpha) {
  return std::exp(0.5 * (n * std::log(alpha) - std::lgamma(n + 1.0)));
}

} // namespace fockops
