#include "gaussian_form.hpp"

#include "fockops/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fockops::detail {

namespace {

// Below this value of c|z0|^2 the |z| kink at the origin carries non-negligible
// mass, so the rule stays centered at 0 where the kink is a smooth function
// of the polar radius.
constexpr double kKinkCutoff = 25.0;
constexpr double kMaxLogConstant = 700.0;

} // namespace

FormResult integrate_form(const GaussianForm& form, const Tolerance& tol) {
  if (form.factor.is_zero()) return {};

  const double c = form.decay;
  const double p = form.power;
  const auto& pre = form.factor.prefactor();
  const auto& ex = form.factor.exponent();
  const cplx q0 = ex.coeff(0);
  const cplx q1 = ex.coeff(1);
  const cplx q2 = ex.coeff(2);

  const double mu = p * std::abs(q2);
  if (mu >= c) {
    std::ostringstream msg;
    msg << "integrand growth " << mu << " >= Gaussian decay " << c;
    throw DivergentTail(msg.str());
  }

  // Q(z) = -c|z|^2 + p Re(q2 z^2) + Re(lin z) peaks where c z - beta conj(z) = gamma.
  const cplx lin = form.linear + p * q1;
  const cplx beta = p * std::conj(q2);
  const cplx gamma = 0.5 * std::conj(lin);
  const cplx peak = (c * gamma + beta * std::conj(gamma)) / (c * c - mu * mu);
  auto quadratic = [&](cplx z) { return -c * std::norm(z) + p * (q2 * z * z).real() + (lin * z).real(); };

  cplx center = peak;
  if (form.kink && c * std::norm(peak) <= kKinkCutoff) center = 0.0;
  const double q_center = quadratic(center);
  const double log_constant = form.constant + p * q0.real() + q_center;
  const double kink_power = form.kink ? p : 0.0;
  const double inner_decay = c - mu;

  // Q(z) - Q(center) + (c - mu)|z - center|^2 is what the weight does not carry.
  auto sampler = [&](cplx z) -> cplx {
    double log_mod = p * std::log(std::abs(pre(z)));
    log_mod += quadratic(z) - q_center + inner_decay * std::norm(z - center);
    if (kink_power > 0.0) log_mod -= kink_power * std::log1p(std::abs(z));
    return std::exp(log_mod);
  };

  IntegrandGrowth growth;
  growth.linear = center == peak ? 0.0 : std::abs(lin);
  growth.poly_degree = static_cast<int>(std::ceil(p * std::max(pre.degree(), 0)));

  const auto integral = gaussian_integral(sampler, GaussianWeight{inner_decay, center}, tol, growth);
  const double raw = integral.value.real();

  FormResult result;
  if (log_constant > kMaxLogConstant) {
    result.overflow = raw > 0.0;
    result.value = raw > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    result.error = result.value;
    return result;
  }
  const double scale = std::exp(log_constant);
  result.value = raw * scale;
  result.error = integral.error * scale;
  return result;
}

} // namespace fockops::detail
