#include "fockops/quadrature.hpp"

#include "fockops/error.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace fockops {

namespace {

constexpr int kInitialRadial = 32;
constexpr int kInitialAngular = 32;
// Upper bound on radial x angular nodes of a single level.
constexpr long kNodeBudget = 1L << 24;
constexpr double kRoundingFactor = 256.0;

int round_up_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

} // namespace

void Tolerance::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0) || !(abs_tol > 0.0 && abs_tol < 1.0))
    throw PreconditionError("tolerances must lie in (0, 1)");
  if (max_refinements < 1)
    throw PreconditionError("max_refinements must be positive");
}

const std::vector<RadialNode>& gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, std::vector<RadialNode>> cache;

  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  // legendre_p_zeros returns the non-negative half of the zeros.
  const auto zeros = boost::math::legendre_p_zeros<double>(order);
  std::vector<RadialNode> rule;
  rule.reserve(order);
  for (double x : zeros) {
    const double dp = boost::math::legendre_p_prime(order, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.push_back({x, w});
    if (x != 0.0) rule.push_back({-x, w});
  }
  std::sort(rule.begin(), rule.end(),
            [](const RadialNode& a, const RadialNode& b) { return a.radius < b.radius; });
  return cache.emplace(order, std::move(rule)).first->second;
}

QuadratureScheme::QuadratureScheme(GaussianWeight weight, double truncation_radius,
                                   int radial_count, int angular_count)
    : weight_(weight), radius_(truncation_radius), angular_count_(angular_count) {
  if (!(weight.decay > 0.0)) throw PreconditionError("decay must be positive");
  if (!(truncation_radius > 0.0)) throw PreconditionError("truncation radius must be positive");
  if (angular_count < 4 || angular_count % 2 != 0)
    throw PreconditionError("angular count must be even and at least 4");

  const auto& gl = gauss_legendre(radial_count);
  radial_.reserve(gl.size());
  const double half = 0.5 * truncation_radius;
  for (const auto& node : gl) radial_.push_back({half * (node.radius + 1.0), half * node.weight});
}

cplx QuadratureScheme::apply(const std::function<cplx(cplx)>& f) const {
  double ignored = 0.0;
  return apply(f, ignored);
}

cplx QuadratureScheme::apply(const std::function<cplx(cplx)>& f, double& magnitude) const {
  const double dtheta = 2.0 * std::numbers::pi / angular_count_;
  std::vector<cplx> unit(angular_count_);
  for (int j = 0; j < angular_count_; ++j) unit[j] = std::polar(1.0, j * dtheta);

  cplx total{0.0, 0.0};
  magnitude = 0.0;
  for (const auto& node : radial_) {
    const double gauss = std::exp(-weight_.decay * node.radius * node.radius);
    if (gauss == 0.0) continue;
    cplx ring{0.0, 0.0};
    double ring_abs = 0.0;
    for (const cplx& u : unit) {
      const cplx v = f(weight_.center + node.radius * u);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream msg;
        msg << "non-finite sample at z = " << weight_.center + node.radius * u;
        throw InvalidIntegrand(msg.str());
      }
      ring += v;
      ring_abs += std::abs(v);
    }
    total += node.weight * node.radius * gauss * dtheta * ring;
    magnitude += node.weight * node.radius * gauss * dtheta * ring_abs;
  }
  return total;
}

QuadratureScheme QuadratureScheme::refined() const {
  return QuadratureScheme(weight_, radius_, 2 * static_cast<int>(radial_.size()),
                          2 * angular_count_);
}

double tail_radius(double decay, double center_modulus, const IntegrandGrowth& growth,
                   double abs_tol) {
  if (!(decay > 0.0)) throw PreconditionError("decay must be positive");
  if (growth.quadratic >= decay) {
    std::ostringstream msg;
    msg << "growth bound " << growth.quadratic << " >= Gaussian decay " << decay;
    throw DivergentTail(msg.str());
  }
  const double k = std::min(growth.poly_degree, 4 * kDegreeCap);
  const double net = growth.quadratic - decay;
  const double log_tol = std::log(abs_tol);
  auto bound = [&](double r) {
    return k * std::log1p(center_modulus + r) + net * r * r + growth.linear * r - log_tol;
  };
  auto slope = [&](double r) {
    return k / (1.0 + center_modulus + r) + 2.0 * net * r + growth.linear;
  };

  // The log-bound is concave; search past its maximum.
  double peak = 0.0;
  if (slope(0.0) > 0.0) {
    double hi = 1.0;
    while (slope(hi) > 0.0) hi *= 2.0;
    boost::math::tools::eps_tolerance<double> stop(40);
    auto [a, b] = boost::math::tools::bisect(slope, 0.0, hi, stop);
    peak = 0.5 * (a + b);
  }
  if (bound(peak) < 0.0) return std::max(peak, 1.0 / std::sqrt(decay));

  double lo = peak;
  double hi = std::max(2.0 * peak, 1.0);
  while (bound(hi) >= 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  boost::math::tools::eps_tolerance<double> stop(40);
  auto [a, b] = boost::math::tools::bisect(bound, lo, hi, stop);
  return b;
}

QuadratureScheme build_scheme(const GaussianWeight& weight, const Tolerance& tol,
                              const IntegrandGrowth& growth) {
  tol.validate();
  const double radius = tail_radius(weight.decay, std::abs(weight.center), growth, tol.abs_tol);
  // Node density tracks the number of Gaussian widths inside [0, R].
  const double widths = radius * std::sqrt(weight.decay - growth.quadratic);
  const int radial = round_up_pow2(std::max(kInitialRadial, static_cast<int>(std::ceil(4.0 * widths))));
  return QuadratureScheme(weight, radius, radial, kInitialAngular);
}

QuadratureScheme build_scheme(double decay, const Tolerance& tol, double growth_bound,
                              int poly_degree) {
  return build_scheme(GaussianWeight{decay, {}}, tol,
                      IntegrandGrowth{growth_bound, 0.0, poly_degree});
}

IntegralResult gaussian_integral(const Sampler& f, const GaussianWeight& weight,
                                 const Tolerance& tol, const IntegrandGrowth& growth) {
  auto scheme = build_scheme(weight, tol, growth);
  double magnitude = 0.0;
  cplx previous = scheme.apply(f, magnitude);
  IntegralResult result{previous, 0.0, {}};
  for (int level = 1; level <= tol.max_refinements; ++level) {
    const long nodes = 4L * static_cast<long>(scheme.radial_nodes().size()) * scheme.angular_count();
    if (nodes > kNodeBudget) break;
    scheme = scheme.refined();
    const cplx current = scheme.apply(f, magnitude);
    const double diff = std::abs(current - previous);
    result.value = current;
    result.error = diff;
    result.error_history.push_back(diff);
    // Differences under the rounding floor of the sum cannot shrink further.
    const double rounding = kRoundingFactor * std::numeric_limits<double>::epsilon() * magnitude;
    if (diff < std::max({tol.rel_tol * std::abs(current), tol.abs_tol, rounding})) return result;
    previous = current;
  }
  std::ostringstream msg;
  msg << "gaussian_integral: error " << result.error << " above tolerance after "
      << result.error_history.size() << " refinements (value " << result.value << ")";
  throw NonConvergence(msg.str());
}

IntegralResult gaussian_integral(const Sampler& f, double decay, const Tolerance& tol,
                                 const IntegrandGrowth& growth) {
  return gaussian_integral(f, GaussianWeight{decay, {}}, tol, growth);
}

} // namespace fockops
