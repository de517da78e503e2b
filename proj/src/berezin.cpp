#include "fockops/berezin.hpp"

#include "fockops/error.hpp"
#include "gaussian_form.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

namespace fockops {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Far annuli used for the slope fit.
constexpr int kSlopeAnnuli = 4;
// s * slope must clear -2 by this much before B^s counts as integrable.
constexpr double kIntegrabilityMargin = 0.1;
constexpr int kPanelNodes = 16;
constexpr int kPanelAngles = 32;

void check_exponent(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw PreconditionError("exponent must be positive");
}

// Max of B over one annulus; +Inf if any node diverges or overflows.
double ring_max(const SymbolPair& pair, double p, double radius, int angles,
                const Tolerance& tol, std::vector<double>* values, bool& divergent) {
  double best = 0.0;
  for (int j = 0; j < angles; ++j) {
    const cplx w = std::polar(radius, 2.0 * std::numbers::pi * j / angles);
    const auto b = berezin_eval(pair, p, w, tol);
    divergent = divergent || b.divergent;
    if (values) values->push_back(b.value);
    best = std::max(best, b.value);
  }
  return best;
}

} // namespace

double far_field_slope(const std::vector<double>& radii, const std::vector<double>& maxima) {
  const std::size_t n = maxima.size();
  if (n < 2) return 0.0;
  const std::size_t first = n > kSlopeAnnuli ? n - kSlopeAnnuli : 0;
  for (std::size_t i = first; i < n; ++i) {
    if (std::isinf(maxima[i])) return kInf;
    if (maxima[i] <= 0.0) return -kInf;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(n - first);
  for (std::size_t i = first; i < n; ++i) {
    const double x = std::log2(radii[i]);
    const double y = std::log2(maxima[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

BerezinValue berezin_eval(const SymbolPair& pair, double p, cplx w, const Tolerance& tol) {
  check_exponent(p);
  if (pair.weight_is_zero()) return {};
  const double c = 0.5 * p * pair.alpha();
  const cplx a = pair.psi().a;
  const cplx b = pair.psi().b;

  // 2 Re(psi(z) conj w) = Re(2 a conj(w) z) + 2 Re(b conj w).
  detail::GaussianForm form;
  form.decay = c;
  form.linear = 2.0 * c * a * std::conj(w);
  form.constant = c * (2.0 * (b * std::conj(w)).real() - std::norm(w));
  form.factor = pair.multiplier();
  form.power = p;
  form.kink = pair.weight_has_kink();

  BerezinValue out;
  try {
    const auto r = detail::integrate_form(form, tol);
    out.value = r.value;
    out.error = r.error;
    out.overflow = r.overflow;
  } catch (const DivergentTail&) {
    out.value = kInf;
    out.error = kInf;
    out.divergent = true;
  }
  return out;
}

double berezin_at(const SymbolPair& pair, double p, cplx w, const Tolerance& tol) {
  return berezin_eval(pair, p, w, tol).value;
}

void GridSpec::validate() const {
  if (!(r_min > 0.0)) throw PreconditionError("grid r_min must be positive");
  if (w_max < 0.0) throw PreconditionError("grid w_max must be non-negative");
  if (w_max > 0.0 && w_max <= r_min) throw PreconditionError("grid w_max must exceed r_min");
  if (radii < 2) throw PreconditionError("grid needs at least two radii");
  if (angles < 1) throw PreconditionError("grid needs at least one angle");
  if (far_annuli < 0) throw PreconditionError("far_annuli must be non-negative");
}

cplx BerezinProfile::point(std::size_t i, std::size_t j) const {
  return std::polar(radii[i], 2.0 * std::numbers::pi * static_cast<double>(j) / grid.angles);
}

BerezinProfile berezin_profile(const SymbolPair& pair, double p, const GridSpec& grid,
                               const Tolerance& tol) {
  check_exponent(p);
  grid.validate();
  BerezinProfile prof;
  prof.p = p;
  prof.grid = grid;
  const double w_max = grid.resolved_w_max(pair.alpha());
  if (w_max <= grid.r_min) throw PreconditionError("grid w_max must exceed r_min");
  prof.grid.w_max = w_max;

  const double ratio = std::pow(w_max / grid.r_min, 1.0 / (grid.radii - 1));
  for (int i = 0; i < grid.radii; ++i)
    prof.radii.push_back(i + 1 == grid.radii ? w_max : grid.r_min * std::pow(ratio, i));

  prof.values.reserve(static_cast<std::size_t>(grid.radii) * grid.angles);
  for (double r : prof.radii)
    prof.annulus_max.push_back(ring_max(pair, p, r, grid.angles, tol, &prof.values, prof.unbounded));

  std::size_t best = 0;
  for (std::size_t k = 0; k < prof.values.size(); ++k)
    if (prof.values[k] > prof.values[best]) best = k;
  prof.sup = prof.values[best];
  prof.argmax = prof.point(best / grid.angles, best % grid.angles);
  prof.tail_max = prof.annulus_max.back();
  const double prev = prof.annulus_max[prof.annulus_max.size() - 2];
  prof.growth_ratio = prev > 0.0 ? prof.tail_max / prev : (prof.tail_max > 0.0 ? kInf : 0.0);

  for (int j = 1; j <= grid.far_annuli; ++j) {
    const double r = w_max * std::ldexp(1.0, j);
    prof.far_radii.push_back(r);
    prof.far_max.push_back(ring_max(pair, p, r, grid.angles, tol, nullptr, prof.unbounded));
  }
  prof.far_slope = far_field_slope(prof.far_radii, prof.far_max);
  return prof;
}

VanishingEvidence vanishes_at_infinity(const BerezinProfile& profile, double eps) {
  if (profile.unbounded) throw PreconditionError("vanishes_at_infinity: profile is unbounded");
  VanishingEvidence ev;
  ev.annulus_max = profile.annulus_max;
  ev.annulus_max.insert(ev.annulus_max.end(), profile.far_max.begin(), profile.far_max.end());
  ev.far_slope = profile.far_slope;

  const auto& am = profile.annulus_max;
  const std::size_t n = am.size();
  bool settling = true;
  for (std::size_t i = n >= 3 ? n - 3 : 0; i + 1 < n; ++i) settling = settling && am[i + 1] <= am[i];
  ev.threshold_test =
      settling && profile.tail_max < eps * std::max(profile.sup, kVanishingFloor);
  ev.decay_test = !profile.far_max.empty() && profile.far_slope < -2.0 * profile.p / 3.0;
  ev.vanishes = ev.threshold_test || ev.decay_test;
  return ev;
}

bool power_integrable(const BerezinProfile& profile, double s) {
  if (profile.unbounded) return false;
  if (profile.far_max.empty()) return profile.tail_max < kVanishingEps * profile.sup;
  return s * profile.far_slope < -2.0 - kIntegrabilityMargin;
}

PowerIntegral lp_integral(const SymbolPair& pair, double q, double s, const Tolerance& tol) {
  check_exponent(q);
  if (!(s > 0.0)) throw PreconditionError("lp_integral: s must be positive");
  PowerIntegral out;
  if (pair.weight_is_zero()) return out;

  const auto prof = berezin_profile(pair, q, GridSpec{}, tol);
  if (!power_integrable(prof, s)) {
    out.integral = out.value = kInf;
    out.finite = false;
    return out;
  }

  // Polar quadrature over panels [0, h], [h, 2h], [2h, 4h], ... out to the far
  // field, with a power-law tail beyond when B decays only algebraically.
  const auto& gl = gauss_legendre(kPanelNodes);
  const double h = 0.5 / std::sqrt(pair.alpha());
  const double r_end = prof.far_radii.back();
  double total = 0.0;
  double outer_avg = 0.0;
  double lo = 0.0, hi = h;
  while (lo < r_end) {
    double panel = 0.0;
    for (const auto& node : gl) {
      const double r = lo + 0.5 * (hi - lo) * (node.radius + 1.0);
      double ring = 0.0;
      for (int j = 0; j < kPanelAngles; ++j) {
        const double b = berezin_at(pair, q, std::polar(r, 2.0 * std::numbers::pi * j / kPanelAngles), tol);
        if (!std::isfinite(b)) {
          out.integral = out.value = kInf;
          out.finite = false;
          return out;
        }
        ring += std::pow(b, s);
      }
      panel += 0.5 * (hi - lo) * node.weight * r * ring * (2.0 * std::numbers::pi / kPanelAngles);
    }
    total += panel;
    double edge = 0.0;
    for (int j = 0; j < kPanelAngles; ++j)
      edge += std::pow(berezin_at(pair, q, std::polar(hi, 2.0 * std::numbers::pi * j / kPanelAngles), tol), s);
    outer_avg = edge / kPanelAngles;
    lo = hi;
    hi *= 2.0;
    if (panel <= 1e-16 * total && 2.0 * std::numbers::pi * outer_avg * lo * lo <= 1e-16 * total) {
      outer_avg = 0.0;
      break;
    }
  }
  // \int_R^\infty 2 pi r (avg B^s(R)) (r/R)^{s slope} dr
  const double exponent = s * prof.far_slope;
  if (outer_avg > 0.0 && std::isfinite(exponent))
    total += 2.0 * std::numbers::pi * outer_avg * lo * lo / -(2.0 + exponent);

  out.integral = total;
  out.value = std::pow(total, 1.0 / (s * q));
  return out;
}

double hilbert_schmidt_integral(const SymbolPair& pair, const Tolerance& tol) {
  if (pair.weight_is_zero()) return 0.0;
  const double alpha = pair.alpha();
  const cplx a = pair.psi().a;
  const cplx b = pair.psi().b;
  const double decay = alpha * (1.0 - std::norm(a));
  if (!(decay > 0.0)) return kInf;

  // alpha|az + b|^2 - alpha|z|^2 = -decay|z|^2 + Re(2 alpha a conj(b) z) + alpha|b|^2
  detail::GaussianForm form;
  form.decay = decay;
  form.linear = 2.0 * alpha * a * std::conj(b);
  form.constant = alpha * std::norm(b);
  form.factor = pair.multiplier();
  form.power = 2.0;
  form.kink = pair.weight_has_kink();
  try {
    return detail::integrate_form(form, tol).value;
  } catch (const DivergentTail&) {
    return kInf;
  }
}

void write_profile_csv(const BerezinProfile& profile, std::ostream& out) {
  out << "w_re,w_im,value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < profile.radii.size(); ++i) {
    for (int j = 0; j < profile.grid.angles; ++j) {
      const cplx w = profile.point(i, j);
      out << w.real() << ',' << w.imag() << ',' << profile.values[i * profile.grid.angles + j] << '\n';
    }
  }
}

} // namespace fockops
