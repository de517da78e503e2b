#pragma once

#include "fockops/quadrature.hpp"
#include "fockops/symbols.hpp"

#include <iosfwd>
#include <vector>

namespace fockops {

/// B(w) = \int e^{c(2 Re(psi(z) conj w) - |w|^2 - |z|^2)} weight(z)^p dm(z), c = p alpha / 2.
///
/// Divergence of the integral is reported as data: `divergent` is set and
/// `value` is +Inf. `overflow` marks a finite integral beyond double range.
struct BerezinValue {
  double value = 0.0;
  double error = 0.0;
  bool divergent = false;
  bool overflow = false;

  bool finite() const { return !divergent && !overflow; }
};

BerezinValue berezin_eval(const SymbolPair& pair, double p, cplx w, const Tolerance& tol = {});

/// Convenience form of berezin_eval: +Inf on divergence or overflow.
double berezin_at(const SymbolPair& pair, double p, cplx w, const Tolerance& tol = {});

/// Geometric radii r_min..w_max times equispaced angles, plus a far field of
/// annuli at w_max * 2^j (j = 1..far_annuli) used to read off the growth rate.
struct GridSpec {
  double r_min = 0.25;
  /// 0 selects the default 8 / sqrt(alpha).
  double w_max = 0.0;
  int radii = 24;
  int angles = 16;
  int far_annuli = 8;

  void validate() const;
  double resolved_w_max(double alpha) const { return w_max > 0.0 ? w_max : 8.0 / std::sqrt(alpha); }
};

struct BerezinProfile {
  double p = 2.0;
  GridSpec grid;
  std::vector<double> radii;
  /// values[i * angles + j] at radii[i] e^{2 pi i j / angles}.
  std::vector<double> values;
  double sup = 0.0;
  cplx argmax{0.0, 0.0};
  /// Max over the outermost grid annulus.
  double tail_max = 0.0;
  /// Some node diverged: the transform is +Inf there.
  bool unbounded = false;

  /// Per-annulus maxima on the grid and in the far field.
  std::vector<double> annulus_max;
  std::vector<double> far_radii;
  std::vector<double> far_max;
  /// tail_max over the maximum of the previous annulus.
  double growth_ratio = 0.0;
  /// Least-squares slope of log2(far_max) against log2(radius) over the last
  /// four far annuli: B ~ |w|^slope. -Inf when the far field underflows to
  /// zero, +Inf when it overflows.
  double far_slope = 0.0;

  cplx point(std::size_t i, std::size_t j) const;
};

/// Least-squares slope of log2(maxima) against log2(radii) over the last four
/// entries; -Inf on underflow to zero, +Inf on overflow.
double far_field_slope(const std::vector<double>& radii, const std::vector<double>& maxima);

BerezinProfile berezin_profile(const SymbolPair& pair, double p, const GridSpec& grid = {},
                               const Tolerance& tol = {});

struct VanishingEvidence {
  bool vanishes = false;
  /// tail_max < eps max(sup, floor) with non-increasing outer maxima.
  bool threshold_test = false;
  /// Far-field decay is at least |w|^{-2p/3}, or the far field underflows.
  bool decay_test = false;
  std::vector<double> annulus_max;
  double far_slope = 0.0;
};

constexpr double kVanishingEps = 1e-4;
constexpr double kVanishingFloor = 1e-30;

VanishingEvidence vanishes_at_infinity(const BerezinProfile& profile, double eps = kVanishingEps);

/// Integrability of B^s read from the far-field slope: s * slope < -2 with a
/// margin, or Gaussian decay.
bool power_integrable(const BerezinProfile& profile, double s);

struct PowerIntegral {
  /// \int B^s dm (+Inf when not integrable).
  double integral = 0.0;
  /// (\int B^s dm)^{1 / (s q)}.
  double value = 0.0;
  bool finite = true;
};

/// \int_C B(w)^s dm(w) for the transform at exponent q.
PowerIntegral lp_integral(const SymbolPair& pair, double q, double s, const Tolerance& tol = {});

/// \int weight(z)^2 e^{alpha|psi(z)|^2 - alpha|z|^2} dm(z); +Inf when divergent.
/// For the weighted kind hs_norm^2 = (alpha / pi) times this value.
double hilbert_schmidt_integral(const SymbolPair& pair, const Tolerance& tol = {});

/// CSV with header w_re,w_im,value.
void write_profile_csv(const BerezinProfile& profile, std::ostream& out);

} // namespace fockops
