#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace fockops {

using cplx = std::complex<double>;

/// Largest polynomial degree accepted anywhere in the library; also the
/// degree cap used in quadrature tail bounds.
inline constexpr int kDegreeCap = 64;

struct Tolerance {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_refinements = 10;

  void validate() const;
};

/// Gaussian weight e^{-decay |z - center|^2}.
struct GaussianWeight {
  double decay = 1.0;
  cplx center{0.0, 0.0};
};

/// Growth model of a sampler F relative to the weight center z0:
///   |F(z)| <= (1 + |z0| + r)^poly_degree * e^{quadratic r^2 + linear r},
/// with r = |z - z0|.
struct IntegrandGrowth {
  double quadratic = 0.0;
  double linear = 0.0;
  int poly_degree = 0;
};

struct RadialNode {
  double radius;
  double weight;
};

/// Polar tensor rule: Gauss-Legendre in the radius on [0, R] and the uniform
/// periodic rule in the angle, both around `center`.
class QuadratureScheme {
public:
  QuadratureScheme(GaussianWeight weight, double truncation_radius,
                   int radial_count, int angular_count);

  const std::vector<RadialNode>& radial_nodes() const { return radial_; }
  int angular_count() const { return angular_count_; }
  double truncation_radius() const { return radius_; }
  double decay() const { return weight_.decay; }
  cplx center() const { return weight_.center; }

  /// One application of the rule to F(z) e^{-c|z - z0|^2}.
  cplx apply(const std::function<cplx(cplx)>& f) const;
  /// As above; `magnitude` receives the same rule applied to |F|.
  cplx apply(const std::function<cplx(cplx)>& f, double& magnitude) const;

  /// Same rule with twice the radial and angular node counts.
  QuadratureScheme refined() const;

private:
  GaussianWeight weight_;
  double radius_;
  int angular_count_;
  std::vector<RadialNode> radial_;
};

using Sampler = std::function<cplx(cplx)>;

struct IntegralResult {
  cplx value;
  double error;
  /// Successive differences, one per refinement level.
  std::vector<double> error_history;
};

/// Radius R with (1 + |z0| + R)^k e^{(mu - c) R^2 + lambda R} < abs_tol.
/// Throws DivergentTail when mu >= c.
double tail_radius(double decay, double center_modulus,
                   const IntegrandGrowth& growth, double abs_tol);

QuadratureScheme build_scheme(const GaussianWeight& weight,
                              const Tolerance& tol,
                              const IntegrandGrowth& growth);

/// Scheme for a weight centered at the origin and |F| <= poly_k e^{mu|z|^2}.
QuadratureScheme build_scheme(double decay, const Tolerance& tol,
                              double growth_bound, int poly_degree = 0);

/// \int_C F(z) e^{-c|z - z0|^2} dm(z), refining until two successive levels
/// agree to max(rel_tol |value|, abs_tol). Integrals that cancel to zero stop
/// once the difference falls under the rounding floor 256 eps \int |F|.
IntegralResult gaussian_integral(const Sampler& f, const GaussianWeight& weight,
                                 const Tolerance& tol = {},
                                 const IntegrandGrowth& growth = {});

/// \int_C F(z) e^{-c|z|^2} dm(z).
IntegralResult gaussian_integral(const Sampler& f, double decay,
                                 const Tolerance& tol = {},
                                 const IntegrandGrowth& growth = {});

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
const std::vector<RadialNode>& gauss_legendre(int order);

} // namespace fockops
