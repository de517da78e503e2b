#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fockops/error.hpp"
#include "fockops/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace fockops;
using std::numbers::pi;

TEST_CASE("gaussian integral of constants and radial moments") {
  const auto one = gaussian_integral([](cplx) { return cplx{1.0}; }, 1.0);
  CHECK(std::abs(one.value - pi) / pi < 1e-10);

  const auto r2 = gaussian_integral([](cplx z) { return cplx{std::norm(z)}; }, 1.0,
                                    Tolerance{}, IntegrandGrowth{0.0, 0.0, 2});
  CHECK(std::abs(r2.value - pi) / pi < 1e-10);

  // pi / c for other decays
  for (double c : {0.25, 2.0, 7.5}) {
    const auto r = gaussian_integral([](cplx) { return cplx{1.0}; }, c);
    CHECK(std::abs(r.value - pi / c) / (pi / c) < 1e-10);
  }
}

TEST_CASE("translated Gaussian integrates to pi") {
  const cplx w{3.0, 4.0};
  auto f = [w](cplx z) { return std::exp(std::norm(z) - std::norm(z - w)); };
  // e^{|z|^2 - |z-w|^2} = e^{2 Re(z conj w) - |w|^2}: linear growth 2|w|.
  const auto r = gaussian_integral(f, 1.0, Tolerance{},
                                   IntegrandGrowth{0.0, 2.0 * std::abs(w), 0});
  CHECK(std::abs(r.value - pi) / pi < 1e-10);

  // Same integral with the weight centered on w.
  const auto centered = gaussian_integral([](cplx) { return cplx{1.0}; },
                                          GaussianWeight{1.0, w});
  CHECK(std::abs(centered.value - pi) / pi < 1e-10);
}

TEST_CASE("monomial exactness z^m conj(z)^n") {
  for (double c : {0.5, 1.0, 2.0}) {
    for (int m = 0; m <= 8; ++m) {
      for (int n = 0; n <= 8; ++n) {
        auto f = [m, n](cplx z) { return std::pow(z, m) * std::pow(std::conj(z), n); };
        const auto r = gaussian_integral(f, c, Tolerance{}, IntegrandGrowth{0.0, 0.0, m + n});
        const double exact = m == n ? pi * std::tgamma(m + 1.0) / std::pow(c, m + 1) : 0.0;
        if (m == n)
          CHECK(std::abs(r.value - exact) / exact < 1e-10);
        else {
          // Zero up to rounding, measured against \int |z|^{m+n} e^{-c|z|^2}.
          const double scale = pi * std::tgamma(0.5 * (m + n) + 1.0) / std::pow(c, 0.5 * (m + n) + 1.0);
          CHECK(std::abs(r.value) < 1e-10 * scale);
        }
      }
    }
  }
}

TEST_CASE("translation property for sampled centers") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c = 1.3;
  const auto scheme = build_scheme(c, Tolerance{}, 0.0);
  const double half = 0.5 * scheme.truncation_radius();
  for (int trial = 0; trial < 5; ++trial) {
    const cplx w = half * cplx{u(rng), u(rng)} / std::sqrt(2.0);
    auto f = [w, c](cplx z) { return std::exp(c * (std::norm(z) - std::norm(z - w))); };
    const auto r = gaussian_integral(f, c, Tolerance{},
                                     IntegrandGrowth{0.0, 2.0 * c * std::abs(w), 0});
    CHECK(std::abs(r.value - pi / c) / (pi / c) < 1e-8);
  }
}

TEST_CASE("refinement error is non-increasing on smooth integrands") {
  auto f = [](cplx z) { return std::cos(z.real()) * std::exp(0.3 * z.imag()) + std::norm(z); };
  Tolerance tol;
  tol.rel_tol = 1e-14;
  tol.abs_tol = 1e-15;
  tol.max_refinements = 3;
  try {
    const auto r = gaussian_integral(f, 1.0, tol, IntegrandGrowth{0.0, 0.3, 2});
    for (std::size_t i = 1; i < r.error_history.size(); ++i)
      CHECK(r.error_history[i] <= r.error_history[i - 1] + 1e-15);
  } catch (const NonConvergence&) {
    // Tolerance below double precision: only the history matters, rerun looser.
    tol.rel_tol = 1e-12;
    const auto r = gaussian_integral(f, 1.0, tol, IntegrandGrowth{0.0, 0.3, 2});
    for (std::size_t i = 1; i < r.error_history.size(); ++i)
      CHECK(r.error_history[i] <= r.error_history[i - 1] + 1e-15);
  }
}

TEST_CASE("build_scheme tail radius") {
  Tolerance tol;
  tol.abs_tol = 1e-12;

  const auto s = build_scheme(1.0, tol, 0.0);
  CHECK(s.truncation_radius() >= std::sqrt(std::log(1e12)) - 1e-9);
  CHECK(s.truncation_radius() < std::sqrt(std::log(1e12)) + 1e-6);

  CHECK_THROWS_AS(build_scheme(1.0, tol, 1.0), DivergentTail);
  CHECK_THROWS_AS(build_scheme(1.0, tol, 1.5), DivergentTail);

  // e^{-1.5 R^2} (1+R)^10 < 1e-12, checked by brute-force scan of the bound.
  const auto t = build_scheme(2.0, tol, 0.5, 10);
  const double radius = t.truncation_radius();
  auto bound = [](double r) { return std::exp(-1.5 * r * r) * std::pow(1.0 + r, 10); };
  CHECK(bound(radius) < 1e-12 * (1.0 + 1e-9));
  double scan = 0.0;
  for (double r = 20.0; r > 0.0; r -= 1e-4) {
    if (bound(r) >= 1e-12) {
      scan = r;
      break;
    }
  }
  CHECK(radius >= scan);
  CHECK(radius - scan < 1e-3);
}

TEST_CASE("scheme invariants") {
  const auto s = build_scheme(1.0, Tolerance{}, 0.0);
  CHECK(s.angular_count() >= 4);
  CHECK(s.angular_count() % 2 == 0);
  const auto& nodes = s.radial_nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    CHECK(nodes[i].weight > 0.0);
    CHECK(nodes[i].radius < s.truncation_radius());
    if (i > 0) CHECK(nodes[i].radius > nodes[i - 1].radius);
  }
  const auto r = s.refined();
  CHECK(r.radial_nodes().size() == 2 * nodes.size());
  CHECK(r.angular_count() == 2 * s.angular_count());
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(gaussian_integral([](cplx) { return cplx{NAN, 0.0}; }, 1.0), InvalidIntegrand);
  CHECK_THROWS_AS(gaussian_integral([](cplx) { return cplx{1.0}; }, -1.0), PreconditionError);

  // A jump across a line converges only algebraically.
  Tolerance tol;
  tol.max_refinements = 2;
  CHECK_THROWS_AS(
      gaussian_integral([](cplx z) { return cplx{z.real() > 0.3 ? 1.0 : 0.0}; }, 1.0, tol),
      NonConvergence);

  Tolerance bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
}
