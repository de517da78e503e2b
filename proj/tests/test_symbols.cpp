#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fockops/error.hpp"
#include "fockops/fock_core.hpp"
#include "fockops/symbols.hpp"

#include <cmath>
#include <random>

using namespace fockops;

namespace {

Polynomial random_polynomial(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> c(degree + 1);
  for (auto& x : c) x = {u(rng), u(rng)};
  return Polynomial(std::move(c));
}

} // namespace

TEST_CASE("differentiate") {
  const cplx a{2.0, -1.0}, b{0.5, 3.0}, c{7.0, 0.0};
  CHECK(differentiate(Polynomial{c, b, a}) == Polynomial{b, 2.0 * a});
  CHECK(differentiate(Polynomial{1.0}).is_zero());
  CHECK(differentiate(Polynomial::monomial(5, 0.2)) == Polynomial::monomial(4, 1.0));
}

TEST_CASE("compose_linear") {
  const cplx a{0.3, 0.7}, b{-1.0, 2.0};
  const auto sq = compose_linear(Polynomial::monomial(2), LinearMap{a, b});
  CHECK(std::abs(sq.coeff(2) - a * a) < 1e-15);
  CHECK(std::abs(sq.coeff(1) - 2.0 * a * b) < 1e-15);
  CHECK(std::abs(sq.coeff(0) - b * b) < 1e-15);

  const Polynomial s{1.0, cplx{0.0, 2.0}, 3.0};
  CHECK(compose_linear(s, LinearMap::identity()) == s);

  // (z^3 - z) o (2z + 1) = 8z^3 + 12z^2 + 4z, checked against pointwise evaluation.
  const Polynomial cubic{0.0, -1.0, 0.0, 1.0};
  const LinearMap psi{2.0, 1.0};
  const auto composed = compose_linear(cubic, psi);
  CHECK(composed == Polynomial{0.0, 4.0, 12.0, 8.0});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 5; ++i) {
    const cplx z{u(rng), u(rng)};
    CHECK(std::abs(composed(z) - cubic(psi(z))) < 1e-12 * (1.0 + std::abs(composed(z))));
  }

  CHECK_THROWS_AS(compose_linear(Polynomial::monomial(40), LinearMap{}) * Polynomial::monomial(40),
                  DegreeCap);
}

TEST_CASE("compose_linear respects evaluation at random points") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_polynomial(rng, 1 + trial % 6);
    const LinearMap psi{{u(rng), u(rng)}, {u(rng), u(rng)}};
    const auto composed = compose_linear(s, psi);
    for (int i = 0; i < 100; ++i) {
      const cplx z{u(rng), u(rng)};
      const cplx expect = s(psi(z));
      CHECK(std::abs(composed(z) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("antiderivative at zero") {
  CHECK(antiderivative_at_zero(Polynomial{1.0}) == Polynomial{0.0, 1.0});
  for (int n = 0; n < 6; ++n)
    CHECK(antiderivative_at_zero(Polynomial::monomial(n)) == Polynomial::monomial(n + 1, 1.0 / (n + 1)));

  // V_(g,psi) 1 with g = z^2: \int_0^z 2w dw = z^2 whatever psi is.
  const Polynomial g = Polynomial::monomial(2);
  const auto image = antiderivative_at_zero(compose_linear(Polynomial{1.0}, LinearMap{0.3, 2.0}) *
                                            differentiate(g));
  CHECK(image == g);

  std::mt19937_64 rng(5);
  for (int d = 0; d < 10; ++d) {
    const auto s = random_polynomial(rng, d);
    const auto back = differentiate(antiderivative_at_zero(s));
    REQUIRE(back.degree() == s.degree());
    for (int k = 0; k <= d; ++k) CHECK(std::abs(back.coeff(k) - s.coeff(k)) < 1e-15);
  }
}

TEST_CASE("weight_at") {
  const auto vz = SymbolPair::volterra(Polynomial::monomial(1), LinearMap{}, 1.0);
  CHECK(vz.weight_at(1.0) == doctest::Approx(0.5));
  CHECK(vz.weight_at(cplx{0.0, 3.0}) == doctest::Approx(0.25));

  const auto u1 = SymbolPair::weighted(Polynomial{1.0}, LinearMap{0.5, 0.0}, 1.0);
  for (double r : {0.0, 1.0, 10.0}) CHECK(u1.weight_at(cplx{r, -r}) == 1.0);

  const auto vz2 = SymbolPair::volterra(Polynomial::monomial(2), LinearMap{}, 1.0);
  CHECK(vz2.weight_at(cplx{0.0, 3.0}) == doctest::Approx(1.5));

  const auto constant = SymbolPair::volterra(Polynomial{cplx{4.0, 1.0}}, LinearMap{}, 1.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 50; ++i) {
    const cplx z{u(rng), u(rng)};
    CHECK(constant.weight_at(z) == 0.0);
    CHECK(vz2.weight_at(z) >= 0.0);
  }
  CHECK(constant.weight_is_zero());
}

TEST_CASE("growth_bound") {
  CHECK(growth_bound(EntireSymbol(Polynomial{1.0, 2.0, 3.0}), 2.0) == 0.0);

  for (double gamma : {0.0, 0.4, 1.2}) {
    for (double p : {1.0, 2.0, 3.5}) {
      const EntireSymbol s(Polynomial{1.0}, Polynomial{0.0, 0.0, gamma / 2.0});
      CHECK(growth_bound(s, p) == doctest::Approx(p * gamma / 2.0));
    }
  }

  // z^3 e^{0.3 z^2}: |s|^2 <= poly e^{0.6|z|^2}; slower exponents blow up on
  // the real axis.
  const EntireSymbol s(Polynomial::monomial(3), Polynomial{0.0, 0.0, 0.3});
  const double mu = growth_bound(s, 2.0);
  CHECK(mu == doctest::Approx(0.6));
  // |s|^2 e^{-(mu + 0.05)|z|^2} -> 0 along every ray.
  auto damped = [&](cplx z) {
    return std::exp(6.0 * std::log(std::abs(z)) + 0.6 * (z * z).real() - (mu + 0.05) * std::norm(z));
  };
  for (double theta = 0.0; theta < 6.3; theta += 0.25) {
    const cplx dir = std::polar(1.0, theta);
    CHECK(damped(60.0 * dir) < 1e-3 * std::max(damped(5.0 * dir), 1e-300) + 1e-300);
  }
  CHECK(std::pow(std::abs(s(10.0)), 2) * std::exp(-0.31 * 100.0) > 1e10);
}

TEST_CASE("ExpPoly normalization and derivative") {
  const EntireSymbol trivial(Polynomial{2.0}, Polynomial{});
  CHECK(trivial.is_polynomial());
  const EntireSymbol folded(Polynomial{1.0, 1.0}, Polynomial{std::log(3.0)});
  CHECK(folded.is_polynomial());
  CHECK(std::abs(folded.prefactor().coeff(1) - 3.0) < 1e-14);
  CHECK_THROWS_AS(EntireSymbol(Polynomial{1.0}, Polynomial::monomial(3)), DegreeCap);

  // d/dz [z e^{0.5 z^2}] = (1 + z^2) e^{0.5 z^2}
  const EntireSymbol s(Polynomial::monomial(1), Polynomial{0.0, 0.0, 0.5});
  const auto ds = s.derivative();
  const cplx z{0.7, -0.4};
  CHECK(std::abs(ds(z) - (1.0 + z * z) * std::exp(0.5 * z * z)) < 1e-14);
}

TEST_CASE("basis coefficients reproduce the symbol") {
  const double alpha = 1.5;
  const std::vector<EntireSymbol> family{
      EntireSymbol(Polynomial{1.0, cplx{0.0, 2.0}, -0.5}),
      EntireSymbol(Polynomial{1.0, 2.0}, Polynomial{0.1, cplx{0.2, 0.3}, 0.25}),
      normalized_kernel(cplx{1.0, -0.5}, alpha),
  };
  for (const auto& s : family) {
    const int count = 80;
    const auto t = s.basis_coefficients(count, alpha);
    for (cplx z : {cplx{0.0, 0.0}, cplx{0.5, 0.3}, cplx{-1.2, 0.8}}) {
      cplx acc{0.0, 0.0};
      for (int k = 0; k < count; ++k) acc += t[k] * basis_scale(k, alpha) * std::pow(z, k);
      CHECK(std::abs(acc - s(z)) < 1e-12 * std::max(1.0, std::abs(s(z))));
    }
  }
}
