#pragma once

#include "fockops/quadrature.hpp"

#include <complex>
#include <initializer_list>
#include <optional>
#include <vector>

namespace fockops {

/// Polynomial with complex coefficients, lowest degree first. Trailing zero
/// coefficients are trimmed; the zero polynomial has no coefficients and
/// degree -1.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  Polynomial(std::initializer_list<cplx> coeffs);

  static Polynomial constant(cplx c) { return Polynomial({c}); }
  static Polynomial monomial(int n, cplx c = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx coeff(int k) const;

  cplx operator()(cplx z) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cplx s, const Polynomial& a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
  void trim_and_check();
  std::vector<cplx> coeffs_;
};

/// psi(z) = a z + b.
struct LinearMap {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  static LinearMap identity() { return {}; }
  cplx operator()(cplx z) const { return a * z + b; }
  bool is_identity() const { return a == cplx{1.0, 0.0} && b == cplx{0.0, 0.0}; }
};

Polynomial differentiate(const Polynomial& s);
Polynomial antiderivative_at_zero(const Polynomial& s);
/// s(a z + b) by binomial expansion; DegreeCap past kDegreeCap.
Polynomial compose_linear(const Polynomial& s, const LinearMap& psi);

/// c(z) e^{q(z)} with deg q <= 2. A zero exponent means a plain polynomial.
class EntireSymbol {
public:
  EntireSymbol() = default;
  EntireSymbol(Polynomial poly); // NOLINT: implicit by design of the literal syntax
  EntireSymbol(Polynomial prefactor, Polynomial exponent);

  bool is_polynomial() const { return exponent_.is_zero(); }
  const Polynomial& prefactor() const { return prefactor_; }
  const Polynomial& exponent() const { return exponent_; }
  /// Degree of the prefactor (-1 for the zero symbol).
  int degree() const { return prefactor_.degree(); }
  bool is_zero() const { return prefactor_.is_zero(); }

  cplx operator()(cplx z) const;
  EntireSymbol derivative() const;

  /// Least mu >= 0 with |s|^p <= poly(|z|) e^{mu |z|^2}.
  double growth_bound(double p) const;
  /// Coefficient lambda of the e^{lambda |z|} factor in the same bound.
  double linear_growth(double p) const;

  /// First `count` Taylor coefficients in the orthonormal monomial basis of
  /// F^2_alpha, i.e. s = sum_k t_k e_k with e_k = sqrt(alpha^k / k!) z^k.
  std::vector<cplx> basis_coefficients(int count, double alpha) const;

  friend bool operator==(const EntireSymbol&, const EntireSymbol&) = default;

private:
  Polynomial prefactor_;
  Polynomial exponent_;
};

enum class OperatorKind { VolterraComposition, WeightedComposition };

/// The operator being studied: V_(g,psi) f = \int_0^z f(psi) g' or
/// (u C_psi) f = u (f o psi), acting on the alpha-weighted Fock spaces.
class SymbolPair {
public:
  static SymbolPair volterra(EntireSymbol g, LinearMap psi, double alpha);
  static SymbolPair weighted(EntireSymbol u, LinearMap psi, double alpha);

  OperatorKind kind() const { return kind_; }
  const EntireSymbol& symbol() const { return symbol_; }
  const LinearMap& psi() const { return psi_; }
  double alpha() const { return alpha_; }

  /// g' for the Volterra kind, u for the weighted kind.
  const EntireSymbol& multiplier() const { return multiplier_; }

  /// |g'(z)| / (1 + |z|) or |u(z)|.
  double weight_at(cplx z) const;
  /// True when the weight has the |z| kink at the origin.
  bool weight_has_kink() const { return kind_ == OperatorKind::VolterraComposition; }
  /// Growth model of weight(z)^p: polynomial degree, e^{mu|z|^2}, e^{lambda|z|}.
  IntegrandGrowth weight_growth(double p) const;
  /// True when the weight vanishes identically.
  bool weight_is_zero() const { return multiplier_.is_zero(); }

private:
  SymbolPair(OperatorKind kind, EntireSymbol symbol, LinearMap psi, double alpha);

  OperatorKind kind_;
  EntireSymbol symbol_;
  EntireSymbol multiplier_;
  LinearMap psi_;
  double alpha_;
};

double weight_at(const SymbolPair& pair, cplx z);

/// sqrt(binomial(n, k)), the factor in e_j e_k = sqrt(C(j+k, j)) e_{j+k}.
double sqrt_binomial(int n, int k);

/// Product of two functions given by basis coefficients, truncated to
/// `count` terms.
std::vector<cplx> basis_multiply(const std::vector<cplx>& a, const std::vector<cplx>& b,
                                 int count);
double growth_bound(const EntireSymbol& s, double p);

} // namespace fockops
