#include "fockops/symbols.hpp"

#include "fockops/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fockops {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  trim_and_check();
}

Polynomial::Polynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) {
  trim_and_check();
}

Polynomial Polynomial::monomial(int n, cplx c) {
  if (n < 0) throw PreconditionError("monomial degree must be non-negative");
  std::vector<cplx> coeffs(n + 1, cplx{0.0, 0.0});
  coeffs[n] = c;
  return Polynomial(std::move(coeffs));
}

void Polynomial::trim_and_check() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{0.0, 0.0}) coeffs_.pop_back();
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw PreconditionError("polynomial coefficients must be finite");
  if (degree() > kDegreeCap) {
    std::ostringstream msg;
    msg << "polynomial degree " << degree() << " exceeds cap " << kDegreeCap;
    throw DegreeCap(msg.str());
  }
}

cplx Polynomial::coeff(int k) const {
  return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : cplx{0.0, 0.0};
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> out(std::max(a.coeffs_.size(), b.coeffs_.size()), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.degree() + b.degree() > kDegreeCap) throw DegreeCap("product degree exceeds cap");
  std::vector<cplx> out(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial operator*(cplx s, const Polynomial& a) {
  std::vector<cplx> out = a.coeffs_;
  for (auto& c : out) c *= s;
  return Polynomial(std::move(out));
}

Polynomial differentiate(const Polynomial& s) {
  if (s.degree() < 1) return {};
  std::vector<cplx> out(s.degree());
  for (int k = 1; k <= s.degree(); ++k) out[k - 1] = static_cast<double>(k) * s.coeff(k);
  return Polynomial(std::move(out));
}

Polynomial antiderivative_at_zero(const Polynomial& s) {
  if (s.is_zero()) return {};
  if (s.degree() + 1 > kDegreeCap) throw DegreeCap("antiderivative degree exceeds cap");
  std::vector<cplx> out(s.degree() + 2, cplx{0.0, 0.0});
  for (int k = 0; k <= s.degree(); ++k) out[k + 1] = s.coeff(k) / static_cast<double>(k + 1);
  return Polynomial(std::move(out));
}

Polynomial compose_linear(const Polynomial& s, const LinearMap& psi) {
  if (s.is_zero()) return {};
  const Polynomial inner({psi.b, psi.a});
  Polynomial acc = Polynomial::constant(s.coeff(s.degree()));
  for (int k = s.degree() - 1; k >= 0; --k) acc = acc * inner + Polynomial::constant(s.coeff(k));
  return acc;
}

// ---------------------------------------------------------------------------

EntireSymbol::EntireSymbol(Polynomial poly) : prefactor_(std::move(poly)) {}

EntireSymbol::EntireSymbol(Polynomial prefactor, Polynomial exponent)
    : prefactor_(std::move(prefactor)), exponent_(std::move(exponent)) {
  if (exponent_.degree() > 2) throw DegreeCap("exponent polynomial degree must be at most 2");
  if (prefactor_.is_zero()) {
    exponent_ = {};
    return;
  }
  // A constant exponent is a scalar factor.
  if (exponent_.degree() == 0) {
    prefactor_ = std::exp(exponent_.coeff(0)) * prefactor_;
    exponent_ = {};
  }
}

cplx EntireSymbol::operator()(cplx z) const {
  const cplx c = prefactor_(z);
  if (is_polynomial()) return c;
  return c * std::exp(exponent_(z));
}

EntireSymbol EntireSymbol::derivative() const {
  if (is_polynomial()) return EntireSymbol(differentiate(prefactor_));
  // (c e^q)' = (c' + c q') e^q
  return EntireSymbol(differentiate(prefactor_) + prefactor_ * differentiate(exponent_), exponent_);
}

double EntireSymbol::growth_bound(double p) const {
  if (is_polynomial()) return 0.0;
  return p * std::abs(exponent_.coeff(2));
}

double EntireSymbol::linear_growth(double p) const {
  if (is_polynomial()) return 0.0;
  return p * std::abs(exponent_.coeff(1));
}

double sqrt_binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

std::vector<cplx> basis_multiply(const std::vector<cplx>& a, const std::vector<cplx>& b,
                                 int count) {
  std::vector<cplx> out(count, cplx{0.0, 0.0});
  // half_lf[k] = log(k!) / 2, so sqrt(C(i+j, i)) = exp(half_lf[i+j] - half_lf[i] - half_lf[j]).
  std::vector<double> half_lf(std::max(count, 1));
  for (int k = 0; k < count; ++k) half_lf[k] = 0.5 * std::lgamma(k + 1.0);
  for (int i = 0; i < std::min<int>(count, a.size()); ++i) {
    if (a[i] == cplx{0.0, 0.0}) continue;
    for (int j = 0; j < std::min<int>(count - i, b.size()); ++j) {
      if (b[j] == cplx{0.0, 0.0}) continue;
      out[i + j] += std::exp(half_lf[i + j] - half_lf[i] - half_lf[j]) * a[i] * b[j];
    }
  }
  return out;
}

namespace {

// c_k z^k = c_k sqrt(k! / alpha^k) e_k
std::vector<cplx> polynomial_basis_coefficients(const Polynomial& p, int count, double alpha) {
  std::vector<cplx> out(count, cplx{0.0, 0.0});
  for (int k = 0; k < std::min(count, p.degree() + 1); ++k) {
    const double scale = std::exp(0.5 * (std::lgamma(k + 1.0) - k * std::log(alpha)));
    out[k] = p.coeff(k) * scale;
  }
  return out;
}

} // namespace

std::vector<cplx> EntireSymbol::basis_coefficients(int count, double alpha) const {
  if (count <= 0) return {};
  if (!(alpha > 0.0)) throw PreconditionError("alpha must be positive");
  auto pre = polynomial_basis_coefficients(prefactor_, count, alpha);
  if (is_polynomial()) return pre;

  // e^{q1 z + q2 z^2} from (j+1) s_{j+1} = q1 s_j + 2 q2 s_{j-1}, carried in
  // the normalized basis so magnitudes stay O(1).
  const cplx q1 = exponent_.coeff(1);
  const cplx q2 = exponent_.coeff(2);
  std::vector<cplx> expo(count, cplx{0.0, 0.0});
  expo[0] = 1.0;
  for (int j = 0; j + 1 < count; ++j) {
    cplx next = q1 * expo[j] / std::sqrt(alpha * (j + 1.0));
    if (j >= 1) next += 2.0 * q2 * expo[j - 1] * std::sqrt(j / (j + 1.0)) / alpha;
    expo[j + 1] = next;
  }
  auto out = basis_multiply(pre, expo, count);
  const cplx scale = std::exp(exponent_.coeff(0));
  for (auto& c : out) c *= scale;
  return out;
}

double growth_bound(const EntireSymbol& s, double p) { return s.growth_bound(p); }

// ---------------------------------------------------------------------------

SymbolPair::SymbolPair(OperatorKind kind, EntireSymbol symbol, LinearMap psi, double alpha)
    : kind_(kind), symbol_(std::move(symbol)), psi_(psi), alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw PreconditionError("alpha must be positive");
  if (!std::isfinite(psi.a.real()) || !std::isfinite(psi.a.imag()) ||
      !std::isfinite(psi.b.real()) || !std::isfinite(psi.b.imag()))
    throw PreconditionError("psi coefficients must be finite");
  multiplier_ = kind == OperatorKind::VolterraComposition ? symbol_.derivative() : symbol_;
}

SymbolPair SymbolPair::volterra(EntireSymbol g, LinearMap psi, double alpha) {
  return SymbolPair(OperatorKind::VolterraComposition, std::move(g), psi, alpha);
}

SymbolPair SymbolPair::weighted(EntireSymbol u, LinearMap psi, double alpha) {
  return SymbolPair(OperatorKind::WeightedComposition, std::move(u), psi, alpha);
}

double SymbolPair::weight_at(cplx z) const {
  const double m = std::abs(multiplier_(z));
  return kind_ == OperatorKind::VolterraComposition ? m / (1.0 + std::abs(z)) : m;
}

IntegrandGrowth SymbolPair::weight_growth(double p) const {
  IntegrandGrowth g;
  g.quadratic = multiplier_.growth_bound(p);
  g.linear = multiplier_.linear_growth(p);
  const int d = multiplier_.degree();
  const int effective = kind_ == OperatorKind::VolterraComposition ? std::max(d - 1, 0) : std::max(d, 0);
  g.poly_degree = static_cast<int>(std::ceil(p * effective));
  return g;
}

double weight_at(const SymbolPair& pair, cplx z) { return pair.weight_at(z); }

} // namespace fockops
