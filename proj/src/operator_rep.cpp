#include "fockops/operator_rep.hpp"

#include "fockops/error.hpp"
#include "fockops/fock_core.hpp"
#include "gaussian_form.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace fockops {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// e_0(z) .. e_{count-1}(z) by e_{k+1} = e_k z sqrt(alpha / (k+1)).
std::vector<cplx> basis_values(cplx z, double alpha, int count) {
  std::vector<cplx> e(count);
  e[0] = 1.0;
  for (int k = 0; k + 1 < count; ++k) e[k + 1] = e[k] * z * std::sqrt(alpha / (k + 1.0));
  return e;
}

} // namespace

std::vector<cplx> composed_basis_vector(int n, const LinearMap& psi, double alpha, int count) {
  std::vector<cplx> out(count, cplx{0.0, 0.0});
  const cplx a = psi.a;
  const cplx sb = std::sqrt(alpha) * psi.b;
  // e_n(a z + b) = sum_k sqrt(C(n,k)) a^k (sqrt(alpha) b)^{n-k} / sqrt((n-k)!) e_k
  for (int k = 0; k <= std::min(n, count - 1); ++k) {
    const int j = n - k;
    if ((k > 0 && a == cplx{0.0, 0.0}) || (j > 0 && sb == cplx{0.0, 0.0})) continue;
    double log_mag = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0)) - std::lgamma(j + 1.0);
    double phase = 0.0;
    if (k > 0) {
      log_mag += k * std::log(std::abs(a));
      phase += k * std::arg(a);
    }
    if (j > 0) {
      log_mag += j * std::log(std::abs(sb));
      phase += j * std::arg(sb);
    }
    out[k] = std::polar(std::exp(log_mag), phase);
  }
  return out;
}

TruncatedOperator build_matrix(const SymbolPair& pair, int N) {
  if (N < 2) throw PreconditionError("build_matrix: N must be at least 2");
  const double alpha = pair.alpha();
  const auto mult = pair.multiplier().basis_coefficients(N, alpha);
  const bool volterra = pair.kind() == OperatorKind::VolterraComposition;

  TruncatedOperator t{pair, N, Eigen::MatrixXcd::Zero(N, N)};
  if (pair.weight_is_zero()) return t;
  for (int n = 0; n < N; ++n) {
    const auto composed = composed_basis_vector(n, pair.psi(), alpha, N);
    const auto prod = basis_multiply(composed, mult, N);
    if (volterra) {
      // \int_0^z e_k = e_{k+1} / sqrt(alpha (k+1))
      for (int k = 0; k + 1 < N; ++k) t.entries(k + 1, n) = prod[k] / std::sqrt(alpha * (k + 1.0));
    } else {
      for (int k = 0; k < N; ++k) t.entries(k, n) = prod[k];
    }
  }
  if (!t.entries.allFinite()) throw NumericalDegeneracy("build_matrix: non-finite entries");
  return t;
}

std::vector<double> singular_values(const Eigen::MatrixXcd& m) {
  if (!m.allFinite()) throw NumericalDegeneracy("singular_values: non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  if (svd.info() != Eigen::Success) throw NumericalDegeneracy("singular_values: SVD failed");
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

const SchattenValue* SpectralSummary::find_schatten(double p) const {
  for (const auto& s : schatten)
    if (s.p == p) return &s;
  return nullptr;
}

SpectralSummary spectral_summary(const TruncatedOperator& t, const std::vector<double>& p_list) {
  const int N = t.N;
  if (N < 4) throw PreconditionError("spectral_summary: N must be at least 4");
  SpectralSummary out;
  out.N = N;
  out.singular_values = singular_values(t.entries);
  const auto half = singular_values(t.entries.topLeftCorner(N / 2, N / 2));
  const auto& s = out.singular_values;

  out.op_norm = s.front();
  out.op_norm_half = half.front();
  out.op_norm_converged = out.op_norm - out.op_norm_half <= kConvergenceRel * out.op_norm;

  double hs2 = 0.0;
  for (double x : s) hs2 += x * x;
  out.hs_norm = std::sqrt(hs2);

  const int tail_start = N - N / 4;
  for (double p : p_list) {
    if (!(p > 0.0)) throw PreconditionError("spectral_summary: Schatten exponents must be positive");
    double total = 0.0, tail = 0.0;
    for (int k = 0; k < N; ++k) {
      const double v = std::pow(s[k], p);
      total += v;
      if (k >= tail_start) tail += v;
    }
    SchattenValue sv;
    sv.p = p;
    sv.value = std::pow(total, 1.0 / p);
    sv.tail_fraction = total > 0.0 ? tail / total : 0.0;
    sv.converged = sv.tail_fraction < kSchattenTailShare;
    out.schatten.push_back(sv);
  }

  out.ess_norm_proxy = s[(N + 1) / 2 - 1];
  out.ess_norm_proxy_half = half[(N / 2 + 1) / 2 - 1];
  const double e = out.ess_norm_proxy, eh = out.ess_norm_proxy_half;
  out.ess_norm_converged = std::abs(e - eh) <= kProxyConvergenceRel * std::max(e, eh) ||
                           std::max(e, eh) <= 1e-14 * std::max(out.op_norm, 1e-300);
  return out;
}

std::vector<double> derivative_gram(int N, double alpha) {
  if (N < 1) throw PreconditionError("derivative_gram: N must be positive");
  if (!(alpha > 0.0)) throw PreconditionError("derivative_gram: alpha must be positive");
  std::vector<double> w(N);
  w[0] = 1.0;
  using boost::math::quadrature::gauss_kronrod;
  for (int k = 1; k < N; ++k) {
    // (alpha^k / k!) k^2 2 pi \int r^{2k-1} e^{-alpha r^2} (1+r)^{-2} dr, in log form
    const double log_front = k * std::log(alpha) - std::lgamma(k + 1.0) + 2.0 * std::log(k) +
                             std::log(2.0 * std::numbers::pi);
    auto f = [&](double r) {
      if (r <= 0.0) return k == 1 ? std::exp(log_front) : 0.0;
      return std::exp(log_front + (2.0 * k - 1.0) * std::log(r) - alpha * r * r - 2.0 * std::log1p(r));
    };
    const double peak = std::sqrt((2.0 * k - 1.0) / (2.0 * alpha));
    const double reach = peak + 40.0 / std::sqrt(alpha);
    double err = 0.0;
    w[k] = gauss_kronrod<double, 61>::integrate(f, 0.0, peak, 15, 1e-14, &err) +
           gauss_kronrod<double, 61>::integrate(f, peak, reach, 15, 1e-14, &err);
  }
  return w;
}

double derivative_hs_trace(const TruncatedOperator& t) {
  const auto w = derivative_gram(t.N, t.pair.alpha());
  double total = 0.0;
  for (int k = 0; k < t.N; ++k) total += w[k] * t.entries.row(k).squaredNorm();
  return total;
}

ToeplitzCheck toeplitz_crosscheck(const SymbolPair& pair, int N, const Tolerance& tol) {
  if (pair.kind() != OperatorKind::VolterraComposition)
    throw PreconditionError("toeplitz_crosscheck: Volterra-type pairs only");
  if (!pair.symbol().is_polynomial())
    throw PreconditionError("toeplitz_crosscheck: polynomial g only");
  if (std::abs(pair.psi().a) > 1.0) throw PreconditionError("toeplitz_crosscheck: |a| must be <= 1");
  if (N < 2) throw PreconditionError("toeplitz_crosscheck: N must be at least 2");

  const int h = N / 2;
  const double alpha = pair.alpha();
  const auto t = build_matrix(pair, N);
  const auto w = derivative_gram(N, alpha);
  const Eigen::MatrixXcd cols = t.entries.leftCols(h);
  const Eigen::VectorXd weights = Eigen::Map<const Eigen::VectorXd>(w.data(), N);
  const Eigen::MatrixXcd g1 = cols.adjoint() * weights.cast<cplx>().asDiagonal() * cols;
  const Eigen::MatrixXcd g_std = cols.adjoint() * cols;

  const auto& dg = pair.multiplier();
  const LinearMap psi = pair.psi();
  const int dg_degree = std::max(dg.degree(), 0);
  const bool moves = psi.a != cplx{0.0, 0.0};

  ToeplitzCheck out;
  for (int n = 0; n < h; ++n) {
    for (int m = 0; m <= n; ++m) {
      cplx g2{0.0, 0.0};
      if (!dg.is_zero()) {
        auto f = [&](cplx z) {
          const auto e = basis_values(psi(z), alpha, n + 1);
          const double d = std::abs(dg(z)) / (1.0 + std::abs(z));
          return e[n] * std::conj(e[m]) * d * d;
        };
        IntegrandGrowth growth{0.0, 0.0, (moves ? n + m : 0) + 2 * dg_degree};
        g2 = gaussian_integral(f, GaussianWeight{alpha, {}}, tol, growth).value;
      }
      out.scale = std::max(out.scale, std::abs(g2));
      out.deviation = std::max({out.deviation, std::abs(g1(m, n) - g2), std::abs(g1(n, m) - std::conj(g2))});
      out.standard_norm_deviation =
          std::max({out.standard_norm_deviation, std::abs(g_std(m, n) - g2),
                    std::abs(g_std(n, m) - std::conj(g2))});
    }
  }
  return out;
}

double kernel_image_norm(const SymbolPair& pair, cplx w, double q, const Tolerance& tol) {
  if (!(q > 0.0)) throw PreconditionError("kernel_image_norm: q must be positive");
  if (pair.weight_is_zero()) return 0.0;
  const double alpha = pair.alpha();
  const LinearMap psi = pair.psi();
  const auto& mult = pair.multiplier();

  // k_w(psi(z)) = exp(-alpha|w|^2/2 + alpha conj(w) b + alpha conj(w) a z)
  const Polynomial kernel_exponent{-0.5 * alpha * std::norm(w) + alpha * std::conj(w) * psi.b,
                                   alpha * std::conj(w) * psi.a};
  const EntireSymbol product(mult.prefactor(), mult.exponent() + kernel_exponent);

  if (pair.kind() == OperatorKind::WeightedComposition) {
    const auto n = fock_norm(product, FockParams{q, alpha}, tol);
    return n.in_space ? n.value : kInf;
  }

  // (V k_w)(0) = 0 and (V k_w)' = k_w(psi) g': only the integral term survives.
  detail::GaussianForm form;
  form.decay = 0.5 * q * alpha;
  form.factor = product;
  form.power = q;
  form.kink = true;
  try {
    const auto r = detail::integrate_form(form, tol);
    if (r.overflow) return kInf;
    return std::pow(q * alpha / (2.0 * std::numbers::pi) * r.value, 1.0 / q);
  } catch (const DivergentTail&) {
    return kInf;
  }
}

void write_matrix_csv(const TruncatedOperator& t, std::ostream& out) {
  out << "m,n,re,im\n" << std::setprecision(17);
  for (int n = 0; n < t.N; ++n)
    for (int m = 0; m < t.N; ++m) {
      const cplx v = t.entries(m, n);
      if (v != cplx{0.0, 0.0}) out << m << ',' << n << ',' << v.real() << ',' << v.imag() << '\n';
    }
}

void write_singular_values_csv(const SpectralSummary& s, std::ostream& out) {
  out << "k,value\n" << std::setprecision(17);
  for (std::size_t k = 0; k < s.singular_values.size(); ++k) out << k + 1 << ',' << s.singular_values[k] << '\n';
}

} // namespace fockops
