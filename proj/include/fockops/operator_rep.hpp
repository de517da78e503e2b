#pragma once

#include "fockops/quadrature.hpp"
#include "fockops/symbols.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <vector>

namespace fockops {

/// P_N T P_N on the orthonormal basis e_n = sqrt(alpha^n / n!) z^n of F^2_alpha:
/// entries(m, n) = <T e_n, e_m>.
///
/// Entries come from exact coefficient arithmetic in the normalized basis.
/// Coefficient k of a product only involves coefficients <= k of the factors,
/// so truncating every intermediate series at N terms leaves the N x N block
/// exact, also for exponential symbols (their Taylor series are exact).
struct TruncatedOperator {
  SymbolPair pair;
  int N = 0;
  Eigen::MatrixXcd entries;
};

TruncatedOperator build_matrix(const SymbolPair& pair, int N);

/// Coefficients of e_n o psi on e_0 .. e_{count-1}.
std::vector<cplx> composed_basis_vector(int n, const LinearMap& psi, double alpha, int count);

struct SchattenValue {
  double p = 2.0;
  /// (sum s_k^p)^{1/p} over the truncation.
  double value = 0.0;
  /// Share of sum s_k^p carried by the last quarter of the s_k.
  double tail_fraction = 0.0;
  /// tail_fraction < 1%.
  bool converged = false;
};

struct SpectralSummary {
  int N = 0;
  std::vector<double> singular_values;
  double op_norm = 0.0;
  /// op_norm of the N/2 truncation (the leading block).
  double op_norm_half = 0.0;
  std::vector<SchattenValue> schatten;
  double hs_norm = 0.0;
  /// s_{ceil(N/2)}: a proxy for the essential norm, not the essential norm.
  double ess_norm_proxy = 0.0;
  /// The same proxy, s_{ceil(N/4)}, for the N/2 truncation.
  double ess_norm_proxy_half = 0.0;
  bool op_norm_converged = false;
  bool ess_norm_converged = false;

  const SchattenValue* find_schatten(double p) const;
};

constexpr double kSchattenTailShare = 0.01;
constexpr double kConvergenceRel = 1e-3;
constexpr double kProxyConvergenceRel = 0.05;

/// Singular values in non-increasing order.
std::vector<double> singular_values(const Eigen::MatrixXcd& m);

/// Requires N >= 4 so that the halved truncation is meaningful.
SpectralSummary spectral_summary(const TruncatedOperator& t, const std::vector<double>& p_list);

/// Diagonal of the Gram matrix of e_0 .. e_{N-1} in the derivative inner product
///   <f, h>_D = f(0) conj(h(0)) + \int f' conj(h') e^{-alpha|z|^2} (1+|z|)^{-2} dm,
/// the inner product in which V_(g,psi)^* V_(g,psi) is the Toeplitz operator T_mu.
std::vector<double> derivative_gram(int N, double alpha);

/// trace(M^H W M) with W = derivative_gram: sum_n ||V e_n||_D^2. For the
/// Volterra kind this equals hilbert_schmidt_integral in the N -> inf limit.
double derivative_hs_trace(const TruncatedOperator& t);

struct ToeplitzCheck {
  /// max |M^H W M - G2| over the inner N/2 block.
  double deviation = 0.0;
  /// max |M^H M - G2|, the same comparison in the standard F^2 norm (reported
  /// only; the identity does not hold there).
  double standard_norm_deviation = 0.0;
  /// max |G2| over the block, for scale.
  double scale = 0.0;
};

/// Compares M^H W M with the Toeplitz Gram
///   G2(m, n) = \int e_n(psi(w)) conj(e_m(psi(w))) |g'(w)|^2 (1+|w|)^{-2} e^{-alpha|w|^2} dm(w)
/// computed by direct quadrature.
ToeplitzCheck toeplitz_crosscheck(const SymbolPair& pair, int N, const Tolerance& tol = {});

/// ||T k_w||_(q,alpha) in the derivative form for the Volterra kind, the
/// direct Fock norm for the weighted kind. Both reduce to
/// (q alpha / 2 pi) B(w) raised to 1/q. +Inf when divergent.
double kernel_image_norm(const SymbolPair& pair, cplx w, double q, const Tolerance& tol = {});

/// CSV exports: entries as m,n,re,im and singular values as k,value.
void write_matrix_csv(const TruncatedOperator& t, std::ostream& out);
void write_singular_values_csv(const SpectralSummary& s, std::ostream& out);

} // namespace fockops
