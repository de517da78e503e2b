#pragma once

#include "fockops/quadrature.hpp"
#include "fockops/symbols.hpp"

namespace fockops {

/// Exponent p and weight alpha of F^p_alpha.
struct FockParams {
  double p = 2.0;
  double alpha = 1.0;

  void validate() const;
  /// The Gaussian exponent p alpha / 2 of the norm integral.
  double decay() const { return 0.5 * p * alpha; }
};

struct KernelValue {
  cplx value;
  /// The exponential overflowed; `value` is saturated to Inf.
  bool overflow = false;
};

/// K_(w,alpha)(z) = e^{alpha conj(w) z}, or the normalized kernel
/// k_(w,alpha)(z) = e^{-alpha|w|^2/2 + alpha conj(w) z}.
KernelValue kernel_eval(cplx w, cplx z, double alpha, bool normalized);

/// k_(w,alpha) as an EntireSymbol.
EntireSymbol normalized_kernel(cplx w, double alpha);

/// Norm-type quantities report membership as data: NotInSpace carries an
/// infinite value instead of raising.
struct NormResult {
  double value = 0.0;
  bool in_space = true;
  double error = 0.0;
};

/// ||f||_(p,alpha) with the (p alpha / 2 pi) normalization, so ||1|| = 1.
NormResult fock_norm(const EntireSymbol& f, const FockParams& params, const Tolerance& tol = {});

/// (|f(0)|^p + (p alpha / 2 pi) \int |f'|^p (1+|z|)^{-p} e^{-(p alpha/2)|z|^2} dm)^{1/p},
/// the derivative-side functional equivalent to ||f||_(p,alpha). The integral
/// term carries the same normalization as fock_norm; |f(0)|^p carries none.
NormResult derivative_functional(const EntireSymbol& f, const FockParams& params,
                                 const Tolerance& tol = {});

/// <z^m, z^n> in F^2_alpha = delta_mn n! / alpha^n.
cplx monomial_gram(int m, int n, double alpha);

/// Coefficient sqrt(alpha^n / n!) of e_n.
double basis_scale(int n, double alpha);

} // namespace fockops
