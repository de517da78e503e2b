#pragma once

#include "fockops/berezin.hpp"
#include "fockops/operator_rep.hpp"
#include "fockops/symbols.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fockops {

enum class Verdict { Yes, No, Inconclusive };
enum class Source { BerezinCriterion, SpectralCriterion, ClosedFormOracle };

const char* to_string(Verdict v);
const char* to_string(Source s);

struct Judgement {
  Verdict verdict = Verdict::Inconclusive;
  std::string evidence;
};

/// Numerical verdicts with the evidence that produced them. Schatten verdicts
/// always refer to the operator on F^2_alpha.
struct Classification {
  Source source = Source::BerezinCriterion;
  Judgement bounded;
  Judgement compact;
  std::map<double, Judgement> schatten;
  /// NaN when the source has no norm-side quantity (the oracle).
  double norm_estimate = 0.0;
  double essential_norm_estimate = 0.0;
  /// op_norm of the truncated matrix, attached when p = q = 2.
  std::optional<double> spectral_norm;
};

/// Lattice: compact = Yes => bounded = Yes; S_p = Yes => compact = Yes;
/// S_p = Yes => S_p' = Yes for p' > p. Returns one message per violation.
std::vector<std::string> lattice_violations(const Classification& c);

struct ClassifyOptions {
  GridSpec grid;
  std::vector<double> schatten_p{1.0, 2.0, 3.0, 4.0};
  Tolerance tol;
};

// Far-field slope cut points, in units of q: B ~ |w|^slope.
constexpr double kBoundedYesSlope = 1.0 / 3.0;
constexpr double kBoundedNoSlope = 2.0 / 3.0;
constexpr double kCompactNoSlope = -1.0 / 3.0;

/// Verdicts for T : F^p_alpha -> F^q_alpha from the Berezin transform at exponent q.
/// p <= q: bounded from the growth of the profile, compact from its decay.
/// p > q: bounded = compact = integrability of B^{p/(p-q)}.
/// Schatten verdicts (on F^2, attached only when p <= q) from the integrability
/// of B(|weight|^2)^{p/2}.
Classification classify_berezin(const SymbolPair& pair, double p, double q, const ClassifyOptions& opts = {});

/// Closed-form verdicts for the families the corollaries cover; nullopt otherwise.
///  (a) Volterra, psi = id;  (b) constant u;  (c) Volterra, psi = beta z, |beta| < 1;
///  (d) weighted kind, Schatten verdicts from the explicit integral; and the zero operator.
std::optional<Classification> oracle_classify(const SymbolPair& pair, double p, double q,
                                              const std::vector<double>& schatten_p = {1.0, 2.0, 3.0, 4.0});

// Spectral cut points on op_norm(N) / op_norm(N/2) and on the essential-norm
// proxy ratio s_{N/2}(N) / s_{N/4}(N/2).
constexpr double kSpectralBoundedYes = 1.05;
constexpr double kSpectralBoundedNo = 1.2;
constexpr double kSpectralCompactYes = 0.85;
constexpr double kSpectralCompactNo = 0.95;
constexpr double kSpectralSchattenNoShare = 0.03;

/// Verdicts on F^2_alpha from a truncated spectrum.
Classification classify_spectral(const SpectralSummary& s);

/// Bounded verdict from sup_w ||T k_w||_(q,alpha) over the profile grid and far field.
Judgement kernel_thesis_bounded(const SymbolPair& pair, double q, const GridSpec& grid = {},
                                const Tolerance& tol = {});

struct Disagreement {
  std::string property;
  Source first;
  Source second;
  Verdict first_verdict;
  Verdict second_verdict;
};

struct BandStats {
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  void add(double x);
};

struct PairReport {
  std::size_t index = 0;
  std::vector<Classification> classifications;
  std::vector<Disagreement> disagreements;
  std::vector<std::string> lattice_violations;
  bool oracle_supported = false;
};

struct ConsistencyReport {
  double p = 2.0;
  double q = 2.0;
  int N = 0;
  std::vector<PairReport> pairs;
  std::size_t agreements = 0;
  std::size_t disagreements = 0;
  std::size_t lattice_violations = 0;
  /// op_norm / sup(B)^{1/2} over Berezin-bounded pairs (p = q = 2).
  BandStats norm_band;
  /// hs_norm^2 / hilbert_schmidt_integral where both are finite.
  BandStats hs_band;
  /// kernel_image_norm^q / berezin_at over sampled w, Berezin-bounded pairs.
  BandStats kernel_band;
};

struct ReportOptions {
  ClassifyOptions classify;
  /// Points per bounded pair for the kernel band.
  int kernel_samples = 10;
};

/// Classifies each pair by every applicable source (Berezin always, the oracle
/// when supported, the spectrum when p = q = 2 and N > 0) and compares them.
ConsistencyReport consistency_report(const std::vector<SymbolPair>& family, double p, double q, int N,
                                     const ReportOptions& opts = {});

/// Volterra pairs with psi = id: `count` polynomials of degree uniform in
/// 0..max_degree, coefficients uniform in the unit disk.
std::vector<SymbolPair> random_polynomial_family(std::size_t count, int max_degree, std::uint64_t seed,
                                                 double alpha = 1.0);

} // namespace fockops
