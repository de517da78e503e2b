#include "fockops/criteria.hpp"

#include "fockops/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace fockops {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename... Args>
std::string str(const Args&... args) {
  std::ostringstream os;
  os.precision(6);
  (os << ... << args);
  return os.str();
}

Judgement yes(std::string e) { return {Verdict::Yes, std::move(e)}; }
Judgement no(std::string e) { return {Verdict::No, std::move(e)}; }
Judgement unsure(std::string e) { return {Verdict::Inconclusive, std::move(e)}; }

// Slope of the profile far field, or of the grid annuli when there is none.
double profile_slope(const BerezinProfile& prof) {
  if (!prof.far_max.empty()) return prof.far_slope;
  return far_field_slope(prof.radii, prof.annulus_max);
}

Judgement bounded_from_slope(double slope, double q, bool unbounded, const std::string& what) {
  if (unbounded) return no(what + " diverges at some grid node");
  if (slope == kInf) return no(what + " overflows in the far field");
  if (slope < kBoundedYesSlope * q) return yes(str(what, " far-field slope ", slope, " < q/3"));
  if (slope > kBoundedNoSlope * q) return no(str(what, " far-field slope ", slope, " > 2q/3"));
  return unsure(str(what, " far-field slope ", slope, " between q/3 and 2q/3"));
}

Judgement bounded_from_profile(const BerezinProfile& prof) {
  return bounded_from_slope(profile_slope(prof), prof.p, prof.unbounded, "Berezin transform");
}

Judgement compact_from_profile(const BerezinProfile& prof, const Judgement& bounded) {
  if (bounded.verdict == Verdict::No) return no("not bounded");
  const auto ev = vanishes_at_infinity(prof);
  if (ev.vanishes && bounded.verdict == Verdict::Yes) {
    if (ev.threshold_test) return yes(str("tail max ", prof.tail_max, " below eps * sup"));
    return yes(str("far-field slope ", ev.far_slope, " < -2q/3"));
  }
  const double slope = profile_slope(prof);
  if (slope > kCompactNoSlope * prof.p)
    return no(str("Berezin transform does not vanish: far-field slope ", slope, " > -q/3"));
  return unsure(str("far-field slope ", slope, " between -2q/3 and -q/3"));
}

void schatten_from_profile(Classification& c, const BerezinProfile& prof2, const std::vector<double>& ps) {
  const Judgement b2 = bounded_from_profile(prof2);
  const Judgement c2 = compact_from_profile(prof2, b2);
  for (double p : ps) {
    if (!(p > 0.0)) throw PreconditionError("Schatten exponents must be positive");
    const bool integrable = power_integrable(prof2, p / 2.0);
    const std::string tail = str("B(|weight|^2)^", p / 2.0, integrable ? " integrable" : " not integrable",
                                 " (slope ", prof2.far_slope, ")");
    if (!integrable) c.schatten[p] = no(tail);
    else if (c2.verdict == Verdict::Yes) c.schatten[p] = yes(tail);
    else if (c2.verdict == Verdict::No) c.schatten[p] = no("not compact on F^2");
    else c.schatten[p] = unsure(tail + ", compactness on F^2 inconclusive");
  }
}

Classification zero_operator(Source source, const std::vector<double>& ps) {
  Classification c;
  c.source = source;
  c.bounded = yes("zero operator");
  c.compact = yes("zero operator");
  for (double p : ps) c.schatten[p] = yes("zero operator");
  c.norm_estimate = 0.0;
  c.essential_norm_estimate = 0.0;
  return c;
}

Classification oracle_base() {
  Classification c;
  c.source = Source::ClosedFormOracle;
  c.norm_estimate = kNaN;
  c.essential_norm_estimate = kNaN;
  return c;
}

bool is_zero(cplx z) { return z == cplx{0.0, 0.0}; }

void compare(PairReport& pr, ConsistencyReport& rep, const std::string& property, const Classification& x,
             const Judgement& jx, const Classification& y, const Judgement& jy) {
  if (jx.verdict == Verdict::Inconclusive || jy.verdict == Verdict::Inconclusive) return;
  if (jx.verdict == jy.verdict) {
    ++rep.agreements;
    return;
  }
  ++rep.disagreements;
  pr.disagreements.push_back({property, x.source, y.source, jx.verdict, jy.verdict});
}

} // namespace

const char* to_string(Verdict v) {
  switch (v) {
  case Verdict::Yes: return "Yes";
  case Verdict::No: return "No";
  case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(Source s) {
  switch (s) {
  case Source::BerezinCriterion: return "BerezinCriterion";
  case Source::SpectralCriterion: return "SpectralCriterion";
  case Source::ClosedFormOracle: return "ClosedFormOracle";
  }
  return "?";
}

std::vector<std::string> lattice_violations(const Classification& c) {
  std::vector<std::string> out;
  const char* src = to_string(c.source);
  if (c.compact.verdict == Verdict::Yes && c.bounded.verdict != Verdict::Yes)
    out.push_back(str(src, ": compact Yes but bounded ", to_string(c.bounded.verdict)));
  for (auto it = c.schatten.begin(); it != c.schatten.end(); ++it) {
    if (it->second.verdict != Verdict::Yes) continue;
    if (c.compact.verdict != Verdict::Yes)
      out.push_back(str(src, ": S_", it->first, " Yes but compact ", to_string(c.compact.verdict)));
    for (auto jt = std::next(it); jt != c.schatten.end(); ++jt)
      if (jt->second.verdict != Verdict::Yes)
        out.push_back(str(src, ": S_", it->first, " Yes but S_", jt->first, " ", to_string(jt->second.verdict)));
  }
  return out;
}

Classification classify_berezin(const SymbolPair& pair, double p, double q, const ClassifyOptions& opts) {
  if (!(p > 0.0) || !(q > 0.0)) throw PreconditionError("classify_berezin: p and q must be positive");
  opts.grid.validate();
  if (pair.weight_is_zero())
    return zero_operator(Source::BerezinCriterion, p <= q ? opts.schatten_p : std::vector<double>{});

  Classification c;
  c.source = Source::BerezinCriterion;
  std::optional<BerezinProfile> prof_q;
  if (p <= q) {
    prof_q = berezin_profile(pair, q, opts.grid, opts.tol);
    c.bounded = bounded_from_profile(*prof_q);
    c.compact = compact_from_profile(*prof_q, c.bounded);
    if (c.bounded.verdict == Verdict::No) {
      c.norm_estimate = kInf;
      c.essential_norm_estimate = kInf;
    } else {
      c.norm_estimate = std::pow(prof_q->sup, 1.0 / q);
      const double far = prof_q->far_max.empty() ? prof_q->tail_max : prof_q->far_max.back();
      c.essential_norm_estimate = std::pow(far, 1.0 / q);
    }
  } else {
    const double s = p / (p - q);
    const auto li = lp_integral(pair, q, s, opts.tol);
    const std::string e = str("B^", s, li.finite ? " integrable" : " not integrable");
    c.bounded = li.finite ? yes(e) : no(e);
    c.compact = c.bounded;
    c.norm_estimate = li.finite ? li.value : kInf;
    c.essential_norm_estimate = li.finite ? 0.0 : kInf;
  }

  // Schatten verdicts concern F^2; they are attached only when p <= q, where
  // compactness does not depend on the source exponent.
  if (!opts.schatten_p.empty() && p <= q) {
    if (q == 2.0 && prof_q) {
      schatten_from_profile(c, *prof_q, opts.schatten_p);
    } else {
      const auto prof2 = berezin_profile(pair, 2.0, opts.grid, opts.tol);
      schatten_from_profile(c, prof2, opts.schatten_p);
    }
  }
  return c;
}

std::optional<Classification> oracle_classify(const SymbolPair& pair, double p, double q,
                                              const std::vector<double>& schatten_p) {
  if (!(p > 0.0) || !(q > 0.0)) throw PreconditionError("oracle_classify: p and q must be positive");
  if (pair.weight_is_zero()) {
    auto c = zero_operator(Source::ClosedFormOracle, p <= q ? schatten_p : std::vector<double>{});
    c.norm_estimate = kNaN;
    c.essential_norm_estimate = kNaN;
    return c;
  }
  const std::vector<double> no_schatten;
  const auto& sp_list = p <= q ? schatten_p : no_schatten;
  const LinearMap psi = pair.psi();
  const double abs_a = std::abs(psi.a);
  const double alpha = pair.alpha();
  const auto& sym = pair.symbol();
  auto c = oracle_base();

  if (pair.kind() == OperatorKind::VolterraComposition && psi.is_identity()) {
    if (!sym.is_polynomial()) {
      c.bounded = no("g' grows faster than any polynomial");
      c.compact = no("not bounded");
      for (double s : sp_list) c.schatten[s] = no("not bounded");
      return c;
    }
    const int d = sym.degree();
    if (p <= q) {
      c.bounded = d <= 2 ? yes(str("deg g = ", d, " <= 2")) : no(str("deg g = ", d, " > 2"));
      c.compact = d <= 1 ? yes(str("deg g = ", d, " <= 1")) : no(str("deg g = ", d, " > 1"));
    } else {
      const double edge = 2.0 * p / (p + 2.0);
      if (d >= 2) c.bounded = no(str("g' not constant, p > q"));
      else if (q > edge) c.bounded = yes(str("g' constant and q > 2p/(p+2) = ", edge));
      else if (q < edge) c.bounded = no(str("g' nonzero constant and q < 2p/(p+2) = ", edge));
      else c.bounded = unsure("q = 2p/(p+2)");
      c.compact = c.bounded;
    }
    for (double s : sp_list) {
      if (d == 1 && s > 2.0) c.schatten[s] = yes("deg g = 1, p > 2");
      else if (d == 1) c.schatten[s] = no("deg g = 1, p <= 2");
      else c.schatten[s] = no(str("deg g = ", d));
    }
    return c;
  }

  if (pair.kind() == OperatorKind::WeightedComposition && sym.is_polynomial() && sym.degree() == 0) {
    const bool inside = abs_a < 1.0;
    if (inside) c.bounded = yes("|a| < 1");
    else if (p <= q && abs_a == 1.0 && is_zero(psi.b)) c.bounded = yes("|a| = 1, b = 0");
    else if (p <= q && abs_a == 1.0) c.bounded = no("|a| = 1, b != 0");
    else if (abs_a == 1.0) c.bounded = no("|a| = 1, p > q");
    else c.bounded = no("|a| > 1");
    c.compact = inside ? yes("|a| < 1") : no("|a| >= 1");
    for (double s : sp_list) c.schatten[s] = inside ? yes("|a| < 1") : no("|a| >= 1");
    return c;
  }

  if (pair.kind() == OperatorKind::VolterraComposition && is_zero(psi.b) && abs_a < 1.0 && p <= q) {
    const double gamma = 2.0 * std::abs(sym.exponent().coeff(2)) / alpha;
    const double lhs = gamma + abs_a * abs_a;
    c.bounded = lhs < 1.0 ? yes(str("gamma + |beta|^2 = ", lhs, " < 1"))
                          : unsure(str("gamma + |beta|^2 = ", lhs, " >= 1: sufficient condition fails"));
    c.compact = unsure("not covered");
    for (double s : sp_list) c.schatten[s] = unsure("not covered");
    return c;
  }

  if (pair.kind() == OperatorKind::WeightedComposition) {
    if (abs_a >= 1.0) {
      c.bounded = unsure("|a| >= 1 with non-constant u");
      c.compact = no("|a| >= 1");
      for (double s : sp_list) c.schatten[s] = no("|a| >= 1");
      return c;
    }
    // \int |u|^p e^{(p alpha/2)((|a|^2-1)|z|^2 + 2 Re(a z conj b))} dm < inf
    // exactly when |q2| < alpha (1 - |a|^2) / 2, for every p.
    const double q2 = std::abs(sym.exponent().coeff(2));
    const double limit = 0.5 * alpha * (1.0 - abs_a * abs_a);
    if (q2 < limit) {
      const std::string e = str("|q2| = ", q2, " < alpha(1-|a|^2)/2 = ", limit);
      c.bounded = yes(e);
      c.compact = yes(e);
      for (double s : sp_list) c.schatten[s] = yes(e);
    } else {
      const std::string e = str("|q2| = ", q2, " >= alpha(1-|a|^2)/2 = ", limit);
      c.bounded = unsure(e);
      c.compact = unsure(e);
      for (double s : sp_list) c.schatten[s] = no(e);
    }
    return c;
  }
  return std::nullopt;
}

Classification classify_spectral(const SpectralSummary& s) {
  Classification c;
  c.source = Source::SpectralCriterion;
  c.norm_estimate = s.op_norm;
  c.essential_norm_estimate = s.ess_norm_proxy;
  c.spectral_norm = s.op_norm;
  if (s.op_norm == 0.0) {
    c.bounded = yes("zero matrix");
    c.compact = yes("zero matrix");
    for (const auto& sv : s.schatten) c.schatten[sv.p] = yes("zero matrix");
    return c;
  }

  const double growth = s.op_norm / s.op_norm_half;
  if (growth < kSpectralBoundedYes) c.bounded = yes(str("op_norm(N)/op_norm(N/2) = ", growth));
  else if (growth > kSpectralBoundedNo) c.bounded = no(str("op_norm(N)/op_norm(N/2) = ", growth));
  else c.bounded = unsure(str("op_norm(N)/op_norm(N/2) = ", growth));

  const double e = s.ess_norm_proxy, eh = s.ess_norm_proxy_half;
  if (c.bounded.verdict == Verdict::No) {
    c.compact = no("not bounded");
  } else if (e <= 1e-12 * s.op_norm) {
    c.compact = yes(str("essential-norm proxy ", e, " negligible"));
  } else {
    const double fall = eh > 0.0 ? e / eh : kInf;
    if (fall < kSpectralCompactYes) c.compact = yes(str("essential-norm proxy ratio ", fall));
    else if (fall > kSpectralCompactNo) c.compact = no(str("essential-norm proxy ratio ", fall));
    else c.compact = unsure(str("essential-norm proxy ratio ", fall));
  }
  if (c.compact.verdict == Verdict::Yes && c.bounded.verdict != Verdict::Yes)
    c.compact = unsure("proxy falls but operator norm not settled");

  for (const auto& sv : s.schatten) {
    const std::string e2 = str("tail share ", sv.tail_fraction);
    if (c.compact.verdict == Verdict::No) c.schatten[sv.p] = no("not compact");
    else if (c.compact.verdict == Verdict::Inconclusive) c.schatten[sv.p] = unsure("compactness inconclusive");
    else if (sv.converged) c.schatten[sv.p] = yes(e2);
    else if (sv.tail_fraction >= kSpectralSchattenNoShare) c.schatten[sv.p] = no(e2);
    else c.schatten[sv.p] = unsure(e2);
  }
  return c;
}

Judgement kernel_thesis_bounded(const SymbolPair& pair, double q, const GridSpec& grid, const Tolerance& tol) {
  if (!(q > 0.0)) throw PreconditionError("kernel_thesis_bounded: q must be positive");
  grid.validate();
  if (pair.weight_is_zero()) return yes("zero operator");
  const double w_max = grid.resolved_w_max(pair.alpha());
  if (w_max <= grid.r_min) throw PreconditionError("grid w_max must exceed r_min");

  bool divergent = false;
  double sup = 0.0;
  auto ring = [&](double r) {
    double best = 0.0;
    for (int j = 0; j < grid.angles; ++j) {
      const double v = kernel_image_norm(pair, std::polar(r, 2.0 * std::numbers::pi * j / grid.angles), q, tol);
      divergent = divergent || std::isinf(v);
      best = std::max(best, std::pow(v, q));
    }
    sup = std::max(sup, best);
    return best;
  };
  std::vector<double> radii, maxima;
  const double ratio = std::pow(w_max / grid.r_min, 1.0 / (grid.radii - 1));
  for (int i = 0; i < grid.radii; ++i) {
    radii.push_back(i + 1 == grid.radii ? w_max : grid.r_min * std::pow(ratio, i));
    maxima.push_back(ring(radii.back()));
  }
  if (grid.far_annuli > 0) {
    radii.clear();
    maxima.clear();
    for (int j = 1; j <= grid.far_annuli; ++j) {
      radii.push_back(w_max * std::ldexp(1.0, j));
      maxima.push_back(ring(radii.back()));
    }
  }
  auto j = bounded_from_slope(far_field_slope(radii, maxima), q, divergent, "||T k_w||^q");
  j.evidence += str(", grid sup ", std::pow(sup, 1.0 / q));
  return j;
}

void BandStats::add(double x) {
  if (!std::isfinite(x)) return;
  if (count == 0) min = max = x;
  min = std::min(min, x);
  max = std::max(max, x);
  ++count;
}

ConsistencyReport consistency_report(const std::vector<SymbolPair>& family, double p, double q, int N,
                                     const ReportOptions& opts) {
  ConsistencyReport rep;
  rep.p = p;
  rep.q = q;
  rep.N = N;
  const bool spectral = p == 2.0 && q == 2.0 && N > 0;
  if (spectral && N < 4) throw PreconditionError("consistency_report: N must be at least 4");

  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& pair = family[i];
    PairReport pr;
    pr.index = i;
    auto berezin = classify_berezin(pair, p, q, opts.classify);
    std::optional<SpectralSummary> summary;
    if (spectral) {
      summary = spectral_summary(build_matrix(pair, N), opts.classify.schatten_p);
      berezin.spectral_norm = summary->op_norm;
    }
    pr.classifications.push_back(berezin);
    if (auto oracle = oracle_classify(pair, p, q, opts.classify.schatten_p)) {
      pr.oracle_supported = true;
      pr.classifications.push_back(*oracle);
    }
    if (summary) pr.classifications.push_back(classify_spectral(*summary));

    const auto& cs = pr.classifications;
    for (std::size_t x = 0; x < cs.size(); ++x) {
      for (auto& v : lattice_violations(cs[x])) pr.lattice_violations.push_back(std::move(v));
      for (std::size_t y = x + 1; y < cs.size(); ++y) {
        compare(pr, rep, "bounded", cs[x], cs[x].bounded, cs[y], cs[y].bounded);
        compare(pr, rep, "compact", cs[x], cs[x].compact, cs[y], cs[y].compact);
        for (const auto& [sp, jx] : cs[x].schatten) {
          const auto it = cs[y].schatten.find(sp);
          if (it != cs[y].schatten.end()) compare(pr, rep, str("S_", sp), cs[x], jx, cs[y], it->second);
        }
      }
    }
    rep.lattice_violations += pr.lattice_violations.size();

    if (berezin.bounded.verdict == Verdict::Yes && !pair.weight_is_zero()) {
      if (summary && berezin.norm_estimate > 0.0) rep.norm_band.add(summary->op_norm / berezin.norm_estimate);
      if (summary) {
        const double hs = hilbert_schmidt_integral(pair, opts.classify.tol);
        if (std::isfinite(hs) && hs > 0.0 && berezin.schatten.count(2.0) &&
            berezin.schatten.at(2.0).verdict == Verdict::Yes)
          rep.hs_band.add(summary->hs_norm * summary->hs_norm / hs);
      }
      const double w_max = opts.classify.grid.resolved_w_max(pair.alpha());
      for (int k = 0; k < opts.kernel_samples; ++k) {
        // radii spread over the grid, golden-angle phases
        const cplx w = std::polar(w_max * (k + 0.5) / opts.kernel_samples, 2.399963229728653 * k);
        const double b = berezin_at(pair, q, w, opts.classify.tol);
        const double kn = kernel_image_norm(pair, w, q, opts.classify.tol);
        if (b > 0.0 && std::isfinite(b)) rep.kernel_band.add(std::pow(kn, q) / b);
      }
    }
    rep.pairs.push_back(std::move(pr));
  }
  return rep;
}

std::vector<SymbolPair> random_polynomial_family(std::size_t count, int max_degree, std::uint64_t seed,
                                                 double alpha) {
  if (max_degree < 0) throw PreconditionError("random_polynomial_family: max_degree must be non-negative");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> degree(0, max_degree);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SymbolPair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int d = degree(rng);
    std::vector<cplx> c(d + 1);
    for (auto& x : c) {
      const double r = std::sqrt(unit(rng));
      x = std::polar(r, 2.0 * std::numbers::pi * unit(rng));
    }
    out.push_back(SymbolPair::volterra(EntireSymbol(Polynomial(c)), LinearMap::identity(), alpha));
  }
  return out;
}

} // namespace fockops
