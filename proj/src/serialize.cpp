#include "fockops/serialize.hpp"

#include "fockops/error.hpp"

#include <cmath>
#include <limits>

namespace fockops {

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ConfigError("expected a number, got " + j.dump());
}

Json complex_to_json(cplx z) { return Json::array({number_to_json(z.real()), number_to_json(z.imag())}); }

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("expected a complex number [re, im], got " + j.dump());
}

Json polynomial_to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(complex_to_json(c));
  return out;
}

Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected a coefficient array, got " + j.dump());
  std::vector<cplx> c;
  for (const auto& x : j) c.push_back(complex_from_json(x));
  return Polynomial(std::move(c));
}

Json pair_to_json(const SymbolPair& pair) {
  Json out;
  const char* key = pair.kind() == OperatorKind::VolterraComposition ? "g" : "u";
  out[key] = polynomial_to_json(pair.symbol().prefactor());
  if (!pair.symbol().is_polynomial()) out["exponent"] = polynomial_to_json(pair.symbol().exponent());
  out["psi"] = {{"a", complex_to_json(pair.psi().a)}, {"b", complex_to_json(pair.psi().b)}};
  return out;
}

SymbolPair pair_from_json(const Json& j, double alpha) {
  if (!j.is_object()) throw ConfigError("pair must be an object");
  for (const auto& [k, v] : j.items())
    if (k != "g" && k != "u" && k != "exponent" && k != "psi") throw ConfigError("unknown pair field '" + k + "'");
  const bool has_g = j.contains("g"), has_u = j.contains("u");
  if (has_g == has_u) throw ConfigError("pair needs exactly one of 'g' and 'u'");
  const Polynomial prefactor = polynomial_from_json(has_g ? j["g"] : j["u"]);
  const Polynomial exponent = j.contains("exponent") ? polynomial_from_json(j["exponent"]) : Polynomial{};
  LinearMap psi;
  if (j.contains("psi")) {
    const auto& m = j["psi"];
    if (!m.is_object()) throw ConfigError("psi must be an object");
    for (const auto& [k, v] : m.items())
      if (k != "a" && k != "b") throw ConfigError("unknown psi field '" + k + "'");
    if (m.contains("a")) psi.a = complex_from_json(m["a"]);
    if (m.contains("b")) psi.b = complex_from_json(m["b"]);
  }
  try {
    const EntireSymbol symbol(prefactor, exponent);
    return has_g ? SymbolPair::volterra(symbol, psi, alpha) : SymbolPair::weighted(symbol, psi, alpha);
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid pair: ") + e.what());
  }
}

Json to_json(const Judgement& j) { return {{"verdict", to_string(j.verdict)}, {"evidence", j.evidence}}; }

Json to_json(const Classification& c) {
  Json out;
  out["source"] = to_string(c.source);
  out["bounded"] = to_json(c.bounded);
  out["compact"] = to_json(c.compact);
  Json s = Json::array();
  for (const auto& [p, j] : c.schatten) {
    Json e = to_json(j);
    e["p"] = p;
    s.push_back(e);
  }
  out["schatten"] = s;
  out["norm_estimate"] = number_to_json(c.norm_estimate);
  out["essential_norm_estimate"] = number_to_json(c.essential_norm_estimate);
  out["spectral_norm"] = c.spectral_norm ? number_to_json(*c.spectral_norm) : Json(nullptr);
  return out;
}

Json to_json(const SpectralSummary& s) {
  Json out;
  out["N"] = s.N;
  out["op_norm"] = number_to_json(s.op_norm);
  out["op_norm_half"] = number_to_json(s.op_norm_half);
  out["op_norm_converged"] = s.op_norm_converged;
  out["hs_norm"] = number_to_json(s.hs_norm);
  out["ess_norm_proxy"] = number_to_json(s.ess_norm_proxy);
  out["ess_norm_proxy_half"] = number_to_json(s.ess_norm_proxy_half);
  out["ess_norm_converged"] = s.ess_norm_converged;
  Json sch = Json::array();
  for (const auto& v : s.schatten)
    sch.push_back({{"p", v.p},
                   {"value", number_to_json(v.value)},
                   {"tail_fraction", number_to_json(v.tail_fraction)},
                   {"converged", v.converged}});
  out["schatten"] = sch;
  return out;
}

Json to_json(const ToeplitzCheck& t) {
  return {{"deviation", number_to_json(t.deviation)},
          {"standard_norm_deviation", number_to_json(t.standard_norm_deviation)},
          {"scale", number_to_json(t.scale)}};
}

Json to_json(const BandStats& b) {
  return {{"count", b.count}, {"min", number_to_json(b.min)}, {"max", number_to_json(b.max)}};
}

Json to_json(const BerezinProfile& p) {
  Json out;
  out["p"] = p.p;
  out["grid"] = {{"r_min", p.grid.r_min},
                 {"w_max", p.grid.w_max},
                 {"radii", p.grid.radii},
                 {"angles", p.grid.angles},
                 {"far_annuli", p.grid.far_annuli}};
  out["sup"] = number_to_json(p.sup);
  out["argmax"] = complex_to_json(p.argmax);
  out["tail_max"] = number_to_json(p.tail_max);
  out["unbounded"] = p.unbounded;
  out["growth_ratio"] = number_to_json(p.growth_ratio);
  out["far_slope"] = number_to_json(p.far_slope);
  Json far = Json::array();
  for (std::size_t i = 0; i < p.far_radii.size(); ++i)
    far.push_back({{"radius", p.far_radii[i]}, {"max", number_to_json(p.far_max[i])}});
  out["far_field"] = far;
  return out;
}

Json to_json(const ConsistencyReport& r) {
  Json out;
  out["p"] = r.p;
  out["q"] = r.q;
  out["N"] = r.N;
  out["agreements"] = r.agreements;
  out["disagreements"] = r.disagreements;
  out["lattice_violations"] = r.lattice_violations;
  out["bands"] = {{"op_norm_over_sup_root", to_json(r.norm_band)},
                  {"hs_norm_sq_over_integral", to_json(r.hs_band)},
                  {"kernel_norm_pow_over_berezin", to_json(r.kernel_band)}};
  Json pairs = Json::array();
  for (const auto& pr : r.pairs) {
    Json e;
    e["index"] = pr.index;
    e["oracle_supported"] = pr.oracle_supported;
    Json cs = Json::array();
    for (const auto& c : pr.classifications) cs.push_back(to_json(c));
    e["classifications"] = cs;
    Json ds = Json::array();
    for (const auto& d : pr.disagreements)
      ds.push_back({{"property", d.property},
                    {"first", to_string(d.first)},
                    {"second", to_string(d.second)},
                    {"first_verdict", to_string(d.first_verdict)},
                    {"second_verdict", to_string(d.second_verdict)}});
    e["disagreements"] = ds;
    e["lattice_violations"] = pr.lattice_violations;
    pairs.push_back(e);
  }
  out["pairs"] = pairs;
  return out;
}

} // namespace fockops
