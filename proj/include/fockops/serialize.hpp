#pragma once

#include "fockops/berezin.hpp"
#include "fockops/criteria.hpp"
#include "fockops/operator_rep.hpp"
#include "fockops/symbols.hpp"

#include <nlohmann/json.hpp>

namespace fockops {

using Json = nlohmann::ordered_json;

/// Schema version written into every JSON output.
inline constexpr const char* kSchemaVersion = "v1";

/// Finite numbers as numbers; +-Inf and NaN as the strings "inf", "-inf", "nan".
Json number_to_json(double x);
double number_from_json(const Json& j);

/// Complex numbers are [re, im]; a plain number is read as a real.
Json complex_to_json(cplx z);
cplx complex_from_json(const Json& j);

/// Coefficient arrays, lowest degree first.
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

/// {"g": [...]} (Volterra kind) or {"u": [...]} (weighted kind), optional
/// "exponent": [...] for c(z) e^{q(z)}, optional "psi": {"a": z, "b": z}.
/// Unknown keys raise ConfigError.
Json pair_to_json(const SymbolPair& pair);
SymbolPair pair_from_json(const Json& j, double alpha);

Json to_json(const Judgement& j);
Json to_json(const Classification& c);
Json to_json(const SpectralSummary& s);
Json to_json(const ToeplitzCheck& t);
Json to_json(const BandStats& b);
/// Summary fields of a profile (sup, argmax, far field); the grid values go to CSV.
Json to_json(const BerezinProfile& p);
Json to_json(const ConsistencyReport& r);

} // namespace fockops
