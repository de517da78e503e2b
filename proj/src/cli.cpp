#include "fockops/cli.hpp"

#include "fockops/error.hpp"
#include "fockops/operator_rep.hpp"
#include "fockops/serialize.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace fockops {

namespace fs = std::filesystem;

namespace {

// Bumped whenever outputs for an unchanged config may change.
constexpr const char* kCacheSalt = "fockops-cache-1";

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::Berezin, "berezin"}, {Command::Norm, "norm"},   {Command::Classify, "classify"},
    {Command::Schatten, "schatten"}, {Command::Sweep, "sweep"}, {Command::Crosscheck, "crosscheck"},
};

void only_keys(const nlohmann::json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw ConfigError("unknown field '" + k + "' in " + where);
  }
}

double get_number(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

long long get_integer(const nlohmann::json& j, const char* key, long long fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  return j[key].get<long long>();
}

std::string get_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j[key].is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
  return j[key].get<std::string>();
}

void validate(const RunConfig& c) {
  if (!(c.p > 0.0) || !(c.q > 0.0)) throw ConfigError("p and q must be positive");
  if (!(c.alpha > 0.0)) throw ConfigError("alpha must be positive");
  try {
    c.grid.validate();
    c.tol.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  for (double s : c.schatten_p)
    if (!(s > 0.0)) throw ConfigError("schatten_p entries must be positive");
  if (c.kernel_samples < 0) throw ConfigError("kernel_samples must be non-negative");
  const bool needs_matrix = c.command == Command::Schatten || c.command == Command::Crosscheck;
  if (needs_matrix && c.N < 4) throw ConfigError("N must be at least 4");
  if (c.command == Command::Sweep && c.N != 0 && c.N < 4) throw ConfigError("N must be 0 or at least 4");
  if (c.command == Command::Sweep) {
    if (!c.random_family && c.family.empty()) throw ConfigError("sweep needs a family");
  } else if (!c.pair) {
    throw ConfigError(std::string(to_string(c.command)) + " needs a pair");
  }
}

void write_atomic(const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + tmp.string());
    f << bytes;
    if (!f.flush()) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json header(const RunConfig& c) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["command"] = to_string(c.command);
  return out;
}

Json exponents(const RunConfig& c) { return {{"p", c.p}, {"q", c.q}, {"alpha", c.alpha}}; }

bool inconclusive(const Classification& c) {
  return c.bounded.verdict == Verdict::Inconclusive || c.compact.verdict == Verdict::Inconclusive;
}

std::vector<SymbolPair> sweep_family(const RunConfig& c) {
  if (!c.random_family) return c.family;
  const auto& r = *c.random_family;
  return random_polynomial_family(r.count, r.max_degree, r.seed, c.alpha);
}

// Computes the artifacts of one command.
RunResult compute(const RunConfig& c) {
  RunResult r;
  const ClassifyOptions copts{c.grid, c.schatten_p, c.tol};
  Json out = header(c);

  switch (c.command) {
  case Command::Berezin: {
    const auto prof = berezin_profile(*c.pair, c.q, c.grid, c.tol);
    std::ostringstream csv;
    write_profile_csv(prof, csv);
    r.primary = csv.str();
    break;
  }
  case Command::Norm: {
    const auto cls = classify_berezin(*c.pair, c.p, c.q, ClassifyOptions{c.grid, {}, c.tol});
    out["pair"] = pair_to_json(*c.pair);
    out["exponents"] = exponents(c);
    out["bounded"] = to_json(cls.bounded);
    out["norm_estimate"] = number_to_json(cls.norm_estimate);
    out["essential_norm_estimate"] = number_to_json(cls.essential_norm_estimate);
    if (c.p == 2.0 && c.q == 2.0) {
      const auto s = spectral_summary(build_matrix(*c.pair, c.N), {});
      out["spectral"] = {{"N", c.N}, {"op_norm", number_to_json(s.op_norm)},
                         {"ess_norm_proxy", number_to_json(s.ess_norm_proxy)}};
    } else {
      out["spectral"] = nullptr;
    }
    r.primary = dump(out);
    if (cls.bounded.verdict == Verdict::Inconclusive) r.exit_code = kExitInconclusive;
    break;
  }
  case Command::Classify: {
    const auto cls = classify_berezin(*c.pair, c.p, c.q, copts);
    const auto oracle = oracle_classify(*c.pair, c.p, c.q, c.schatten_p);
    out["pair"] = pair_to_json(*c.pair);
    out["exponents"] = exponents(c);
    out["classification"] = to_json(cls);
    out["oracle"] = oracle ? to_json(*oracle) : Json(nullptr);
    auto violations = lattice_violations(cls);
    if (oracle)
      for (auto& v : lattice_violations(*oracle)) violations.push_back(std::move(v));
    out["lattice_violations"] = violations;
    r.primary = dump(out);
    if (inconclusive(cls)) r.exit_code = kExitInconclusive;
    break;
  }
  case Command::Schatten: {
    const auto s = spectral_summary(build_matrix(*c.pair, c.N), c.schatten_p);
    out["pair"] = pair_to_json(*c.pair);
    out["alpha"] = c.alpha;
    out["summary"] = to_json(s);
    out["classification"] = to_json(classify_spectral(s));
    r.primary = dump(out);
    std::ostringstream csv;
    write_singular_values_csv(s, csv);
    r.secondary = csv.str();
    break;
  }
  case Command::Sweep: {
    const auto family = sweep_family(c);
    const auto rep = consistency_report(family, c.p, c.q, c.N, ReportOptions{copts, c.kernel_samples});
    if (c.random_family)
      out["random_family"] = {{"count", c.random_family->count},
                              {"max_degree", c.random_family->max_degree},
                              {"seed", c.random_family->seed}};
    Json members = Json::array();
    for (const auto& pair : family) members.push_back(pair_to_json(pair));
    out["family"] = members;
    out["alpha"] = c.alpha;
    out["report"] = to_json(rep);
    r.primary = dump(out);
    if (rep.disagreements > 0 || rep.lattice_violations > 0) r.exit_code = kExitDisagreement;
    break;
  }
  case Command::Crosscheck: {
    const auto t = toeplitz_crosscheck(*c.pair, c.N, c.tol);
    out["pair"] = pair_to_json(*c.pair);
    out["alpha"] = c.alpha;
    out["N"] = c.N;
    out["check"] = to_json(t);
    r.primary = dump(out);
    break;
  }
  }
  return r;
}

fs::path secondary_path(const std::string& output) {
  fs::path p(output);
  return p.parent_path() / (p.stem().string() + ".singular_values.csv");
}

} // namespace

const char* to_string(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "?";
}

RunConfig parse_config(const nlohmann::json& j) {
  only_keys(j,
            {"command", "pair", "family", "p", "q", "alpha", "grid", "N", "schatten_p", "tolerance",
             "kernel_samples", "output", "cache_dir"},
            "config");
  RunConfig c;
  const std::string command = get_string(j, "command");
  bool found = false;
  for (const auto& [cmd, name] : kCommands)
    if (command == name) {
      c.command = cmd;
      found = true;
    }
  if (!found) throw ConfigError("unknown or missing command '" + command + "'");

  c.p = get_number(j, "p", c.p);
  c.q = get_number(j, "q", c.q);
  c.alpha = get_number(j, "alpha", c.alpha);
  c.N = static_cast<int>(get_integer(j, "N", c.N));
  c.kernel_samples = static_cast<int>(get_integer(j, "kernel_samples", c.kernel_samples));
  c.output = get_string(j, "output");
  c.cache_dir = get_string(j, "cache_dir");
  if (!(c.alpha > 0.0)) throw ConfigError("alpha must be positive");

  if (j.contains("grid")) {
    const auto& g = j["grid"];
    only_keys(g, {"r_min", "w_max", "radii", "angles", "far_annuli"}, "grid");
    c.grid.r_min = get_number(g, "r_min", c.grid.r_min);
    c.grid.w_max = get_number(g, "w_max", c.grid.w_max);
    c.grid.radii = static_cast<int>(get_integer(g, "radii", c.grid.radii));
    c.grid.angles = static_cast<int>(get_integer(g, "angles", c.grid.angles));
    c.grid.far_annuli = static_cast<int>(get_integer(g, "far_annuli", c.grid.far_annuli));
  }
  if (j.contains("tolerance")) {
    const auto& t = j["tolerance"];
    only_keys(t, {"rel_tol", "abs_tol", "max_refinements"}, "tolerance");
    c.tol.rel_tol = get_number(t, "rel_tol", c.tol.rel_tol);
    c.tol.abs_tol = get_number(t, "abs_tol", c.tol.abs_tol);
    c.tol.max_refinements = static_cast<int>(get_integer(t, "max_refinements", c.tol.max_refinements));
  }
  if (j.contains("schatten_p")) {
    if (!j["schatten_p"].is_array()) throw ConfigError("'schatten_p' must be an array");
    c.schatten_p.clear();
    for (const auto& x : j["schatten_p"]) {
      if (!x.is_number()) throw ConfigError("'schatten_p' entries must be numbers");
      c.schatten_p.push_back(x.get<double>());
    }
  }
  if (j.contains("pair")) c.pair = pair_from_json(Json(j["pair"]), c.alpha);
  if (j.contains("family")) {
    const auto& f = j["family"];
    only_keys(f, {"random", "pairs"}, "family");
    if (f.contains("random") == f.contains("pairs")) throw ConfigError("family needs exactly one of 'random' and 'pairs'");
    if (f.contains("random")) {
      const auto& r = f["random"];
      only_keys(r, {"count", "max_degree", "seed"}, "family.random");
      RandomFamily rf;
      const long long count = get_integer(r, "count", static_cast<long long>(rf.count));
      if (count < 0) throw ConfigError("family.random.count must be non-negative");
      rf.count = static_cast<std::size_t>(count);
      rf.max_degree = static_cast<int>(get_integer(r, "max_degree", rf.max_degree));
      if (rf.max_degree < 0) throw ConfigError("family.random.max_degree must be non-negative");
      if (r.contains("seed")) {
        if (!r["seed"].is_number_unsigned() && !(r["seed"].is_number_integer() && r["seed"].get<long long>() >= 0))
          throw ConfigError("family.random.seed must be a non-negative integer");
        rf.seed = r["seed"].get<std::uint64_t>();
      }
      c.random_family = rf;
    } else {
      if (!f["pairs"].is_array()) throw ConfigError("family.pairs must be an array");
      for (const auto& pj : f["pairs"]) c.family.push_back(pair_from_json(Json(pj), c.alpha));
    }
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

void apply_overrides(RunConfig& config, const RunOverrides& o) {
  if (o.out) config.output = *o.out;
  if (o.cache_dir) config.cache_dir = *o.cache_dir;
  if (o.no_cache) config.cache_dir.clear();
  if (o.seed && config.random_family) config.random_family->seed = *o.seed;
}

nlohmann::json canonical_config(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = to_string(c.command);
  j["p"] = c.p;
  j["q"] = c.q;
  j["alpha"] = c.alpha;
  j["N"] = c.N;
  j["grid"] = {{"r_min", c.grid.r_min},
               {"w_max", c.grid.resolved_w_max(c.alpha)},
               {"radii", c.grid.radii},
               {"angles", c.grid.angles},
               {"far_annuli", c.grid.far_annuli}};
  j["tolerance"] = {{"rel_tol", c.tol.rel_tol}, {"abs_tol", c.tol.abs_tol}, {"max_refinements", c.tol.max_refinements}};
  j["schatten_p"] = c.schatten_p;
  j["kernel_samples"] = c.kernel_samples;
  if (c.pair) j["pair"] = nlohmann::json::parse(pair_to_json(*c.pair).dump());
  if (c.random_family)
    j["family"] = {{"random",
                    {{"count", c.random_family->count},
                     {"max_degree", c.random_family->max_degree},
                     {"seed", c.random_family->seed}}}};
  else if (!c.family.empty()) {
    auto pairs = nlohmann::json::array();
    for (const auto& p : c.family) pairs.push_back(nlohmann::json::parse(pair_to_json(p).dump()));
    j["family"] = {{"pairs", pairs}};
  }
  return j;
}

std::string cache_key(const RunConfig& config) {
  const std::string text = std::string(kCacheSalt) + "\n" + canonical_config(config).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

RunResult run(const RunConfig& config, std::ostream& log) {
  const std::string key = cache_key(config);
  RunResult r;
  bool hit = false;
  fs::path entry;
  if (!config.cache_dir.empty()) {
    entry = fs::path(config.cache_dir) / (key + ".json");
    std::ifstream f(entry, std::ios::binary);
    if (f) {
      try {
        const auto j = nlohmann::json::parse(f);
        if (j.at("key") == key && j.at("schema") == kSchemaVersion) {
          r.exit_code = j.at("exit_code").get<int>();
          r.primary = j.at("primary").get<std::string>();
          r.secondary = j.at("secondary").get<std::string>();
          hit = true;
        }
      } catch (const nlohmann::json::exception&) {
        log << "cache entry " << entry.string() << " unreadable, recomputing\n";
      }
    }
  }
  if (hit) {
    log << "cache hit " << key << "\n";
  } else {
    r = compute(config);
    if (!entry.empty()) {
      nlohmann::json j{{"schema", kSchemaVersion}, {"key", key},           {"command", to_string(config.command)},
                       {"exit_code", r.exit_code}, {"primary", r.primary}, {"secondary", r.secondary}};
      write_atomic(entry, j.dump());
      log << "cache store " << key << "\n";
    }
  }
  r.cache_hit = hit;
  r.cache_key = key;

  if (!config.output.empty()) {
    write_atomic(config.output, r.primary);
    r.primary_path = config.output;
    if (!r.secondary.empty()) {
      const auto sp = secondary_path(config.output);
      write_atomic(sp, r.secondary);
      r.secondary_path = sp.string();
    }
  }
  return r;
}

int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify Volterra-type and weighted composition operators on Fock spaces"};
  std::string config_path;
  RunOverrides o;
  std::string out_path, cache_dir;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "Run configuration (JSON)")->required();
  auto* out_opt = app.add_option("--out", out_path, "Output path (overrides the config)");
  auto* cache_opt = app.add_option("--cache", cache_dir, "Cache directory (overrides the config)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for random sweep families");
  app.add_flag("--no-cache", o.no_cache, "Ignore and do not update the cache");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (*out_opt) o.out = out_path;
  if (*cache_opt) o.cache_dir = cache_dir;
  if (*seed_opt) o.seed = seed;

  try {
    auto config = load_config(config_path);
    apply_overrides(config, o);
    const auto r = run(config, err);
    if (r.primary_path.empty()) out << r.primary;
    return r.exit_code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

} // namespace fockops
