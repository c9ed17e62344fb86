#include "sisnet/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "sisnet/micro_sim.hpp"

namespace sisnet {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys = {
    "topology", "island_sizes", "island_size", "size_schedule", "strains",
    "initial", "t_end", "samples", "replications", "seed", "workers",
    "output_dir", "integrator", "deviation_tolerance", "taylor_order", "suite",
    "suite_pairs", "suite_gammas", "inputs", "plot_mode"};

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError(path.empty() ? key : path + "." + key, "missing required field");
  }
  return obj.at(key);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path, "expected a finite number");
  return d;
}

double as_positive(const json& v, const std::string& path) {
  const double d = as_number(v, path);
  if (!(d > 0.0)) throw ConfigError(path, "must be strictly positive");
  return d;
}

std::int64_t as_int(const json& v, const std::string& path, std::int64_t min) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  const auto i = v.get<std::int64_t>();
  if (i < min) throw ConfigError(path, "must be at least " + std::to_string(min));
  return i;
}

std::size_t as_island(const json& v, const std::string& path, std::size_t islands) {
  const auto i = as_int(v, path, 1);
  if (static_cast<std::size_t>(i) > islands) {
    throw ConfigError(path, "island index out of range 1.." + std::to_string(islands));
  }
  return static_cast<std::size_t>(i - 1);
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
  return v;
}

TopologySpec parse_topology(const json& t) {
  const std::string path = "topology";
  if (!t.is_object()) throw ConfigError(path, "expected an object");
  TopologySpec spec;
  if (t.contains("edges")) {
    spec.generator = "edges";
    spec.islands = static_cast<std::size_t>(as_int(require(t, "islands", path), join(path, "islands"), 2));
    const auto& edges = as_array(t.at("edges"), join(path, "edges"));
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto epath = at_index(join(path, "edges"), e);
      const auto& pair = as_array(edges[e], epath);
      if (pair.size() != 2) throw ConfigError(epath, "an edge is a pair of island indices");
      const auto a = as_island(pair[0], at_index(epath, 0), spec.islands);
      const auto b = as_island(pair[1], at_index(epath, 1), spec.islands);
      if (a == b) throw ConfigError(epath, "self-loops are not allowed");
      spec.edges.emplace_back(a, b);
    }
    return spec;
  }
  const auto& gen = require(t, "generator", path);
  if (!gen.is_string()) throw ConfigError(join(path, "generator"), "expected a string");
  spec.generator = gen.get<std::string>();
  if (spec.generator == "bipartite") {
    spec.islands = 2;
  } else if (spec.generator == "cycle" || spec.generator == "complete" ||
             spec.generator == "star") {
    spec.islands = static_cast<std::size_t>(
        as_int(require(t, "islands", path), join(path, "islands"),
               spec.generator == "cycle" ? 3 : 2));
  } else {
    throw ConfigError(join(path, "generator"),
                      "unknown generator '" + spec.generator +
                          "' (bipartite, cycle, complete, star)");
  }
  return spec;
}

std::vector<double> parse_fraction_row(const json& v, const std::string& path,
                                       std::size_t strains) {
  const auto& row = as_array(v, path);
  if (row.size() != strains) {
    throw ConfigError(path, "expected one fraction per strain (" + std::to_string(strains) + ")");
  }
  std::vector<double> out;
  double total = 0.0;
  for (std::size_t k = 0; k < strains; ++k) {
    const double f = as_number(row[k], at_index(path, k));
    if (f < 0.0 || f > 1.0) throw ConfigError(at_index(path, k), "fraction outside [0,1]");
    total += f;
    out.push_back(f);
  }
  if (total > 1.0) throw ConfigError(path, "fractions of one island sum above 1");
  return out;
}

InitialSpec parse_initial(const json& v, std::size_t islands, std::size_t strains) {
  const std::string path = "initial";
  InitialSpec spec;
  spec.fractions.assign(islands * strains, 0.0);
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  if (v.contains("uniform")) {
    const auto row = parse_fraction_row(v.at("uniform"), join(path, "uniform"), strains);
    for (std::size_t i = 0; i < islands; ++i) {
      std::copy(row.begin(), row.end(), spec.fractions.begin() + static_cast<long>(i * strains));
    }
  } else if (v.contains("seed_island")) {
    const auto i = as_island(v.at("seed_island"), join(path, "seed_island"), islands);
    const auto row = parse_fraction_row(require(v, "fractions", path), join(path, "fractions"), strains);
    std::copy(row.begin(), row.end(), spec.fractions.begin() + static_cast<long>(i * strains));
  } else if (v.contains("fractions")) {
    const auto fpath = join(path, "fractions");
    const auto& rows = as_array(v.at("fractions"), fpath);
    if (rows.size() != islands) {
      throw ConfigError(fpath, "expected one row per island (" + std::to_string(islands) + ")");
    }
    for (std::size_t i = 0; i < islands; ++i) {
      const auto row = parse_fraction_row(rows[i], at_index(fpath, i), strains);
      std::copy(row.begin(), row.end(), spec.fractions.begin() + static_cast<long>(i * strains));
    }
  } else {
    throw ConfigError(path, "expected one of 'uniform', 'seed_island' or 'fractions'");
  }
  return spec;
}

IntegratorControl parse_integrator(const json& v) {
  const std::string path = "integrator";
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  IntegratorControl c;
  for (const auto& [key, val] : v.items()) {
    const auto kpath = join(path, key);
    if (key == "method") {
      if (!val.is_string()) throw ConfigError(kpath, "expected a string");
      try {
        c.method = integrator_method_from_string(val.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(kpath, e.what());
      }
    } else if (key == "rel_tol") {
      c.rel_tol = as_positive(val, kpath);
    } else if (key == "abs_tol") {
      c.abs_tol = as_positive(val, kpath);
    } else if (key == "fixed_step") {
      c.fixed_step = as_positive(val, kpath);
    } else if (key == "initial_step") {
      c.initial_step = as_positive(val, kpath);
    } else {
      throw ConfigError(kpath, "unknown key");
    }
  }
  return c;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "configuration must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!kKnownKeys.count(key)) throw ConfigError(key, "unknown key");
  }

  ExperimentConfig cfg;
  cfg.source = doc;

  if (doc.contains("suite")) {
    if (!doc.at("suite").is_string()) throw ConfigError("suite", "expected a string");
    cfg.suite = doc.at("suite").get<std::string>();
  }
  if (doc.contains("suite_pairs")) {
    cfg.suite_pairs = static_cast<std::size_t>(as_int(doc.at("suite_pairs"), "suite_pairs", 1));
  }
  if (doc.contains("suite_gammas")) {
    const auto& g = as_array(doc.at("suite_gammas"), "suite_gammas");
    std::vector<double> rates;
    for (std::size_t n = 0; n < g.size(); ++n) {
      rates.push_back(as_positive(g[n], "suite_gammas[" + std::to_string(n) + "]"));
    }
    if (rates.empty()) throw ConfigError("suite_gammas", "expected at least one rate");
    cfg.suite_gammas = rates;
  }
  if (doc.contains("inputs")) {
    const auto& inputs = as_array(doc.at("inputs"), "inputs");
    for (std::size_t n = 0; n < inputs.size(); ++n) {
      if (!inputs[n].is_string()) throw ConfigError(at_index("inputs", n), "expected a path");
      std::filesystem::path p = inputs[n].get<std::string>();
      if (!std::filesystem::exists(p)) throw ConfigError(at_index("inputs", n), "file does not exist");
      cfg.inputs.push_back(p);
    }
  }
  if (doc.contains("plot_mode")) {
    const auto& m = doc.at("plot_mode");
    if (!m.is_string() || (m != "series" && m != "overlay")) {
      throw ConfigError("plot_mode", "expected 'series' or 'overlay'");
    }
    cfg.plot_mode = m.get<std::string>();
  }
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) throw ConfigError("output_dir", "expected a path");
    cfg.output_dir = doc.at("output_dir").get<std::string>();
  }

  // Pure plotting or suite-only configs need no model.
  if (!doc.contains("topology")) {
    if (doc.contains("strains") || doc.contains("initial")) {
      throw ConfigError("topology", "missing required field");
    }
    return cfg;
  }

  cfg.topology = parse_topology(doc.at("topology"));
  const std::size_t m = cfg.topology.islands;

  if (doc.contains("size_schedule")) {
    const auto& sched = as_array(doc.at("size_schedule"), "size_schedule");
    for (std::size_t n = 0; n < sched.size(); ++n) {
      const auto v = as_int(sched[n], at_index("size_schedule", n), 1);
      if (!cfg.size_schedule.empty() && v <= cfg.size_schedule.back()) {
        throw ConfigError(at_index("size_schedule", n), "sizes must increase strictly");
      }
      cfg.size_schedule.push_back(v);
    }
  }
  if (doc.contains("island_sizes")) {
    const auto& sizes = as_array(doc.at("island_sizes"), "island_sizes");
    if (sizes.size() != m) {
      throw ConfigError("island_sizes", "expected " + std::to_string(m) + " sizes");
    }
    for (std::size_t n = 0; n < sizes.size(); ++n) {
      cfg.island_sizes.push_back(as_int(sizes[n], at_index("island_sizes", n), 1));
    }
  } else if (doc.contains("island_size")) {
    cfg.island_sizes.assign(m, as_int(doc.at("island_size"), "island_size", 1));
  } else if (!cfg.size_schedule.empty()) {
    cfg.island_sizes.assign(m, cfg.size_schedule.front());
  } else {
    throw ConfigError("island_sizes", "give island_sizes, island_size or size_schedule");
  }

  const auto& strains = as_array(require(doc, "strains", ""), "strains");
  if (strains.empty()) throw ConfigError("strains", "at least one strain is required");
  for (std::size_t k = 0; k < strains.size(); ++k) {
    const auto spath = at_index("strains", k);
    const auto& s = strains[k];
    if (!s.is_object()) throw ConfigError(spath, "expected an object");
    StrainSpec spec;
    for (const auto& [key, val] : s.items()) {
      const auto kpath = join(spath, key);
      if (key == "gamma") {
        spec.gamma = as_positive(val, kpath);
      } else if (key == "mu") {
        spec.mu = as_positive(val, kpath);
      } else if (key == "pair_rates") {
        const auto& pairs = as_array(val, kpath);
        for (std::size_t n = 0; n < pairs.size(); ++n) {
          const auto ppath = at_index(kpath, n);
          const auto& pr = pairs[n];
          StrainParams::PairRate rate{};
          rate.strain = k;
          rate.from = as_island(require(pr, "from", ppath), join(ppath, "from"), m);
          rate.to = as_island(require(pr, "to", ppath), join(ppath, "to"), m);
          rate.rate = as_positive(require(pr, "rate", ppath), join(ppath, "rate"));
          spec.pair_rates.push_back(rate);
        }
      } else {
        throw ConfigError(kpath, "unknown key");
      }
    }
    if (!s.contains("gamma")) throw ConfigError(join(spath, "gamma"), "missing required field");
    cfg.strains.push_back(spec);
  }

  if (doc.contains("initial")) {
    cfg.initial = parse_initial(doc.at("initial"), m, cfg.strains.size());
  } else {
    cfg.initial.fractions.assign(m * cfg.strains.size(), 0.0);
  }

  if (doc.contains("t_end")) cfg.t_end = as_positive(doc.at("t_end"), "t_end");
  if (doc.contains("samples")) {
    cfg.samples = static_cast<std::size_t>(as_int(doc.at("samples"), "samples", 1));
  }
  if (doc.contains("replications")) {
    cfg.replications = static_cast<std::size_t>(as_int(doc.at("replications"), "replications", 1));
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned() && !doc.at("seed").is_number_integer()) {
      throw ConfigError("seed", "expected a non-negative integer");
    }
    cfg.seed = static_cast<std::uint64_t>(as_int(doc.at("seed"), "seed", 0));
  }
  if (doc.contains("workers")) {
    cfg.workers = static_cast<std::size_t>(as_int(doc.at("workers"), "workers", 1));
  }
  if (doc.contains("integrator")) cfg.integrator = parse_integrator(doc.at("integrator"));
  cfg.integrator.samples = cfg.samples;
  if (doc.contains("deviation_tolerance")) {
    cfg.deviation_tolerance = as_positive(doc.at("deviation_tolerance"), "deviation_tolerance");
  }
  if (doc.contains("taylor_order")) {
    cfg.taylor_order = static_cast<std::size_t>(as_int(doc.at("taylor_order"), "taylor_order", 1));
  }

  // Surface topology errors (rates on non-adjacent pairs etc.) as config errors.
  try {
    const auto net = cfg.network();
    (void)cfg.strain_params(net);
    (void)cfg.initial_counts(net);
  } catch (const TopologyError& e) {
    throw ConfigError("topology", e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("strains", e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("", "cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

SuperNetwork ExperimentConfig::network() const {
  const auto& g = topology.generator;
  if (g == "edges") return SuperNetwork::build(island_sizes, topology.edges);
  std::vector<Edge> edges;
  const std::size_t m = topology.islands;
  if (g == "bipartite") {
    edges = {{0, 1}};
  } else if (g == "cycle") {
    for (std::size_t i = 0; i < m; ++i) edges.emplace_back(i, (i + 1) % m);
  } else if (g == "complete") {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) edges.emplace_back(i, j);
  } else if (g == "star") {
    for (std::size_t i = 1; i < m; ++i) edges.emplace_back(0, i);
  } else {
    throw ConfigError("topology.generator", "unknown generator");
  }
  return SuperNetwork::build(island_sizes, edges);
}

SuperNetwork ExperimentConfig::network_with_size(std::int64_t n) const {
  return network().with_uniform_size(n);
}

StrainParams ExperimentConfig::strain_params(const SuperNetwork& net) const {
  std::vector<double> gamma, mu;
  std::vector<StrainParams::PairRate> overrides;
  for (const auto& s : strains) {
    gamma.push_back(s.gamma);
    mu.push_back(s.mu);
    overrides.insert(overrides.end(), s.pair_rates.begin(), s.pair_rates.end());
  }
  return StrainParams::with_overrides(net, gamma, mu, overrides);
}

MacroCounts ExperimentConfig::initial_counts(const SuperNetwork& net) const {
  return MacroCounts::from_fractions(net, num_strains(), initial.fractions);
}

MeanFieldState ExperimentConfig::initial_fractions() const {
  return MeanFieldState(num_islands(), num_strains(), initial.fractions);
}

std::vector<double> ExperimentConfig::grid() const { return uniform_grid(t_end, samples); }

std::vector<double> ExperimentConfig::gammas() const {
  std::vector<double> out;
  for (const auto& s : strains) out.push_back(s.gamma);
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string ExperimentConfig::hash() const { return fnv1a_hex(source.dump()); }

json integrator_json(const IntegratorControl& c) {
  json j{{"method", to_string(c.method)}};
  if (c.method == IntegratorMethod::ClassicalRK4) {
    j["fixed_step"] = c.fixed_step;
  } else {
    j["rel_tol"] = c.rel_tol;
    j["abs_tol"] = c.abs_tol;
    j["initial_step"] = c.initial_step;
    j["min_step"] = c.min_step;
  }
  return j;
}

}  // namespace sisnet
