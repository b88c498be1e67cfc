#pragma once

// Problem instance: graph, stations, arrival rates, service rate and the
// late-arrival threshold, plus the JSON file format used by the CLI.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dispatch/graph.hpp"

namespace dispatch {

/// Raised when an instance or spec file fails validation; carries
/// field-level messages.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Instance {
  Graph graph;
  std::vector<int> stations;     // distinct node ids
  std::vector<int> capacities;   // trucks per station, all 1 for generated instances
  std::vector<double> lambdas;   // per-node arrival rates
  double mu = 1.0;
  double gamma = 0.0;
  double t_star = 0.0;
  double rho = 0.0;
  bool correlated = false;
  int outside_phases = 0;
  std::uint64_t seed = 0;

  int station_count() const { return static_cast<int>(stations.size()); }
  int node_count() const { return graph.node_count; }
  int total_trucks() const {
    return std::accumulate(capacities.begin(), capacities.end(), 0);
  }
  double total_lambda() const {
    return std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
  }
};

inline int max_station_phases(const Graph& g, const std::vector<int>& stations) {
  auto adj = g.adjacency();
  int m = 0;
  for (int s : stations) {
    auto dist = bfs_distances(adj, s);
    for (int v : dist) {
      if (v < 0) throw std::runtime_error("max_station_phases: disconnected graph");
      m = std::max(m, v);
    }
  }
  return m;
}

/// Stations placed sequentially on distinct nodes uniformly at random, one
/// truck each; per-node rates are i.i.d. uniform weights rescaled so that
/// sum(lambda) = rho * mu * I with mu = 1.
inline Instance generate_instance(const Graph& g, int station_count, double rho,
                                  double gamma, bool correlated,
                                  std::uint64_t seed) {
  if (station_count < 1 || station_count > g.node_count)
    throw std::invalid_argument("generate_instance: station_count out of range");
  if (!(rho > 0.0)) throw std::invalid_argument("generate_instance: rho must be > 0");
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("generate_instance: gamma must be in (0,1]");

  Instance inst;
  inst.graph = g;
  inst.mu = 1.0;
  inst.gamma = gamma;
  inst.rho = rho;
  inst.correlated = correlated;
  inst.seed = seed;

  Rng rng(seed);
  std::vector<char> used(g.node_count, 0);
  while (static_cast<int>(inst.stations.size()) < station_count) {
    int v = static_cast<int>(rng.below(g.node_count));
    if (!used[v]) {
      used[v] = 1;
      inst.stations.push_back(v);
    }
  }
  std::sort(inst.stations.begin(), inst.stations.end());
  inst.capacities.assign(inst.stations.size(), 1);

  inst.lambdas.resize(g.node_count);
  double total = 0.0;
  for (auto& l : inst.lambdas) {
    l = rng.uniform();
    total += l;
  }
  double want = rho * inst.mu * station_count;
  for (auto& l : inst.lambdas) l *= want / total;

  int m = max_station_phases(g, inst.stations);
  inst.t_star = gamma * m;
  inst.outside_phases = 2 * m;
  return inst;
}

// --- JSON file format -------------------------------------------------------
//
// Writers emit keys in this order: d, edges, stations, lambdas, mu, gamma,
// t_star, rho, correlated, outside_phases, seed. Readers accept any order
// and re-validate every invariant. Capacities are implicitly one truck per
// station.

inline nlohmann::ordered_json instance_to_json(const Instance& inst) {
  nlohmann::ordered_json j;
  j["d"] = inst.graph.d;
  auto edges = nlohmann::ordered_json::array();
  for (auto [u, v] : inst.graph.edges) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  j["stations"] = inst.stations;
  j["lambdas"] = inst.lambdas;
  j["mu"] = inst.mu;
  j["gamma"] = inst.gamma;
  j["t_star"] = inst.t_star;
  j["rho"] = inst.rho;
  j["correlated"] = inst.correlated;
  j["outside_phases"] = inst.outside_phases;
  j["seed"] = inst.seed;
  return j;
}

inline void validate_instance(const Instance& inst) {
  std::vector<std::string> errs;
  const Graph& g = inst.graph;
  if (g.d < 2) errs.push_back("d: must be >= 2");
  if (g.node_count != g.d * g.d) errs.push_back("d: node count must equal d^2");
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.node_count || v >= g.node_count || u >= v) {
      errs.push_back("edges: endpoint out of range or not ordered u < v");
      break;
    }
    bool same_row = (u / g.d == v / g.d) && (v - u == 1);
    bool same_col = v - u == g.d;
    if (!same_row && !same_col) {
      errs.push_back("edges: [" + std::to_string(u) + "," + std::to_string(v) +
                     "] does not join lattice neighbours");
      break;
    }
  }
  if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end())
    errs.push_back("edges: duplicate edge");
  if (errs.empty() && !is_connected(g)) errs.push_back("edges: graph is not connected");

  if (inst.stations.empty()) errs.push_back("stations: at least one required");
  for (int s : inst.stations)
    if (s < 0 || s >= g.node_count) {
      errs.push_back("stations: node id out of range");
      break;
    }
  {
    auto st = inst.stations;
    std::sort(st.begin(), st.end());
    if (std::adjacent_find(st.begin(), st.end()) != st.end())
      errs.push_back("stations: duplicate node id");
  }
  if (inst.capacities.size() != inst.stations.size())
    errs.push_back("capacities: size mismatch with stations");
  for (int c : inst.capacities)
    if (c < 1) {
      errs.push_back("capacities: must be >= 1");
      break;
    }
  if (static_cast<int>(inst.lambdas.size()) != g.node_count)
    errs.push_back("lambdas: size must equal d^2");
  for (double l : inst.lambdas)
    if (!(l >= 0.0)) {
      errs.push_back("lambdas: rates must be nonnegative");
      break;
    }
  if (!(inst.mu > 0.0)) errs.push_back("mu: must be > 0");
  if (!(inst.gamma > 0.0 && inst.gamma <= 1.0)) errs.push_back("gamma: must be in (0,1]");
  if (!(inst.rho > 0.0)) errs.push_back("rho: must be > 0");

  if (errs.empty()) {
    int m = max_station_phases(g, inst.stations);
    if (std::abs(inst.t_star - inst.gamma * m) > 1e-9 * std::max(1.0, inst.t_star))
      errs.push_back("t_star: must equal gamma * max path phases (" +
                     std::to_string(inst.gamma * m) + ")");
    if (inst.outside_phases != 2 * m)
      errs.push_back("outside_phases: must equal 2 * max path phases (" +
                     std::to_string(2 * m) + ")");
    double want = inst.rho * inst.mu * inst.total_trucks();
    if (std::abs(inst.total_lambda() - want) > 1e-9 * std::max(1.0, want))
      errs.push_back("lambdas: sum must equal rho * mu * total trucks");
  }

  if (!errs.empty()) {
    std::string msg = "invalid instance:";
    for (const auto& e : errs) msg += "\n  - " + e;
    throw ValidationError(msg);
  }
}

inline Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  try {
    inst.graph.d = j.at("d").get<int>();
    inst.graph.node_count = inst.graph.d * inst.graph.d;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw ValidationError("invalid instance:\n  - edges: entries must be [u,v] pairs");
      inst.graph.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::sort(inst.graph.edges.begin(), inst.graph.edges.end());
    inst.stations = j.at("stations").get<std::vector<int>>();
    inst.lambdas = j.at("lambdas").get<std::vector<double>>();
    inst.mu = j.at("mu").get<double>();
    inst.gamma = j.at("gamma").get<double>();
    inst.t_star = j.at("t_star").get<double>();
    inst.rho = j.at("rho").get<double>();
    inst.correlated = j.at("correlated").get<bool>();
    inst.outside_phases = j.at("outside_phases").get<int>();
    inst.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid instance:\n  - ") + e.what());
  }
  inst.capacities.assign(inst.stations.size(), 1);
  validate_instance(inst);
  return inst;
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << instance_to_json(inst).dump(2) << "\n";
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid instance file ") + path + ": " + e.what());
  }
  return instance_from_json(j);
}

}  // namespace dispatch
