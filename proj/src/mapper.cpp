// Copyright 2026 The qforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qforge/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>

#include "qforge/error.hpp"

namespace qforge {

namespace {

std::pair<Qubit, Qubit> key(Qubit a, Qubit b) { return {std::min(a, b), std::max(a, b)}; }

bool interacts(const Gate& g) {
  return g.qubits.size() >= 2 && g.type != GateType::BARRIER;
}

}  // namespace

void CouplingGraph::add_edge(Qubit a, Qubit b, double success) {
  if (a >= num_qubits_ || b >= num_qubits_) {
    throw Error(ErrorCode::InvalidArgument, "edge endpoint outside the graph");
  }
  if (a == b) throw Error(ErrorCode::InvalidArgument, "self-loops are not allowed");
  if (!(success > 0.0 && success <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "edge success rate must lie in (0,1]");
  }
  auto [it, inserted] = edge_rates_.insert_or_assign(key(a, b), success);
  if (inserted) {
    adjacency_[a].insert(std::upper_bound(adjacency_[a].begin(), adjacency_[a].end(), b), b);
    adjacency_[b].insert(std::upper_bound(adjacency_[b].begin(), adjacency_[b].end(), a), a);
  }
}

void CouplingGraph::set_node_success(std::vector<double> rates) {
  if (!rates.empty() && rates.size() != num_qubits_) {
    throw Error(ErrorCode::InvalidArgument, "node success list must cover every qubit");
  }
  for (double r : rates) {
    if (!(r > 0.0 && r <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "node success rate must lie in (0,1]");
    }
  }
  node_success_ = std::move(rates);
}

bool CouplingGraph::adjacent(Qubit a, Qubit b) const { return edge_rates_.count(key(a, b)) != 0; }

double CouplingGraph::edge_success(Qubit a, Qubit b) const {
  auto it = edge_rates_.find(key(a, b));
  if (it == edge_rates_.end()) {
    throw Error(ErrorCode::NonAdjacentGate,
                "qubits " + std::to_string(a) + " and " + std::to_string(b) + " are not coupled");
  }
  return it->second;
}

double CouplingGraph::node_success(Qubit q) const {
  return node_success_.empty() ? 1.0 : node_success_.at(q);
}

std::vector<std::tuple<Qubit, Qubit, double>> CouplingGraph::edges() const {
  std::vector<std::tuple<Qubit, Qubit, double>> out;
  for (const auto& [k, s] : edge_rates_) out.emplace_back(k.first, k.second, s);
  return out;
}

bool CouplingGraph::connected() const {
  if (num_qubits_ == 0) return true;
  std::vector<bool> seen(num_qubits_, false);
  std::vector<Qubit> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Qubit u = stack.back();
    stack.pop_back();
    for (Qubit v : adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == num_qubits_;
}

bool CouplingGraph::complete() const {
  return edge_rates_.size() == num_qubits_ * (num_qubits_ - (num_qubits_ > 0 ? 1 : 0)) / 2;
}

void CouplingGraph::validate() const {
  if (num_qubits_ == 0) throw Error(ErrorCode::InvalidArgument, "coupling graph has no qubits");
  if (!connected()) throw Error(ErrorCode::Disconnected, "coupling graph is not connected");
}

CouplingGraph CouplingGraph::line(std::size_t n, double success) {
  CouplingGraph g(n);
  for (Qubit q = 0; q + 1 < n; ++q) g.add_edge(q, q + 1, success);
  return g;
}

CouplingGraph CouplingGraph::ring(std::size_t n, double success) {
  CouplingGraph g = line(n, success);
  if (n > 2) g.add_edge(n - 1, 0, success);
  return g;
}

CouplingGraph CouplingGraph::complete_graph(std::size_t n, double success) {
  CouplingGraph g(n);
  for (Qubit a = 0; a < n; ++a) {
    for (Qubit b = a + 1; b < n; ++b) g.add_edge(a, b, success);
  }
  return g;
}

namespace {

struct PathLabel {
  double cost = 0.0;  // sum of -log s
  std::vector<Qubit> nodes;
};

// Strict "a is a better path than b" under (cost, hops, lexicographic).
bool better(const PathLabel& a, const PathLabel& b) {
  const double tol = 1e-12 * std::max({1.0, std::abs(a.cost), std::abs(b.cost)});
  if (a.cost < b.cost - tol) return true;
  if (a.cost > b.cost + tol) return false;
  if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
  return a.nodes < b.nodes;
}

}  // namespace

InteractionPath best_interaction_path(const CouplingGraph& g, Qubit a, Qubit b) {
  if (a >= g.num_qubits() || b >= g.num_qubits()) {
    throw Error(ErrorCode::InvalidArgument, "path endpoint outside the graph");
  }
  if (a == b) throw Error(ErrorCode::InvalidArgument, "path endpoints must differ");

  // Label-correcting search; optimal labels have optimal prefixes under the
  // (cost, hops, lexicographic) order, so relaxation converges.
  std::vector<std::optional<PathLabel>> best(g.num_qubits());
  best[a] = PathLabel{0.0, {a}};
  std::queue<Qubit> work;
  work.push(a);
  std::vector<bool> queued(g.num_qubits(), false);
  queued[a] = true;
  while (!work.empty()) {
    const Qubit u = work.front();
    work.pop();
    queued[u] = false;
    const PathLabel current = *best[u];
    for (Qubit v : g.neighbors(u)) {
      if (std::find(current.nodes.begin(), current.nodes.end(), v) != current.nodes.end()) continue;
      PathLabel cand = current;
      cand.cost += -std::log(g.edge_success(u, v));
      cand.nodes.push_back(v);
      if (!best[v] || better(cand, *best[v])) {
        best[v] = std::move(cand);
        if (!queued[v]) {
          queued[v] = true;
          work.push(v);
        }
      }
    }
  }
  if (!best[b]) {
    throw Error(ErrorCode::Disconnected,
                "no path between qubits " + std::to_string(a) + " and " + std::to_string(b));
  }
  InteractionPath out;
  out.nodes = best[b]->nodes;
  for (std::size_t i = 0; i + 1 < out.nodes.size(); ++i) {
    out.success *= g.edge_success(out.nodes[i], out.nodes[i + 1]);
  }
  return out;
}

namespace {

struct Interactions {
  std::vector<Qubit> logical;                      // used qubits, sorted
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // indices into logical
  std::vector<std::size_t> oneq_count;             // per index into logical
};

Interactions collect(const Circuit& c) {
  Interactions in;
  in.logical = used_qubits(c);
  std::vector<std::size_t> slot(c.num_qubits(), 0);
  for (std::size_t i = 0; i < in.logical.size(); ++i) slot[in.logical[i]] = i;
  in.oneq_count.assign(in.logical.size(), 0);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& gate : c) {
    if (interacts(gate)) {
      for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
        for (std::size_t j = i + 1; j < gate.qubits.size(); ++j) {
          pairs.insert(key(slot[gate.qubits[i]], slot[gate.qubits[j]]));
        }
      }
    } else if (is_single_qubit_unitary(gate.type)) {
      ++in.oneq_count[slot[gate.qubits[0]]];
    }
  }
  in.pairs.assign(pairs.begin(), pairs.end());
  return in;
}

// Best-path success between every pair of physical qubits.
std::vector<std::vector<double>> pair_rates(const CouplingGraph& g) {
  const std::size_t n = g.num_qubits();
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 1.0));
  for (Qubit a = 0; a < n; ++a) {
    for (Qubit b = a + 1; b < n; ++b) {
      out[a][b] = out[b][a] = best_interaction_path(g, a, b).success;
    }
  }
  return out;
}

}  // namespace

double allocation_weight(const Circuit& c, const CouplingGraph& g, const Allocation& alloc) {
  const Interactions in = collect(c);
  auto phys = [&](Qubit l) -> Qubit {
    if (l >= alloc.size() || !alloc[l]) {
      throw Error(ErrorCode::InvalidArgument, "allocation misses logical qubit " + std::to_string(l));
    }
    return *alloc[l];
  };
  double w = 1.0;
  for (const auto& [i, j] : in.pairs) {
    w *= best_interaction_path(g, phys(in.logical[i]), phys(in.logical[j])).success;
  }
  for (std::size_t i = 0; i < in.logical.size(); ++i) {
    w *= std::pow(g.node_success(phys(in.logical[i])), static_cast<double>(in.oneq_count[i]));
  }
  return w;
}

AllocationResult initial_allocation(const Circuit& c, const CouplingGraph& g,
                                    std::size_t node_budget) {
  g.validate();
  const Interactions in = collect(c);
  const std::size_t k = in.logical.size();
  const std::size_t n = g.num_qubits();
  if (k > n) {
    throw Error(ErrorCode::TooWide, "circuit uses " + std::to_string(k) + " qubits but device has " +
                                        std::to_string(n));
  }
  const auto rates = pair_rates(g);

  // pairs_closing[i]: partner indices j < i whose pair is complete once i is placed
  std::vector<std::vector<std::size_t>> pairs_closing(k);
  for (const auto& [i, j] : in.pairs) pairs_closing[std::max(i, j)].push_back(std::min(i, j));

  std::vector<Qubit> place(k, 0);
  std::vector<bool> taken(n, false);
  std::vector<Qubit> best_place;
  double best_weight = -1.0;
  std::size_t visited = 0;
  bool exhausted = false;
  constexpr double kTieTol = 1e-12;

  std::function<void(std::size_t, double)> search = [&](std::size_t i, double partial) {
    if (exhausted) return;
    if (i == k) {
      if (best_weight < 0 || partial > best_weight * (1.0 + kTieTol)) {
        best_weight = partial;
        best_place = place;
      }
      return;
    }
    for (Qubit p = 0; p < n; ++p) {
      if (taken[p]) continue;
      if (++visited > node_budget && best_weight >= 0) {
        exhausted = true;
        return;
      }
      double w = partial * std::pow(g.node_success(p), static_cast<double>(in.oneq_count[i]));
      for (std::size_t j : pairs_closing[i]) w *= rates[place[j]][p];
      // every remaining factor is <= 1, so w bounds any completion
      if (best_weight >= 0 && w <= best_weight * (1.0 + kTieTol)) continue;
      place[i] = p;
      taken[p] = true;
      search(i + 1, w);
      taken[p] = false;
    }
  };
  search(0, 1.0);

  AllocationResult out;
  out.allocation.assign(c.num_qubits(), std::nullopt);
  for (std::size_t i = 0; i < k; ++i) out.allocation[in.logical[i]] = best_place[i];
  out.weight = k == 0 ? 1.0 : best_weight;
  out.exhaustive = !exhausted;
  return out;
}

Allocation identity_allocation(std::size_t n) {
  Allocation a(n);
  for (Qubit q = 0; q < n; ++q) a[q] = q;
  return a;
}

std::vector<Qubit> as_permutation(const Allocation& alloc, std::size_t num_physical) {
  if (alloc.size() > num_physical) {
    throw Error(ErrorCode::InvalidArgument, "more logical than physical qubits");
  }
  std::vector<bool> taken(num_physical, false);
  for (const auto& p : alloc) {
    if (p) {
      if (*p >= num_physical || taken[*p]) throw Error(ErrorCode::InvalidArgument, "allocation is not injective");
      taken[*p] = true;
    }
  }
  std::vector<Qubit> perm(num_physical);
  Qubit next = 0;
  auto take_free = [&]() {
    while (taken[next]) ++next;
    taken[next] = true;
    return next;
  };
  for (std::size_t l = 0; l < num_physical; ++l) {
    perm[l] = (l < alloc.size() && alloc[l]) ? *alloc[l] : take_free();
  }
  return perm;
}

RoutedCircuit route(const Circuit& c, const CouplingGraph& g, const Allocation& alloc) {
  g.validate();
  const std::size_t n = g.num_qubits();
  Allocation where(c.num_qubits());
  std::vector<std::optional<Qubit>> who(n);
  for (std::size_t l = 0; l < std::min(alloc.size(), where.size()); ++l) {
    if (!alloc[l]) continue;
    const Qubit p = *alloc[l];
    if (p >= n || who[p]) throw Error(ErrorCode::InvalidArgument, "allocation is not injective");
    where[l] = p;
    who[p] = l;
  }
  Qubit free_cursor = 0;
  for (std::size_t l = 0; l < where.size(); ++l) {
    if (where[l]) continue;
    while (free_cursor < n && who[free_cursor]) ++free_cursor;
    if (free_cursor == n) break;
    where[l] = free_cursor;
    who[free_cursor] = l;
  }

  RoutedCircuit out;
  out.circuit = Circuit(n, c.num_cbits());
  out.initial = where;

  auto phys = [&](Qubit l) {
    if (!where[l]) {
      throw Error(ErrorCode::TooWide, "no physical qubit left for logical qubit " + std::to_string(l));
    }
    return *where[l];
  };
  auto do_swap = [&](Qubit p, Qubit q) {
    out.circuit.swap(p, q);
    ++out.swaps_inserted;
    std::swap(who[p], who[q]);
    if (who[p]) where[*who[p]] = p;
    if (who[q]) where[*who[q]] = q;
  };

  for (const auto& gate : c) {
    if (gate.type == GateType::MACRO) {
      throw Error(ErrorCode::InvalidArgument, "expand macro '" + gate.macro_name + "' before routing");
    }
    if (interacts(gate)) {
      if (gate.qubits.size() > 2) {
        throw Error(ErrorCode::InvalidArgument, std::string(gate_name(gate.type)) +
                                                    " must be decomposed into 2-qubit gates before routing");
      }
      const Qubit pa = phys(gate.qubits[0]);
      const Qubit pb = phys(gate.qubits[1]);
      if (!g.adjacent(pa, pb)) {
        const auto path = best_interaction_path(g, pa, pb).nodes;
        for (std::size_t i = 0; i + 2 < path.size(); ++i) do_swap(path[i], path[i + 1]);
      }
    }
    Gate mapped = gate;
    for (auto& q : mapped.qubits) q = phys(q);
    out.circuit.append(std::move(mapped));
  }
  out.final_placement = where;
  return out;
}

Circuit lower_swaps(const Circuit& c) {
  Circuit out(c.num_qubits(), c.num_cbits());
  for (const auto& g : c) {
    if (g.type == GateType::SWAP) {
      const Qubit a = g.qubits[0], b = g.qubits[1];
      out.cx(a, b).cx(b, a).cx(a, b);
    } else {
      out.append(g);
    }
  }
  return out;
}

double success_estimate(const Circuit& c, const CouplingGraph& g, const Allocation& alloc,
                        SwapCost swap_cost) {
  auto phys = [&](Qubit l) {
    if (l >= alloc.size() || !alloc[l]) {
      throw Error(ErrorCode::InvalidArgument, "allocation misses logical qubit " + std::to_string(l));
    }
    if (*alloc[l] >= g.num_qubits()) throw Error(ErrorCode::InvalidArgument, "allocation outside device");
    return *alloc[l];
  };
  double s = 1.0;
  for (const auto& gate : c) {
    if (gate.type == GateType::MEASURE || gate.type == GateType::BARRIER) continue;
    if (gate.qubits.size() == 1) {
      s *= g.node_success(phys(gate.qubits[0]));
      continue;
    }
    if (gate.qubits.size() > 2) {
      throw Error(ErrorCode::InvalidArgument, "decompose gates wider than two qubits first");
    }
    const double e = g.edge_success(phys(gate.qubits[0]), phys(gate.qubits[1]));
    s *= (gate.type == GateType::SWAP && swap_cost == SwapCost::CubedEdgeRate) ? e * e * e : e;
  }
  return s;
}

}  // namespace qforge
