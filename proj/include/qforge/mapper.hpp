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

/**
 * @file mapper.hpp
 * @brief Topology-aware mapping: weighted coupling graphs, success-rate
 * maximizing interaction paths, variation-aware initial allocation and SWAP
 * routing.
 *
 * Edge weights are success rates s in (0,1]. The success of a sequence of
 * operations is the product of the rates it uses, so the best path between
 * two qubits is a shortest path under the weight -log s.
 */

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qforge/circuit.hpp"

namespace qforge {

class CouplingGraph {
 public:
  CouplingGraph() = default;
  explicit CouplingGraph(std::size_t num_qubits) : num_qubits_(num_qubits), adjacency_(num_qubits) {}

  /// Adds or overwrites the undirected edge {a,b}.
  void add_edge(Qubit a, Qubit b, double success);
  void set_node_success(std::vector<double> rates);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  bool adjacent(Qubit a, Qubit b) const;
  /// Success rate of edge {a,b}; throws Error(NonAdjacentGate) if absent.
  double edge_success(Qubit a, Qubit b) const;
  /// 1.0 when no node rates are set.
  double node_success(Qubit q) const;
  bool has_node_success() const noexcept { return !node_success_.empty(); }
  const std::vector<double>& node_rates() const noexcept { return node_success_; }

  const std::vector<Qubit>& neighbors(Qubit q) const { return adjacency_.at(q); }
  /// Edges as (a, b, s) with a < b, sorted.
  std::vector<std::tuple<Qubit, Qubit, double>> edges() const;
  std::size_t num_edges() const noexcept { return edge_rates_.size(); }

  bool connected() const;
  bool complete() const;
  /// Throws Error(Disconnected) or Error(InvalidArgument) on invariant violations.
  void validate() const;

  static CouplingGraph line(std::size_t n, double success = 1.0);
  static CouplingGraph ring(std::size_t n, double success = 1.0);
  static CouplingGraph complete_graph(std::size_t n, double success = 1.0);

 private:
  std::size_t num_qubits_ = 0;
  std::vector<std::vector<Qubit>> adjacency_;
  std::map<std::pair<Qubit, Qubit>, double> edge_rates_;
  std::vector<double> node_success_;
};

struct InteractionPath {
  std::vector<Qubit> nodes;  // a = nodes.front(), b = nodes.back()
  double success = 1.0;      // product of edge rates along nodes
};

/// Path from a to b with the largest product of edge success rates. Ties go
/// to fewer hops, then to the lexicographically smaller node sequence.
InteractionPath best_interaction_path(const CouplingGraph& g, Qubit a, Qubit b);

/// Logical qubit -> physical qubit. Unmapped logical qubits hold std::nullopt.
using Allocation = std::vector<std::optional<Qubit>>;

struct AllocationResult {
  Allocation allocation;
  double weight = 1.0;
  bool exhaustive = true;  // false when the search budget ran out first
};

/// Exhaustive branch-and-bound search for the injective placement of the
/// circuit's used qubits maximizing
///   prod over distinct interacting pairs {u,v}: s(edge) if adjacent,
///       else best_interaction_path success,
///   times node_success^(1-qubit gate count) per qubit when node rates exist.
/// Ties resolve to the lexicographically smallest placement. Gates with more
/// than two qubits contribute every operand pair. Error: TooWide.
AllocationResult initial_allocation(const Circuit& c, const CouplingGraph& g,
                                    std::size_t node_budget = 2'000'000);

/// The placement weight defined above for a given allocation.
double allocation_weight(const Circuit& c, const CouplingGraph& g, const Allocation& alloc);

struct RoutedCircuit {
  Circuit circuit;             // over physical qubits
  Allocation initial;          // logical -> physical before the first gate
  Allocation final_placement;  // logical -> physical after the last gate
  std::size_t swaps_inserted = 0;
};

/// Walks the gates in order keeping the logical->physical placement. A
/// 2-qubit gate on non-adjacent qubits first moves its first operand along
/// best_interaction_path toward the second, stopping one hop short, with one
/// SWAP per hop. Unmapped logical qubits are placed on free physical qubits
/// in ascending order. Gates on more than two qubits are rejected.
RoutedCircuit route(const Circuit& c, const CouplingGraph& g, const Allocation& alloc);

/// SWAP(a,b) -> CNOT(a,b) CNOT(b,a) CNOT(a,b).
Circuit lower_swaps(const Circuit& c);

enum class SwapCost {
  EdgeRate,      // one use of the edge per SWAP
  CubedEdgeRate  // three CNOTs after lowering
};

/// Product over gates of the rate each uses: edge rate for 2-qubit gates,
/// node rate (or 1) for 1-qubit gates, 1 for MEASURE/BARRIER. Gates are
/// placed through `alloc`. Error: NonAdjacentGate.
double success_estimate(const Circuit& c, const CouplingGraph& g, const Allocation& alloc,
                        SwapCost swap_cost = SwapCost::EdgeRate);

/// Identity placement over n qubits.
Allocation identity_allocation(std::size_t n);

/// Fully-populated placement as a permutation vector (for unitary checks).
std::vector<Qubit> as_permutation(const Allocation& alloc, std::size_t num_physical);

}  // namespace qforge
