// Copyright 2026 The vfsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VFSYNTH_MRF_GRAPH_H_
#define VFSYNTH_MRF_GRAPH_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "vfsynth/core/marginal.h"
#include "vfsynth/core/schema.h"

namespace vfsynth {

// Undirected simple graph over a subset of global attribute ids.
class AttributeGraph {
 public:
  AttributeGraph() = default;
  // `universe` is the global attribute count; `nodes` the ids present.
  AttributeGraph(int universe, std::vector<int> nodes);
  // All attributes of `universe` as nodes.
  static AttributeGraph Complete(int universe, bool with_edges);

  int universe() const { return universe_; }
  const std::vector<int>& nodes() const { return nodes_; }
  bool HasNode(int v) const;
  void AddNode(int v);

  bool HasEdge(int a, int b) const { return adj_[a * universe_ + b]; }
  void AddEdge(int a, int b);
  // Connects every pair inside `clique` (adding missing nodes).
  void AddClique(const Marginal& clique);
  std::vector<std::pair<int, int>> Edges() const;
  int EdgeCount() const;
  std::vector<int> Neighbors(int v) const;

  // Union of nodes and edges; universes must agree.
  void Merge(const AttributeGraph& other);

  bool operator==(const AttributeGraph&) const = default;

 private:
  int universe_ = 0;
  std::vector<int> nodes_;
  std::vector<char> adj_;
};

struct JunctionTree {
  std::vector<Marginal> cliques;
  std::vector<std::pair<int, int>> edges;

  // Every variable's cliques form a connected subtree, and the edges form a
  // single tree over all cliques.
  bool HasRunningIntersection() const;
  // Index of the first clique containing `m`, or -1.
  int FindContaining(const Marginal& m) const;
  // Adjacency lists over clique indices.
  std::vector<std::vector<int>> Adjacency() const;
};

struct Triangulation {
  AttributeGraph chordal;
  JunctionTree tree;
};

// Chordal completion by min-fill elimination (ties: fewer neighbours, then
// smaller id), maximal cliques from the elimination cliques, and a junction
// tree as a maximum-weight spanning tree on clique intersection sizes.
Triangulation Triangulate(const AttributeGraph& graph);

// Largest product of domain sizes over the cliques of `tree`.
int64_t MaxCliqueDomain(const JunctionTree& tree, const Schema& schema);
// Triangulates first.
int64_t MaxCliqueDomain(const AttributeGraph& graph, const Schema& schema);

}  // namespace vfsynth

#endif  // VFSYNTH_MRF_GRAPH_H_
