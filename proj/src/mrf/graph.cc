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

#include "vfsynth/mrf/graph.h"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace vfsynth {

AttributeGraph::AttributeGraph(int universe, std::vector<int> nodes)
    : universe_(universe),
      nodes_(std::move(nodes)),
      adj_(static_cast<size_t>(universe) * universe, 0) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
}

AttributeGraph AttributeGraph::Complete(int universe, bool with_edges) {
  std::vector<int> nodes(universe);
  std::iota(nodes.begin(), nodes.end(), 0);
  AttributeGraph g(universe, nodes);
  if (with_edges) {
    for (int a = 0; a < universe; ++a) {
      for (int b = a + 1; b < universe; ++b) g.AddEdge(a, b);
    }
  }
  return g;
}

bool AttributeGraph::HasNode(int v) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

void AttributeGraph::AddNode(int v) {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
  if (it == nodes_.end() || *it != v) nodes_.insert(it, v);
}

void AttributeGraph::AddEdge(int a, int b) {
  if (a == b) return;
  AddNode(a);
  AddNode(b);
  adj_[a * universe_ + b] = 1;
  adj_[b * universe_ + a] = 1;
}

void AttributeGraph::AddClique(const Marginal& clique) {
  for (int i = 0; i < clique.arity(); ++i) {
    AddNode(clique[i]);
    for (int j = i + 1; j < clique.arity(); ++j) AddEdge(clique[i], clique[j]);
  }
}

std::vector<std::pair<int, int>> AttributeGraph::Edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a : nodes_) {
    for (int b : nodes_) {
      if (a < b && HasEdge(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

int AttributeGraph::EdgeCount() const {
  return static_cast<int>(Edges().size());
}

std::vector<int> AttributeGraph::Neighbors(int v) const {
  std::vector<int> out;
  for (int b : nodes_) {
    if (HasEdge(v, b)) out.push_back(b);
  }
  return out;
}

void AttributeGraph::Merge(const AttributeGraph& other) {
  for (int v : other.nodes()) AddNode(v);
  for (const auto& [a, b] : other.Edges()) AddEdge(a, b);
}

std::vector<std::vector<int>> JunctionTree::Adjacency() const {
  std::vector<std::vector<int>> adj(cliques.size());
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

int JunctionTree::FindContaining(const Marginal& m) const {
  for (size_t i = 0; i < cliques.size(); ++i) {
    if (m.IsSubsetOf(cliques[i])) return static_cast<int>(i);
  }
  return -1;
}

bool JunctionTree::HasRunningIntersection() const {
  const int k = static_cast<int>(cliques.size());
  if (k == 0) return edges.empty();
  if (static_cast<int>(edges.size()) != k - 1) return false;
  const auto adj = Adjacency();
  // Connected?
  std::vector<char> seen(k, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    for (int n : adj[c]) {
      if (!seen[n]) {
        seen[n] = 1;
        ++count;
        stack.push_back(n);
      }
    }
  }
  if (count != k) return false;
  // For every variable the containing cliques must be connected through
  // cliques that also contain it.
  std::vector<int> vars;
  for (const Marginal& c : cliques) {
    for (int v : c.attributes()) vars.push_back(v);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  for (int v : vars) {
    int start = -1, total = 0;
    for (int i = 0; i < k; ++i) {
      if (cliques[i].Contains(v)) {
        ++total;
        if (start < 0) start = i;
      }
    }
    std::fill(seen.begin(), seen.end(), 0);
    stack = {start};
    seen[start] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      for (int n : adj[c]) {
        if (!seen[n] && cliques[n].Contains(v)) {
          seen[n] = 1;
          ++reached;
          stack.push_back(n);
        }
      }
    }
    if (reached != total) return false;
  }
  return true;
}

Triangulation Triangulate(const AttributeGraph& graph) {
  Triangulation out;
  out.chordal = graph;
  AttributeGraph work = graph;
  std::vector<int> remaining = graph.nodes();
  std::vector<Marginal> elimination_cliques;
  while (!remaining.empty()) {
    int best = -1;
    std::tuple<int, int, int> best_key;
    for (int v : remaining) {
      std::vector<int> nb;
      for (int u : remaining) {
        if (u != v && work.HasEdge(u, v)) nb.push_back(u);
      }
      int fill = 0;
      for (size_t i = 0; i < nb.size(); ++i) {
        for (size_t j = i + 1; j < nb.size(); ++j) {
          if (!work.HasEdge(nb[i], nb[j])) ++fill;
        }
      }
      const auto key = std::make_tuple(fill, static_cast<int>(nb.size()), v);
      if (best < 0 || key < best_key) {
        best = v;
        best_key = key;
      }
    }
    std::vector<int> clique = {best};
    for (int u : remaining) {
      if (u != best && work.HasEdge(u, best)) clique.push_back(u);
    }
    for (size_t i = 1; i < clique.size(); ++i) {
      for (size_t j = i + 1; j < clique.size(); ++j) {
        if (!work.HasEdge(clique[i], clique[j])) {
          work.AddEdge(clique[i], clique[j]);
          out.chordal.AddEdge(clique[i], clique[j]);
        }
      }
    }
    elimination_cliques.emplace_back(clique);
    remaining.erase(std::find(remaining.begin(), remaining.end(), best));
  }
  // Keep the maximal ones.
  std::vector<Marginal>& cliques = out.tree.cliques;
  for (size_t i = 0; i < elimination_cliques.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < elimination_cliques.size() && !dominated; ++j) {
      if (i == j) continue;
      const Marginal& a = elimination_cliques[i];
      const Marginal& b = elimination_cliques[j];
      if (a.IsSubsetOf(b) && (a.arity() < b.arity() || j < i)) dominated = true;
    }
    if (!dominated) cliques.push_back(elimination_cliques[i]);
  }
  std::sort(cliques.begin(), cliques.end());
  // Kruskal on all pairs, heaviest intersections first.
  struct Cand {
    int weight, a, b;
  };
  std::vector<Cand> cands;
  for (int a = 0; a < static_cast<int>(cliques.size()); ++a) {
    for (int b = a + 1; b < static_cast<int>(cliques.size()); ++b) {
      cands.push_back({cliques[a].Intersection(cliques[b]).arity(), a, b});
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    return x.weight > y.weight;
  });
  std::vector<int> parent(cliques.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Cand& c : cands) {
    const int ra = find(c.a), rb = find(c.b);
    if (ra == rb) continue;
    parent[ra] = rb;
    out.tree.edges.emplace_back(c.a, c.b);
  }
  return out;
}

int64_t MaxCliqueDomain(const JunctionTree& tree, const Schema& schema) {
  int64_t best = 0;
  for (const Marginal& c : tree.cliques) {
    best = std::max(best, CellCount(DomainSizes(c, schema)));
  }
  return best;
}

int64_t MaxCliqueDomain(const AttributeGraph& graph, const Schema& schema) {
  return MaxCliqueDomain(Triangulate(graph).tree, schema);
}

}  // namespace vfsynth
