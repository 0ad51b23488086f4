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

#include "vfsynth/mrf/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "absl/strings/str_cat.h"
#include "vfsynth/core/status_macros.h"

namespace vfsynth {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Factor MakeFactor(const Marginal& vars, const Schema& schema, double fill) {
  return Factor(vars, DomainSizes(vars, schema), fill);
}

}  // namespace

absl::StatusOr<MrfModel> MrfModel::Create(Schema schema,
                                          const AttributeGraph& base_graph,
                                          std::vector<Marginal> marginals,
                                          double total) {
  if (base_graph.universe() != schema.size()) {
    return absl::InvalidArgumentError("graph universe differs from schema");
  }
  if (base_graph.nodes().empty()) {
    return absl::InvalidArgumentError("model needs at least one variable");
  }
  MrfModel m;
  m.schema_ = std::move(schema);
  m.graph_ = base_graph;
  m.total_ = total;
  for (const Marginal& mg : marginals) {
    for (int a : mg.attributes()) {
      if (!m.graph_.HasNode(a)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "marginal ", mg.DebugString(), " uses attribute ", a,
            " outside the model"));
      }
    }
    if (m.IndexOf(mg) >= 0) continue;
    m.marginals_.push_back(mg);
    m.theta_.emplace_back(CellCount(DomainSizes(mg, m.schema_)), 0.0);
    m.graph_.AddClique(mg);
  }
  VFS_RETURN_IF_ERROR(m.Rebuild());
  return m;
}

int64_t MrfModel::ThetaSize() const {
  int64_t n = 0;
  for (const auto& t : theta_) n += static_cast<int64_t>(t.size());
  return n;
}

int MrfModel::IndexOf(const Marginal& m) const {
  for (size_t i = 0; i < marginals_.size(); ++i) {
    if (marginals_[i] == m) return static_cast<int>(i);
  }
  return -1;
}

absl::Status MrfModel::SetTheta(std::vector<std::vector<double>> theta) {
  if (theta.size() != theta_.size()) {
    return absl::InvalidArgumentError("theta has the wrong marginal count");
  }
  for (size_t i = 0; i < theta.size(); ++i) {
    if (theta[i].size() != theta_[i].size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "theta block ", i, " has ", theta[i].size(), " entries, expected ",
          theta_[i].size()));
    }
  }
  theta_ = std::move(theta);
  return Calibrate();
}

absl::Status MrfModel::SetTheta(int index, std::vector<double> values) {
  if (index < 0 || index >= static_cast<int>(theta_.size()) ||
      values.size() != theta_[index].size()) {
    return absl::InvalidArgumentError("bad theta block");
  }
  theta_[index] = std::move(values);
  return Calibrate();
}

absl::StatusOr<int> MrfModel::AddMarginal(const Marginal& m) {
  const int existing = IndexOf(m);
  if (existing >= 0) return existing;
  for (int a : m.attributes()) {
    if (!graph_.HasNode(a)) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", a, " is not a model variable"));
    }
  }
  marginals_.push_back(m);
  theta_.emplace_back(CellCount(DomainSizes(m, schema_)), 0.0);
  bool new_edges = false;
  for (int i = 0; i < m.arity() && !new_edges; ++i) {
    for (int j = i + 1; j < m.arity(); ++j) {
      if (!graph_.HasEdge(m[i], m[j])) new_edges = true;
    }
  }
  graph_.AddClique(m);
  if (new_edges || triangulation_.tree.FindContaining(m) < 0) {
    VFS_RETURN_IF_ERROR(Rebuild());
  } else {
    assignment_.push_back(triangulation_.tree.FindContaining(m));
    VFS_RETURN_IF_ERROR(Calibrate());
  }
  return static_cast<int>(marginals_.size()) - 1;
}

absl::Status MrfModel::Rebuild() {
  triangulation_ = Triangulate(graph_);
  const JunctionTree& tree = triangulation_.tree;
  assignment_.clear();
  for (const Marginal& m : marginals_) {
    const int c = tree.FindContaining(m);
    if (c < 0) {
      return absl::InternalError(absl::StrCat(
          "marginal ", m.DebugString(), " not covered by any clique"));
    }
    assignment_.push_back(c);
  }
  const int k = static_cast<int>(tree.cliques.size());
  const auto adj = tree.Adjacency();
  parent_.assign(k, -1);
  order_.clear();
  std::vector<char> seen(k, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    order_.push_back(c);
    for (int n : adj[c]) {
      if (!seen[n]) {
        seen[n] = 1;
        parent_[n] = c;
        stack.push_back(n);
      }
    }
  }
  if (static_cast<int>(order_.size()) != k) {
    return absl::InternalError("junction tree is not connected");
  }
  return Calibrate();
}

absl::Status MrfModel::Calibrate() {
  const JunctionTree& tree = triangulation_.tree;
  const int k = static_cast<int>(tree.cliques.size());
  std::vector<Factor> potential;
  potential.reserve(k);
  for (int c = 0; c < k; ++c) {
    potential.push_back(MakeFactor(tree.cliques[c], schema_, 0.0));
  }
  for (size_t i = 0; i < marginals_.size(); ++i) {
    Factor f(marginals_[i], DomainSizes(marginals_[i], schema_));
    f.log_values = theta_[i];
    potential[assignment_[i]].Add(f);
  }
  // Upward pass: message from each clique to its parent.
  std::vector<Factor> up(k);
  std::vector<Factor> collected = potential;
  for (int i = k - 1; i >= 0; --i) {
    const int c = order_[i];
    const int p = parent_[c];
    if (p < 0) continue;
    up[c] = collected[c].Marginalize(
        tree.cliques[c].Intersection(tree.cliques[p]));
    collected[p].Add(up[c]);
  }
  // Downward pass.
  beliefs_.assign(k, Factor());
  beliefs_[order_[0]] = collected[order_[0]];
  for (int i = 1; i < k; ++i) {
    const int c = order_[i];
    const int p = parent_[c];
    Factor down = beliefs_[p].Marginalize(up[c].vars);
    down.Subtract(up[c]);
    beliefs_[c] = collected[c];
    beliefs_[c].Add(down);
  }
  log_z_ = beliefs_[order_[0]].LogSum();
  if (!std::isfinite(log_z_)) {
    return absl::FailedPreconditionError(
        "model is not normalizable (all potentials vanish)");
  }
  for (Factor& b : beliefs_) {
    for (double& v : b.log_values) v -= log_z_;
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> MrfModel::CliqueMarginal(
    const Marginal& m) const {
  const int c = triangulation_.tree.FindContaining(m);
  if (c < 0) {
    return absl::FailedPreconditionError(
        absl::StrCat(m.DebugString(), " is not inside a clique"));
  }
  Factor f = beliefs_[c].Marginalize(m);
  std::vector<double> out(f.size());
  for (int64_t i = 0; i < f.size(); ++i) out[i] = std::exp(f.log_values[i]);
  return out;
}

absl::StatusOr<ContingencyHistogram> MrfModel::InferMarginal(
    const Marginal& m) const {
  for (int a : m.attributes()) {
    if (!graph_.HasNode(a)) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", a, " is not a model variable"));
    }
  }
  const std::vector<int> sizes = DomainSizes(m, schema_);
  ContingencyHistogram out(m, sizes);
  if (triangulation_.tree.FindContaining(m) >= 0) {
    VFS_ASSIGN_OR_RETURN(std::vector<double> p, CliqueMarginal(m));
    for (int64_t i = 0; i < out.size(); ++i) out[i] = p[i] * total_;
    return out;
  }
  // Smallest subtree touching every variable, then variable elimination over
  // its conditional factors.
  const JunctionTree& tree = triangulation_.tree;
  const int k = static_cast<int>(tree.cliques.size());
  std::vector<char> terminal(k, 0);
  for (int a : m.attributes()) {
    for (int c : order_) {
      if (tree.cliques[c].Contains(a)) {
        terminal[c] = 1;
        break;
      }
    }
  }
  const auto adj = tree.Adjacency();
  std::vector<char> alive(k, 1);
  std::vector<int> degree(k);
  for (int c = 0; c < k; ++c) degree[c] = static_cast<int>(adj[c].size());
  bool pruned = true;
  while (pruned) {
    pruned = false;
    for (int c = 0; c < k; ++c) {
      if (alive[c] && !terminal[c] && degree[c] <= 1) {
        alive[c] = 0;
        pruned = true;
        for (int n : adj[c]) {
          if (alive[n]) --degree[n];
        }
      }
    }
  }
  int root = -1;
  for (int c : order_) {
    if (alive[c]) {
      root = c;
      break;
    }
  }
  std::vector<Factor> factors;
  std::vector<int> stack = {root};
  std::vector<char> seen(k, 0);
  seen[root] = 1;
  factors.push_back(beliefs_[root]);
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    for (int n : adj[c]) {
      if (!alive[n] || seen[n]) continue;
      seen[n] = 1;
      Factor f = beliefs_[n];
      f.Subtract(beliefs_[n].Marginalize(
          tree.cliques[n].Intersection(tree.cliques[c])));
      factors.push_back(std::move(f));
      stack.push_back(n);
    }
  }
  std::set<int> eliminate;
  for (const Factor& f : factors) {
    for (int a : f.vars.attributes()) {
      if (!m.Contains(a)) eliminate.insert(a);
    }
  }
  while (!eliminate.empty()) {
    int best = -1;
    int64_t best_size = 0;
    for (int v : eliminate) {
      Marginal scope;
      for (const Factor& f : factors) {
        if (f.vars.Contains(v)) scope = scope.Union(f.vars);
      }
      const int64_t s = CellCount(DomainSizes(scope, schema_));
      if (best < 0 || s < best_size) {
        best = v;
        best_size = s;
      }
    }
    Marginal scope;
    std::vector<Factor> rest;
    std::vector<Factor> involved;
    for (Factor& f : factors) {
      if (f.vars.Contains(best)) {
        scope = scope.Union(f.vars);
        involved.push_back(std::move(f));
      } else {
        rest.push_back(std::move(f));
      }
    }
    Factor joint = MakeFactor(scope, schema_, 0.0);
    for (const Factor& f : involved) joint.Add(f);
    rest.push_back(joint.Marginalize(scope.Without(best)));
    factors = std::move(rest);
    eliminate.erase(best);
  }
  Factor joint = MakeFactor(m, schema_, 0.0);
  for (const Factor& f : factors) joint.Add(f);
  const double log_sum = joint.LogSum();
  for (int64_t i = 0; i < out.size(); ++i) {
    out[i] = std::exp(joint.log_values[i] - log_sum) * total_;
  }
  return out;
}

absl::StatusOr<Dataset> MrfModel::Sample(int64_t count, Rng& rng) const {
  if (count < 0) return absl::InvalidArgumentError("negative sample count");
  const std::vector<int>& vars = variables();
  if (count == 0) {
    return Dataset::Create(schema_, vars, {});
  }
  const JunctionTree& tree = triangulation_.tree;
  const int universe = schema_.size();
  std::vector<int> assign(static_cast<size_t>(count) * universe, 0);

  for (int c : order_) {
    const Marginal& clique = tree.cliques[c];
    const std::vector<int> sizes = DomainSizes(clique, schema_);
    const Factor& belief = beliefs_[c];
    const Marginal sep = parent_[c] < 0
                             ? Marginal()
                             : clique.Intersection(tree.cliques[parent_[c]]);
    const std::vector<int> sep_sizes = DomainSizes(sep, schema_);
    const int64_t sep_cells = CellCount(sep_sizes);
    const std::vector<int64_t> proj = ProjectionIndex(clique, sizes, sep);
    // Cells of the clique grouped by separator value, with running sums.
    std::vector<std::vector<int64_t>> group_cells(sep_cells);
    std::vector<std::vector<double>> group_cdf(sep_cells);
    for (int64_t i = 0; i < belief.size(); ++i) {
      const double p = std::exp(belief.log_values[i]);
      auto& cdf = group_cdf[proj[i]];
      group_cells[proj[i]].push_back(i);
      cdf.push_back((cdf.empty() ? 0.0 : cdf.back()) + p);
    }
    const std::vector<int64_t> sep_strides = Strides(sep_sizes);
    for (int64_t r = 0; r < count; ++r) {
      int* row = &assign[r * universe];
      int64_t s = 0;
      for (int j = 0; j < sep.arity(); ++j) s += row[sep[j]] * sep_strides[j];
      const auto& cdf = group_cdf[s];
      if (cdf.empty() || !(cdf.back() > 0)) {
        return absl::FailedPreconditionError(
            "sampling reached a zero-probability separator value");
      }
      const double u = UniformOpen01(rng) * cdf.back();
      size_t pick = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
      if (pick >= cdf.size()) pick = cdf.size() - 1;
      const std::vector<int> tuple = CellTuple(group_cells[s][pick], sizes);
      for (int j = 0; j < clique.arity(); ++j) row[clique[j]] = tuple[j];
    }
  }
  std::vector<uint32_t> values;
  values.reserve(static_cast<size_t>(count) * vars.size());
  for (int64_t r = 0; r < count; ++r) {
    for (int a : vars) values.push_back(assign[r * universe + a]);
  }
  return Dataset::Create(schema_, vars, std::move(values));
}

absl::StatusOr<FitResult> FitTheta(
    MrfModel& model, const std::vector<ContingencyHistogram>& targets,
    const FitOptions& options) {
  struct Target {
    int index;
    std::vector<double> y;
  };
  std::vector<Target> ts;
  for (const ContingencyHistogram& t : targets) {
    const int idx = model.IndexOf(t.marginal());
    if (idx < 0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "target ", t.marginal().DebugString(), " is not a model marginal"));
    }
    VFS_ASSIGN_OR_RETURN(ContingencyHistogram n, t.Normalized());
    if (n.size() != static_cast<int64_t>(model.theta()[idx].size())) {
      return absl::InvalidArgumentError("target shape differs from model");
    }
    ts.push_back({idx, n.cells()});
  }
  auto evaluate = [&](std::vector<std::vector<double>>* grad)
      -> absl::StatusOr<double> {
    double loss = 0;
    for (const Target& t : ts) {
      VFS_ASSIGN_OR_RETURN(std::vector<double> mu,
                           model.CliqueMarginal(model.marginals()[t.index]));
      for (size_t i = 0; i < mu.size(); ++i) {
        const double d = mu[i] - t.y[i];
        loss += 0.5 * d * d;
        if (grad != nullptr) (*grad)[t.index][i] += d;
      }
    }
    return loss;
  };
  auto zero_grad = [&model]() {
    std::vector<std::vector<double>> g;
    for (const auto& block : model.theta()) g.emplace_back(block.size(), 0.0);
    return g;
  };

  FitResult result;
  std::vector<std::vector<double>> grad = zero_grad();
  VFS_ASSIGN_OR_RETURN(double loss, evaluate(&grad));
  double step = options.initial_step;
  int it = 0;
  for (; it < options.max_iterations && loss >= options.tolerance; ++it) {
    const std::vector<std::vector<double>> saved = model.theta();
    std::vector<std::vector<double>> next = saved;
    for (size_t b = 0; b < next.size(); ++b) {
      for (size_t i = 0; i < next[b].size(); ++i) next[b][i] -= step * grad[b][i];
    }
    VFS_RETURN_IF_ERROR(model.SetTheta(std::move(next)));
    std::vector<std::vector<double>> next_grad = zero_grad();
    VFS_ASSIGN_OR_RETURN(double next_loss, evaluate(&next_grad));
    if (next_loss < loss) {
      loss = next_loss;
      grad = std::move(next_grad);
      step *= 2.0;
    } else {
      VFS_RETURN_IF_ERROR(model.SetTheta(saved));
      step *= 0.5;
      if (step < 1e-12) break;
    }
  }
  result.iterations = it;
  result.loss = loss;
  result.converged = loss < options.tolerance;
  return result;
}

}  // namespace vfsynth
