// Copyright 2026 The envadapt Authors
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

#include "envadapt/placement.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "envadapt/error.h"
#include "envadapt/minilang/io.h"
#include "json_util.h"

namespace envadapt::placement {

using internal::json;

const char* NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kCloud: return "cloud";
    case NodeKind::kEdge: return "edge";
    case NodeKind::kGw: return "gw";
    case NodeKind::kDevice: return "device";
  }
  return "?";
}

const Node* Topology::Find(std::string_view id) const {
  for (const Node& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

Topology ParseTopology(std::string_view json_text) {
  using namespace internal;
  json j = ParseJson(std::string(json_text), "topology");
  Topology t;
  const json& nodes = Field(j, "nodes");
  if (!nodes.is_array()) throw SchemaError("nodes", "must be an array");
  std::set<std::string> ids;
  for (const json& n : nodes) {
    Node node;
    node.id = String(n, "id");
    std::string kind = String(n, "kind");
    if (kind == "cloud") {
      node.kind = NodeKind::kCloud;
    } else if (kind == "edge") {
      node.kind = NodeKind::kEdge;
    } else if (kind == "gw") {
      node.kind = NodeKind::kGw;
    } else if (kind == "device") {
      node.kind = NodeKind::kDevice;
    } else {
      throw SchemaError("kind", "unknown node kind " + kind);
    }
    node.capacity = Number(n, "capacity", 0.0, 0.0);
    node.unit_price = Number(n, "unit_price", 0.0, 0.0);
    node.available = Number(n, "available", node.capacity, 0.0);
    if (node.available > node.capacity) throw SchemaError("available", "exceeds capacity of " + node.id);
    node.op_time = Number(n, "op_time", 0.0, 0.0);
    if (!ids.insert(node.id).second) throw SchemaError("id", "duplicate node " + node.id);
    t.nodes.push_back(node);
  }
  if (j.contains("links")) {
    for (const json& l : j.at("links")) {
      Link link;
      link.a = String(l, "a");
      link.b = String(l, "b");
      if (!ids.count(link.a) || !ids.count(link.b)) {
        throw SchemaError("links", "unknown endpoint in link " + link.a + "-" + link.b);
      }
      link.latency = Number(l, "latency", std::nullopt, 0.0);
      link.bandwidth = Number(l, "bandwidth");
      if (!(link.bandwidth > 0)) throw SchemaError("bandwidth", "must be > 0");
      t.links.push_back(link);
    }
  }
  return t;
}

Topology LoadTopology(const std::filesystem::path& path) {
  return ParseTopology(minilang::ReadFile(path));
}

std::string DumpTopology(const Topology& t) {
  json nodes = json::array();
  for (const Node& n : t.nodes) {
    nodes.push_back({{"id", n.id}, {"kind", NodeKindName(n.kind)}, {"capacity", n.capacity},
                     {"unit_price", n.unit_price}, {"available", n.available},
                     {"op_time", n.op_time}});
  }
  json links = json::array();
  for (const Link& l : t.links) {
    links.push_back({{"a", l.a}, {"b", l.b}, {"latency", l.latency}, {"bandwidth", l.bandwidth}});
  }
  return json{{"nodes", nodes}, {"links", links}}.dump(2);
}

AppModel ParseAppModel(std::string_view json_text) {
  using namespace internal;
  json j = ParseJson(std::string(json_text), "appmodel");
  AppModel app;
  for (const json& c : Field(j, "components")) {
    Component comp;
    comp.id = String(c, "id");
    comp.demand = Number(c, "demand", 1.0);
    if (!(comp.demand > 0)) throw SchemaError("demand", "must be > 0");
    comp.work = Number(c, "work", 0.0, 0.0);
    app.components.push_back(comp);
  }
  if (j.contains("flows")) {
    for (const json& f : j.at("flows")) {
      app.flows.push_back({String(f, "src"), String(f, "dst"),
                           Number(f, "bytes_per_request", 0.0, 0.0)});
    }
  }
  if (j.contains("pinned")) {
    for (const auto& [comp, node] : j.at("pinned").items()) {
      if (!node.is_string()) throw SchemaError("pinned", "node ids must be strings");
      app.pinned[comp] = node.get<std::string>();
    }
  }
  return app;
}

AppModel LoadAppModel(const std::filesystem::path& path) {
  return ParseAppModel(minilang::ReadFile(path));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// All-pairs shortest latency, with the narrowest bandwidth along the chosen
// path.
class Network {
 public:
  explicit Network(const Topology& topo) : topo_(topo) {
    const size_t n = topo.nodes.size();
    for (size_t i = 0; i < n; ++i) index_[topo.nodes[i].id] = i;
    lat_.assign(n, std::vector<double>(n, kInf));
    bw_.assign(n, std::vector<double>(n, 0));
    for (size_t i = 0; i < n; ++i) {
      lat_[i][i] = 0;
      bw_[i][i] = kInf;
    }
    for (const Link& l : topo.links) {
      size_t a = index_.at(l.a);
      size_t b = index_.at(l.b);
      if (l.latency < lat_[a][b] || (l.latency == lat_[a][b] && l.bandwidth > bw_[a][b])) {
        lat_[a][b] = lat_[b][a] = l.latency;
        bw_[a][b] = bw_[b][a] = l.bandwidth;
      }
    }
    for (size_t k = 0; k < n; ++k) {
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
          double via = lat_[i][k] + lat_[k][j];
          if (via < lat_[i][j]) {
            lat_[i][j] = via;
            bw_[i][j] = std::min(bw_[i][k], bw_[k][j]);
          }
        }
      }
    }
  }

  bool Has(const std::string& id) const { return index_.count(id) > 0; }
  size_t Index(const std::string& id) const { return index_.at(id); }

  // Network time of one flow between two nodes; throws Disconnected.
  double FlowTime(size_t a, size_t b, double bytes) const {
    if (a == b) return 0;
    if (lat_[a][b] == kInf) {
      throw Error(ErrorCode::kDisconnected,
                  "no path between " + topo_.nodes[a].id + " and " + topo_.nodes[b].id);
    }
    return lat_[a][b] + bytes / bw_[a][b];
  }
  bool Connected(size_t a, size_t b) const { return a == b || lat_[a][b] != kInf; }

 private:
  const Topology& topo_;
  std::map<std::string, size_t> index_;
  std::vector<std::vector<double>> lat_;
  std::vector<std::vector<double>> bw_;
};

// Flow endpoints resolved to either a component index or a fixed node.
struct Endpoint {
  int component = -1;
  size_t node = 0;
};

struct Problem {
  const Topology& topo;
  const AppModel& app;
  Network net;
  std::map<std::string, int> comp_index;
  std::vector<std::pair<Endpoint, Endpoint>> flows;

  Problem(const Topology& t, const AppModel& a) : topo(t), app(a), net(t) {
    for (size_t i = 0; i < app.components.size(); ++i) {
      if (!comp_index.emplace(app.components[i].id, static_cast<int>(i)).second) {
        throw SchemaError("components", "duplicate component " + app.components[i].id);
      }
    }
    for (const auto& [comp, node] : app.pinned) {
      if (!comp_index.count(comp)) throw SchemaError("pinned", "unknown component " + comp);
      const Node* n = topo.Find(node);
      if (n == nullptr) throw SchemaError("pinned", "unknown node " + node);
    }
    for (const Flow& f : app.flows) flows.emplace_back(Resolve(f.src), Resolve(f.dst));
  }

  Endpoint Resolve(const std::string& id) const {
    auto it = comp_index.find(id);
    if (it != comp_index.end()) return {it->second, 0};
    if (!net.Has(id)) throw SchemaError("flows", "unknown endpoint " + id);
    return {-1, net.Index(id)};
  }

  size_t NodeOf(const Endpoint& e, const std::vector<size_t>& assign) const {
    return e.component >= 0 ? assign[static_cast<size_t>(e.component)] : e.node;
  }

  double ComputeTime(size_t comp, size_t node) const {
    const Component& c = app.components[comp];
    return c.work * topo.nodes[node].op_time / c.demand;
  }

  Evaluation Evaluate(const std::vector<size_t>& assign) const {
    std::vector<double> used(topo.nodes.size(), 0);
    for (size_t c = 0; c < assign.size(); ++c) used[assign[c]] += app.components[c].demand;
    for (size_t n = 0; n < used.size(); ++n) {
      if (used[n] > topo.nodes[n].available) {
        throw Error(ErrorCode::kCapacityExceeded,
                    "node " + topo.nodes[n].id + " needs " + std::to_string(used[n]) +
                        " units, has " + std::to_string(topo.nodes[n].available));
      }
    }
    Evaluation e;
    double slowest = 0;
    for (size_t f = 0; f < flows.size(); ++f) {
      double t = net.FlowTime(NodeOf(flows[f].first, assign), NodeOf(flows[f].second, assign),
                              app.flows[f].bytes_per_request);
      e.network_time += t;
      slowest = std::max(slowest, t);
    }
    for (size_t c = 0; c < assign.size(); ++c) {
      double t = ComputeTime(c, assign[c]);
      e.compute_time += t;
      slowest = std::max(slowest, t);
      e.cost += app.components[c].demand * topo.nodes[assign[c]].unit_price;
    }
    e.latency = e.network_time + e.compute_time;
    e.throughput = slowest > 0 ? 1 / slowest : kInf;
    return e;
  }

  std::vector<size_t> ToIndices(const Assignment& assign) const {
    std::vector<size_t> out;
    for (const Component& c : app.components) {
      auto it = assign.find(c.id);
      if (it == assign.end()) throw SchemaError("assign", "component " + c.id + " unassigned");
      const Node* n = topo.Find(it->second);
      if (n == nullptr) throw SchemaError("assign", "unknown node " + it->second);
      auto pin = app.pinned.find(c.id);
      if (pin != app.pinned.end() && pin->second != it->second) {
        throw SchemaError("assign", c.id + " is pinned to " + pin->second);
      }
      if (n->kind == NodeKind::kDevice && pin == app.pinned.end()) {
        throw SchemaError("assign", "device node " + n->id + " cannot host " + c.id);
      }
      out.push_back(net.Index(it->second));
    }
    return out;
  }

  Assignment ToAssignment(const std::vector<size_t>& idx) const {
    Assignment a;
    for (size_t c = 0; c < idx.size(); ++c) a[app.components[c].id] = topo.nodes[idx[c]].id;
    return a;
  }
};

bool LexLess(const AppModel& app, const Assignment& a, const Assignment& b) {
  for (const Component& c : app.components) {
    const std::string& x = a.at(c.id);
    const std::string& y = b.at(c.id);
    if (x != y) return x < y;
  }
  return false;
}

// Slack so that pruning on partial sums never discards a leaf the exact
// full evaluation would accept.
bool Exceeds(double partial, double limit) {
  return partial > limit + 1e-9 * std::abs(limit) + 1e-12;
}

class Solver {
 public:
  Solver(const Problem& p, SolveMode mode) : p_(p), mode_(mode) {
    const size_t nc = p.app.components.size();
    candidates_.resize(nc);
    std::vector<size_t> by_id(p.topo.nodes.size());
    for (size_t i = 0; i < by_id.size(); ++i) by_id[i] = i;
    std::sort(by_id.begin(), by_id.end(),
              [&](size_t a, size_t b) { return p.topo.nodes[a].id < p.topo.nodes[b].id; });
    for (size_t c = 0; c < nc; ++c) {
      auto pin = p.app.pinned.find(p.app.components[c].id);
      if (pin != p.app.pinned.end()) {
        candidates_[c] = {p.net.Index(pin->second)};
        continue;
      }
      for (size_t n : by_id) {
        if (p.topo.nodes[n].kind != NodeKind::kDevice) candidates_[c].push_back(n);
      }
    }
    assign_.assign(nc, 0);
    used_.assign(p.topo.nodes.size(), 0);
  }

  double SpaceSize() const {
    double s = 1;
    for (const auto& c : candidates_) s *= static_cast<double>(c.size());
    return s;
  }

  std::optional<PlacementPlan> Run() {
    Dfs(0, 0, 0);
    return best_;
  }

 private:
  void Dfs(size_t c, double partial_latency, double partial_cost) {
    if (mode_.kind == SolveMode::Kind::kMinCostUnderLatency) {
      if (Exceeds(partial_latency, mode_.limit)) return;
      if (best_ && Exceeds(partial_cost, best_->eval.cost)) return;
    } else {
      if (Exceeds(partial_cost, mode_.limit)) return;
      if (best_ && Exceeds(partial_latency, best_->eval.latency)) return;
    }
    if (c == assign_.size()) {
      Leaf();
      return;
    }
    const Component& comp = p_.app.components[c];
    for (size_t n : candidates_[c]) {
      if (used_[n] + comp.demand > p_.topo.nodes[n].available) continue;
      assign_[c] = n;
      double add = p_.ComputeTime(c, n);
      bool connected = true;
      // Flows whose endpoints are both known once component c is placed.
      for (size_t f = 0; f < p_.flows.size(); ++f) {
        const auto& [src, dst] = p_.flows[f];
        int last = std::max(src.component, dst.component);
        if (last != static_cast<int>(c)) continue;
        size_t a = p_.NodeOf(src, assign_);
        size_t b = p_.NodeOf(dst, assign_);
        if (!p_.net.Connected(a, b)) {
          connected = false;
          break;
        }
        add += p_.net.FlowTime(a, b, p_.app.flows[f].bytes_per_request);
      }
      if (!connected) continue;
      used_[n] += comp.demand;
      Dfs(c + 1, partial_latency + add, partial_cost + comp.demand * p_.topo.nodes[n].unit_price);
      used_[n] -= comp.demand;
    }
  }

  void Leaf() {
    Evaluation e;
    try {
      e = p_.Evaluate(assign_);
    } catch (const Error&) {
      return;
    }
    if (!Feasible(mode_, e)) return;
    PlacementPlan plan{p_.ToAssignment(assign_), e, 0};
    plan.objective_value =
        mode_.kind == SolveMode::Kind::kMaxPerfUnderBudget ? e.latency : e.cost;
    if (!best_ || Better(mode_, p_.app, plan, *best_)) best_ = std::move(plan);
  }

  const Problem& p_;
  SolveMode mode_;
  std::vector<std::vector<size_t>> candidates_;
  std::vector<size_t> assign_;
  std::vector<double> used_;
  std::optional<PlacementPlan> best_;
};

}  // namespace

bool Feasible(const SolveMode& mode, const Evaluation& e) {
  return mode.kind == SolveMode::Kind::kMaxPerfUnderBudget ? e.cost <= mode.limit
                                                           : e.latency <= mode.limit;
}

bool Better(const SolveMode& mode, const AppModel& app, const PlacementPlan& a,
            const PlacementPlan& b) {
  if (mode.kind == SolveMode::Kind::kMaxPerfUnderBudget && a.eval.latency != b.eval.latency) {
    return a.eval.latency < b.eval.latency;
  }
  if (a.eval.cost != b.eval.cost) return a.eval.cost < b.eval.cost;
  return LexLess(app, a.assign, b.assign);
}

Evaluation EvaluatePlacement(const Topology& topo, const AppModel& app, const Assignment& assign) {
  Problem p(topo, app);
  return p.Evaluate(p.ToIndices(assign));
}

PlacementPlan SolvePlacement(const Topology& topo, const AppModel& app, SolveMode mode,
                             double search_cap) {
  Problem p(topo, app);
  Solver solver(p, mode);
  if (solver.SpaceSize() > search_cap) {
    throw Error(ErrorCode::kSearchSpaceTooLarge,
                "placement space of " + std::to_string(solver.SpaceSize()) +
                    " assignments exceeds cap " + std::to_string(search_cap));
  }
  auto best = solver.Run();
  if (!best) {
    throw Infeasible(InfeasibleReason::kNoFeasibleAssignment,
                     mode.kind == SolveMode::Kind::kMaxPerfUnderBudget
                         ? "no placement within budget " + std::to_string(mode.limit)
                         : "no placement within latency bound " + std::to_string(mode.limit));
  }
  return *best;
}

}  // namespace envadapt::placement
