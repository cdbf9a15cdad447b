#include "matchkit/holant.hpp"

#include <algorithm>
#include <functional>

namespace matchkit {

Scalar count_pm(const WeightedGraph& g) {
  if (g.vertex_count > pm_vertex_cap())
    throw CapExceeded("perfect matching enumeration capped at " +
                      std::to_string(pm_vertex_cap()) + " vertices");
  for (const auto& e : g.edges)
    if (e.u < 0 || e.v < 0 || e.u >= g.vertex_count || e.v >= g.vertex_count || e.u == e.v)
      throw BadInstance("bad edge endpoints");
  Scalar total = Scalar::zero(g.mode);
  std::vector<bool> matched(static_cast<std::size_t>(g.vertex_count), false);
  std::vector<std::vector<std::pair<int, const Scalar*>>> adj(g.vertex_count);
  for (const auto& e : g.edges) {
    adj[e.u].emplace_back(e.v, &e.w);
    adj[e.v].emplace_back(e.u, &e.w);
  }
  std::function<void(int, Scalar)> rec = [&](int from, Scalar acc) {
    int u = -1;
    for (int v = from; v < g.vertex_count; ++v)
      if (!matched[v]) {
        u = v;
        break;
      }
    if (u < 0) {
      total += acc;
      return;
    }
    matched[u] = true;
    for (auto [v, w] : adj[u]) {
      if (matched[v]) continue;
      matched[v] = true;
      rec(u + 1, acc * (*w));
      matched[v] = false;
    }
    matched[u] = false;
  };
  if (g.vertex_count % 2 == 0)
    rec(0, Scalar::one(g.mode));
  return total;
}

void HolantInstance::validate() const {
  std::vector<int> count(static_cast<std::size_t>(edge_count), 0);
  for (const auto& v : vertices) {
    if (static_cast<int>(v.edges.size()) != v.sig.arity())
      throw BadInstance("vertex degree does not match signature arity");
    std::vector<int> seen;
    for (int e : v.edges) {
      if (e < 0 || e >= edge_count) throw BadInstance("edge id out of range");
      if (std::find(seen.begin(), seen.end(), e) != seen.end())
        throw BadInstance("loop at a vertex; split it with a [1,0,1] vertex");
      seen.push_back(e);
      ++count[e];
    }
  }
  for (int e = 0; e < edge_count; ++e)
    if (count[e] != 2) throw BadInstance("edge " + std::to_string(e) + " lacks two endpoints");
}

bool HolantInstance::bipartite_tagged() const {
  for (const auto& v : vertices)
    if (!v.side) return false;
  // every edge must join left to right
  std::vector<int> left_count(static_cast<std::size_t>(edge_count), 0);
  std::vector<int> right_count(static_cast<std::size_t>(edge_count), 0);
  for (const auto& v : vertices)
    for (int e : v.edges)
      (*v.side == Side::Left ? left_count : right_count)[e]++;
  for (int e = 0; e < edge_count; ++e)
    if (left_count[e] != 1 || right_count[e] != 1) return false;
  return true;
}

Mode HolantInstance::mode() const {
  return vertices.empty() ? Mode::Exact : vertices.front().sig.mode();
}

Scalar eval_holant(const HolantInstance& inst) {
  inst.validate();
  if (inst.edge_count > holant_edge_cap())
    throw CapExceeded("holant evaluation capped at " + std::to_string(holant_edge_cap()) +
                      " edges");
  Mode m = inst.mode();
  Scalar total = Scalar::zero(m);
  const std::uint64_t limit = std::uint64_t{1} << inst.edge_count;
  for (std::uint64_t sigma = 0; sigma < limit; ++sigma) {
    Scalar prod = Scalar::one(m);
    bool dead = false;
    for (const auto& v : inst.vertices) {
      std::uint32_t idx = 0;
      for (int e : v.edges) idx = (idx << 1) | static_cast<std::uint32_t>((sigma >> e) & 1);
      const Scalar& val = v.sig.at(idx);
      if (val.is_zero()) {
        dead = true;
        break;
      }
      prod *= val;
    }
    if (!dead) total += prod;
  }
  return total;
}

void CspInstance::validate() const {
  std::vector<int> occ(static_cast<std::size_t>(variable_count) + 1, 0);
  for (const auto& c : constraints) {
    if (static_cast<int>(c.scope.size()) != c.sig.arity())
      throw BadInstance("scope length does not match signature arity");
    for (int x : c.scope) {
      if (x < 1 || x > variable_count) throw BadInstance("variable out of range");
      ++occ[x];
    }
  }
  if (occurrence_bound) {
    for (int x = 1; x <= variable_count; ++x)
      if (occ[x] > *occurrence_bound)
        throw BadInstance("variable " + std::to_string(x) + " occurs " +
                          std::to_string(occ[x]) + " > bound " +
                          std::to_string(*occurrence_bound));
  }
}

Mode CspInstance::mode() const {
  return constraints.empty() ? Mode::Exact : constraints.front().sig.mode();
}

Scalar eval_csp(const CspInstance& inst) {
  inst.validate();
  if (inst.variable_count > csp_variable_cap())
    throw CapExceeded("#CSP evaluation capped at " + std::to_string(csp_variable_cap()) +
                      " variables");
  Mode m = inst.mode();
  Scalar total = Scalar::zero(m);
  const std::uint64_t limit = std::uint64_t{1} << inst.variable_count;
  for (std::uint64_t x = 0; x < limit; ++x) {
    Scalar prod = Scalar::one(m);
    bool dead = false;
    for (const auto& c : inst.constraints) {
      std::uint32_t idx = 0;
      for (int var : c.scope)
        idx = (idx << 1) | static_cast<std::uint32_t>((x >> (var - 1)) & 1);
      const Scalar& val = c.sig.at(idx);
      if (val.is_zero()) {
        dead = true;
        break;
      }
      prod *= val;
    }
    if (!dead) total += prod;
  }
  return total;
}

HolantInstance csp_to_holant(const CspInstance& inst) {
  inst.validate();
  Mode m = inst.mode();
  HolantInstance out;
  int next_edge = 0;
  // one vertex per constraint, one edge per scope slot
  std::vector<std::vector<int>> var_edges(static_cast<std::size_t>(inst.variable_count) + 1);
  for (const auto& c : inst.constraints) {
    HolantVertex v;
    v.sig = c.sig;
    v.side = Side::Left;
    for (int x : c.scope) {
      v.edges.push_back(next_edge);
      var_edges[x].push_back(next_edge);
      ++next_edge;
    }
    out.vertices.push_back(std::move(v));
  }
  for (int x = 1; x <= inst.variable_count; ++x) {
    HolantVertex v;
    int d = static_cast<int>(var_edges[x].size());
    if (d == 0) {
      // an untouched Boolean variable contributes a factor of 2
      v.sig = Signature::constant(Scalar::integer(2, m));
    } else {
      v.sig = Signature::equality(d, m);
      v.edges = var_edges[x];
    }
    v.side = Side::Right;
    out.vertices.push_back(std::move(v));
  }
  out.edge_count = next_edge;
  out.validate();
  return out;
}

HolantInstance holographic_rewrite(const HolantInstance& inst, const BinaryMatrix& t) {
  inst.validate();
  if (!inst.bipartite_tagged()) throw NotBipartite("instance is not tagged bipartite");
  if (!t.is_invertible()) throw SingularMatrix("transformation matrix is singular");
  BinaryMatrix tinv_t = t.inverse().transpose();
  HolantInstance out = inst;
  for (auto& v : out.vertices) {
    if (*v.side == Side::Left)
      v.sig = transform(tinv_t, v.sig);  // f T^-1
    else
      v.sig = transform(t, v.sig);  // T g
  }
  return out;
}

}  // namespace matchkit
