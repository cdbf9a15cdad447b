#include "matchkit/gadget.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <set>

namespace matchkit {

/* ---- structure checks ------------------------------------------------ */

void GadgetGraph::validate() const {
  std::vector<int> uses(static_cast<std::size_t>(edge_count), 0);
  for (const auto& v : vertices) {
    if (static_cast<int>(v.slots.size()) != v.sig.arity())
      throw BadInstance("slot count does not match signature arity");
    for (int e : v.slots) {
      if (e < 0 || e >= edge_count) throw BadInstance("edge id out of range");
      ++uses[e];
    }
    if (!v.rotation.empty()) {
      std::vector<int> r = v.rotation;
      std::sort(r.begin(), r.end());
      for (std::size_t k = 0; k < r.size(); ++k)
        if (r[k] != static_cast<int>(k))
          throw BadInstance("rotation is not a permutation of slot positions");
    }
  }
  std::vector<int> dang(static_cast<std::size_t>(edge_count), 0);
  for (int e : dangling) {
    if (e < 0 || e >= edge_count) throw BadInstance("dangling edge id out of range");
    ++dang[e];
  }
  for (int e = 0; e < edge_count; ++e) {
    if (dang[e] > 1) throw BadInstance("edge listed dangling twice");
    int expect = dang[e] ? 1 : 2;
    if (uses[e] != expect)
      throw BadInstance("edge " + std::to_string(e) + " has " + std::to_string(uses[e]) +
                        " endpoints, expected " + std::to_string(expect));
  }
}

/* ---- contraction ------------------------------------------------------ */

namespace {

/* Sum the shared value of variables i < j (1-based) of one signature. */
Signature contract_pair_within(const Signature& f, int i, int j) {
  int n = f.arity();
  std::vector<int> keep;
  for (int v = 1; v <= n; ++v)
    if (v != i && v != j) keep.push_back(v);
  int m = n - 2;
  std::vector<Scalar> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint32_t a = 0; a < (1u << m); ++a) {
    std::uint32_t base = 0;
    for (int t = 0; t < m; ++t)
      base = f.set_bit(base, keep[t], static_cast<int>((a >> (m - 1 - t)) & 1u));
    Scalar sum = f.at(f.set_bit(f.set_bit(base, i, 0), j, 0)) +
                 f.at(f.set_bit(f.set_bit(base, i, 1), j, 1));
    out.push_back(sum);
  }
  return Signature(m, f.mode(), std::move(out));
}

/* Join f (at var i) with g (at var j): variables are f's minus i, then
 * g's minus j. */
Signature join_pair(const Signature& f, int i, const Signature& g, int j) {
  int nf = f.arity(), ng = g.arity();
  int m = nf + ng - 2;
  if (m > arity_cap()) throw ArityCapExceeded("intermediate arity " + std::to_string(m));
  std::vector<int> fkeep, gkeep;
  for (int v = 1; v <= nf; ++v)
    if (v != i) fkeep.push_back(v);
  for (int v = 1; v <= ng; ++v)
    if (v != j) gkeep.push_back(v);
  std::vector<Scalar> out;
  out.reserve(std::size_t{1} << m);
  int mf = nf - 1;
  for (std::uint32_t a = 0; a < (1u << m); ++a) {
    std::uint32_t fb = 0, gb = 0;
    for (int t = 0; t < mf; ++t)
      fb = f.set_bit(fb, fkeep[t], static_cast<int>((a >> (m - 1 - t)) & 1u));
    for (int t = 0; t < ng - 1; ++t)
      gb = g.set_bit(gb, gkeep[t], static_cast<int>((a >> (m - 1 - mf - t)) & 1u));
    Scalar sum = f.at(f.set_bit(fb, i, 0)) * g.at(g.set_bit(gb, j, 0)) +
                 f.at(f.set_bit(fb, i, 1)) * g.at(g.set_bit(gb, j, 1));
    out.push_back(sum);
  }
  return Signature(m, f.mode(), std::move(out));
}

struct Component {
  Signature sig;
  std::vector<int> vars;  // edge ids in variable order
};

}  // namespace

Signature contract(const GadgetGraph& gg) {
  gg.validate();
  Mode m = gg.vertices.empty() ? Mode::Exact : gg.vertices.front().sig.mode();
  std::vector<Component> comps;
  for (const auto& v : gg.vertices) comps.push_back({v.sig, v.slots});
  std::set<int> dang(gg.dangling.begin(), gg.dangling.end());

  auto positions_of = [&](int edge) {
    // (component, first var position, second var position or -1)
    struct Hit {
      int comp = -1, pos1 = -1, comp2 = -1, pos2 = -1;
    } hit;
    for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
      const auto& vars = comps[c].vars;
      for (int p = 0; p < static_cast<int>(vars.size()); ++p) {
        if (vars[p] != edge) continue;
        if (hit.comp < 0) {
          hit.comp = c;
          hit.pos1 = p;
        } else if (hit.comp == c && hit.pos2 < 0 && hit.comp2 < 0) {
          hit.pos2 = p;
        } else {
          hit.comp2 = c;
          hit.pos2 = p;
        }
      }
    }
    return hit;
  };

  while (true) {
    // candidate internal edges, greedily by resulting arity
    int best_edge = -1, best_arity = -1;
    for (int e = 0; e < gg.edge_count; ++e) {
      if (dang.count(e)) continue;
      auto hit = positions_of(e);
      if (hit.comp < 0) continue;  // already consumed
      int result;
      if (hit.comp2 < 0)
        result = comps[hit.comp].sig.arity() - 2;
      else
        result = comps[hit.comp].sig.arity() + comps[hit.comp2].sig.arity() - 2;
      if (best_edge < 0 || result < best_arity) {
        best_edge = e;
        best_arity = result;
      }
    }
    if (best_edge < 0) break;
    auto hit = positions_of(best_edge);
    if (hit.comp2 < 0) {
      Component& c = comps[hit.comp];
      int i = std::min(hit.pos1, hit.pos2) + 1, j = std::max(hit.pos1, hit.pos2) + 1;
      Signature next = contract_pair_within(c.sig, i, j);
      std::vector<int> vars;
      for (int p = 0; p < static_cast<int>(c.vars.size()); ++p)
        if (p != i - 1 && p != j - 1) vars.push_back(c.vars[p]);
      c.sig = std::move(next);
      c.vars = std::move(vars);
    } else {
      Component& a = comps[hit.comp];
      Component& b = comps[hit.comp2];
      Signature next = join_pair(a.sig, hit.pos1 + 1, b.sig, hit.pos2 + 1);
      std::vector<int> vars;
      for (int p = 0; p < static_cast<int>(a.vars.size()); ++p)
        if (p != hit.pos1) vars.push_back(a.vars[p]);
      for (int p = 0; p < static_cast<int>(b.vars.size()); ++p)
        if (p != hit.pos2) vars.push_back(b.vars[p]);
      a.sig = std::move(next);
      a.vars = std::move(vars);
      comps.erase(comps.begin() + hit.comp2);
    }
  }

  Component total{Signature::constant(Scalar::one(m)), {}};
  for (const auto& c : comps) {
    total.sig = tensor_product(total.sig, c.sig);
    total.vars.insert(total.vars.end(), c.vars.begin(), c.vars.end());
  }
  if (total.vars.size() != gg.dangling.size())
    throw BadInstance("contraction left unexpected open variables");
  std::vector<int> perm;
  for (int want : gg.dangling) {
    auto it = std::find(total.vars.begin(), total.vars.end(), want);
    if (it == total.vars.end()) throw BadInstance("dangling edge missing after contraction");
    perm.push_back(static_cast<int>(it - total.vars.begin()) + 1);
  }
  if (perm.empty()) return total.sig;
  return permute(total.sig, perm);
}

/* ---- planarity via the rotation system ------------------------------- */

bool check_rotation_planar(const GadgetGraph& gg) {
  gg.validate();
  if (!gg.rotation_present) throw MissingRotation("no rotation system attached");

  struct End {
    int vertex = -1, slot = -1;
  };
  std::vector<std::array<End, 2>> ends(static_cast<std::size_t>(gg.edge_count));
  std::vector<int> filled(static_cast<std::size_t>(gg.edge_count), 0);
  for (int v = 0; v < static_cast<int>(gg.vertices.size()); ++v)
    for (int s = 0; s < static_cast<int>(gg.vertices[v].slots.size()); ++s) {
      int e = gg.vertices[v].slots[s];
      ends[e][filled[e]++] = {v, s};
    }
  // virtual leaf vertices for dangling edges
  int n_real = static_cast<int>(gg.vertices.size());
  int n_leaf = 0;
  for (int e : gg.dangling) ends[e][filled[e]++] = {n_real + n_leaf++, 0};

  int total_vertices = n_real + n_leaf;
  // connectivity
  std::vector<int> parent(total_vertices);
  for (int i = 0; i < total_vertices; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e = 0; e < gg.edge_count; ++e) parent[find(ends[e][0].vertex)] = find(ends[e][1].vertex);
  for (int i = 1; i < total_vertices; ++i)
    if (find(i) != find(0)) throw Disconnected("gadget graph is not connected");

  if (gg.edge_count == 0) return total_vertices == 1;  // lone vertex: V - 0 + 1 = 2

  // rotation in slot order unless given
  auto rot_of = [&](int v) {
    if (v >= n_real) return std::vector<int>{0};
    const auto& r = gg.vertices[v].rotation;
    if (!r.empty()) return r;
    std::vector<int> ident(gg.vertices[v].slots.size());
    for (std::size_t k = 0; k < ident.size(); ++k) ident[k] = static_cast<int>(k);
    return ident;
  };
  // next slot in cyclic order after the given one
  auto next_slot = [&](int v, int s) {
    std::vector<int> r = rot_of(v);
    for (std::size_t k = 0; k < r.size(); ++k)
      if (r[k] == s) return r[(k + 1) % r.size()];
    throw BadInstance("slot missing from rotation");
  };
  auto edge_at = [&](int v, int s) {
    if (v >= n_real) return gg.dangling[v - n_real];
    return gg.vertices[v].slots[s];
  };

  // darts: (edge, end index) means the dart arriving at ends[e][end]
  std::vector<std::array<bool, 2>> seen(static_cast<std::size_t>(gg.edge_count), {false, false});
  int faces = 0;
  for (int e0 = 0; e0 < gg.edge_count; ++e0)
    for (int d0 = 0; d0 < 2; ++d0) {
      if (seen[e0][d0]) continue;
      ++faces;
      int e = e0, d = d0;
      while (!seen[e][d]) {
        seen[e][d] = true;
        End at = ends[e][d];
        int s2 = next_slot(at.vertex, at.slot);
        int e2 = edge_at(at.vertex, s2);
        // leave through (at.vertex, s2); the new dart arrives at the other end
        int d2 = (ends[e2][0].vertex == at.vertex && ends[e2][0].slot == s2) ? 1 : 0;
        e = e2;
        d = d2;
      }
    }
  return total_vertices - gg.edge_count + faces == 2;
}

/* ---- matchgates from explicit graphs ---------------------------------- */

Signature matchgate_signature_from_graph(const WeightedGraph& g,
                                         std::span<const int> externals) {
  std::set<int> distinct(externals.begin(), externals.end());
  if (distinct.size() != externals.size()) throw DuplicateIndex("external vertices repeat");
  for (int v : externals)
    if (v < 0 || v >= g.vertex_count) throw IndexOutOfRange("external vertex out of range");
  int k = static_cast<int>(externals.size());
  std::vector<Scalar> table;
  table.reserve(std::size_t{1} << k);
  for (std::uint32_t alpha = 0; alpha < (1u << k); ++alpha) {
    std::set<int> removed;
    for (int j = 0; j < k; ++j)
      if (alpha & (1u << (k - 1 - j))) removed.insert(externals[j]);
    // relabel the remaining vertices
    std::vector<int> map(static_cast<std::size_t>(g.vertex_count), -1);
    int next = 0;
    for (int v = 0; v < g.vertex_count; ++v)
      if (!removed.count(v)) map[v] = next++;
    WeightedGraph sub;
    sub.vertex_count = next;
    sub.mode = g.mode;
    for (const auto& e : g.edges)
      if (map[e.u] >= 0 && map[e.v] >= 0) sub.edges.push_back({map[e.u], map[e.v], e.w});
    table.push_back(count_pm(sub));
  }
  return Signature(k, g.mode, std::move(table));
}

/* ---- fragment builder ------------------------------------------------- */

namespace {

Signature sym_binary(const Scalar& a, const Scalar& b, const Scalar& c) {
  return Signature(2, a.mode(), {a, b, b, c});
}

Signature sym_one_zero_one(Mode m) {
  return sym_binary(Scalar::one(m), Scalar::zero(m), Scalar::one(m));
}
Signature sym_zero_one_zero(Mode m) {
  return sym_binary(Scalar::zero(m), Scalar::one(m), Scalar::zero(m));
}
Signature unary_pin0(Mode m) { return Signature::unary(Scalar::one(m), Scalar::zero(m)); }

/* Expanded [1,0,1,0,...] (even weights) or [0,1,0,1,...]. */
Signature parity_mask(int arity, int odd, Mode m) {
  Signature f = Signature::zero_of(arity, m);
  for (std::uint32_t i = 0; i < f.size(); ++i)
    if ((std::popcount(i) & 1) == odd) f.at(i) = Scalar::one(m);
  return f;
}

/* Gadget under construction: slots hold edge ids, -1 while open. */
struct Frag {
  Mode m;
  std::vector<GadgetVertex> verts;
  int edges = 0;

  explicit Frag(Mode mm) : m(mm) {}

  int add(const Signature& sig, std::optional<Side> side, std::vector<int> rot = {}) {
    GadgetVertex v;
    v.sig = sig;
    v.slots.assign(static_cast<std::size_t>(sig.arity()), -1);
    v.side = side;
    v.rotation = std::move(rot);
    verts.push_back(std::move(v));
    return static_cast<int>(verts.size()) - 1;
  }

  void wire(int v1, int s1, int v2, int s2) {
    if (verts[v1].slots[s1] != -1 || verts[v2].slots[s2] != -1)
      throw BadInstance("slot already wired");
    verts[v1].slots[s1] = edges;
    verts[v2].slots[s2] = edges;
    ++edges;
  }

  /* Left-left connections route through a [1,0,1] vertex. */
  void wire_split(int v1, int s1, int v2, int s2) {
    int w = add(sym_one_zero_one(m), Side::Right);
    wire(v1, s1, w, 0);
    wire(w, 1, v2, s2);
  }

  void pin(int v, int s, const Signature& unary) {
    int w = add(unary, Side::Right);
    wire(v, s, w, 0);
  }

  int absorb(const Frag& o) {
    int voff = static_cast<int>(verts.size());
    for (const auto& v : o.verts) {
      GadgetVertex c = v;
      for (int& e : c.slots)
        if (e != -1) e += edges;
      verts.push_back(std::move(c));
    }
    edges += o.edges;
    return voff;
  }

  GadgetGraph finish(std::span<const std::pair<int, int>> ports) {
    GadgetGraph gg;
    gg.vertices = verts;
    gg.edge_count = edges;
    for (auto [v, s] : ports) {
      if (gg.vertices[v].slots[s] != -1) throw BadInstance("port already wired");
      gg.vertices[v].slots[s] = gg.edge_count;
      gg.dangling.push_back(gg.edge_count);
      ++gg.edge_count;
    }
    for (const auto& v : gg.vertices)
      for (int e : v.slots)
        if (e == -1) throw BadInstance("open slot not declared dangling");
    gg.rotation_present = true;
    gg.validate();
    return gg;
  }
};

using Port = std::pair<int, int>;

Signature contract_ports(const Frag& frag, std::span<const Port> ports) {
  Frag copy = frag;
  return contract(copy.finish(ports));
}

}  // namespace

/* ---- mating ------------------------------------------------------------ */

GadgetGraph mating_gadget(const Signature& f, std::span<const MatingRole> roles) {
  int n = f.arity();
  if (static_cast<int>(roles.size()) != n) throw ArityMismatch("one role per variable");
  int dangle_var = -1;
  for (int a = 0; a < n; ++a)
    if (roles[a] == MatingRole::Dangling) {
      if (dangle_var >= 0) throw MultipleDangling("two dangling variables");
      dangle_var = a;
    }
  if (dangle_var < 0) throw NoDangling("a mating gadget needs one dangling variable");
  Mode m = f.mode();
  Frag frag(m);
  std::vector<int> rot(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) rot[a] = a;
  std::vector<int> rrot(rot.rbegin(), rot.rend());
  int ca = frag.add(f, Side::Left, rot);
  int cb = frag.add(f, Side::Left, rrot);
  for (int a = 0; a < n; ++a) {
    if (a == dangle_var) continue;
    Signature role = roles[a] == MatingRole::SumUp ? sym_one_zero_one(m)
                     : roles[a] == MatingRole::Fix0
                         ? sym_binary(Scalar::one(m), Scalar::zero(m), Scalar::zero(m))
                         : sym_binary(Scalar::zero(m), Scalar::zero(m), Scalar::one(m));
    int w = frag.add(role, Side::Right);
    frag.wire(ca, a, w, 0);
    frag.wire(w, 1, cb, a);
  }
  std::vector<Port> ports{{ca, dangle_var}, {cb, dangle_var}};
  return frag.finish(ports);
}

/* ---- star gadgets ------------------------------------------------------ */

GadgetGraph StarGadget::to_gadget() const {
  Mode m = central.mode();
  Frag frag(m);
  int n = central.arity();
  int hub = frag.add(central, std::nullopt);
  std::vector<Port> ports;
  for (int a = 0; a < n; ++a) {
    Port cur{hub, a};
    for (const Signature& link : chains[a]) {
      int v = frag.add(link, std::nullopt);
      frag.wire(cur.first, cur.second, v, 0);
      cur = {v, 1};
    }
    ports.push_back(cur);
  }
  return frag.finish(ports);
}

StarGadget synthesize_star(const Signature& f) {
  if (f.is_trivial()) throw PreconditionViolated("trivial signature has no star form");
  PermutableReport rep = is_permutable_matchgate(f);
  if (!rep.yes) throw NotPermutableMatchgate("input is not a permutable matchgate signature");
  Mode m = f.mode();
  Normalization norm = normalize(f);
  const Signature& F = norm.normalized;
  int n = f.arity();
  std::uint32_t beta = norm.cert.shift;
  MpType type = classify_mp_type(F);

  StarGadget star;
  star.scale = norm.cert.scale.inverse();  // contract == scale * f
  star.chains.assign(static_cast<std::size_t>(n), {});
  auto shifted = [&](int var) { return (beta >> (n - var)) & 1u; };

  switch (type.kind) {
    case MpType::Kind::Pinning: {
      star.central = Signature::point_mass(n, 0, m);
      for (int a = 1; a <= n; ++a)
        if (shifted(a)) star.chains[a - 1].push_back(sym_zero_one_zero(m));
      break;
    }
    case MpType::Kind::Parity: {
      int flips = std::popcount(beta) & 1;
      star.central = parity_mask(n, flips, m);
      for (int a = 1; a <= n; ++a) {
        const Scalar& g = type.weights[a];
        if (shifted(a))
          star.chains[a - 1].push_back(sym_binary(g, Scalar::zero(m), Scalar::one(m)));
        else
          star.chains[a - 1].push_back(sym_binary(Scalar::one(m), Scalar::zero(m), g));
      }
      break;
    }
    case MpType::Kind::Matching: {
      SymmetricSignature h;
      h.mode = m;
      h.values.assign(static_cast<std::size_t>(n) + 1, Scalar::zero(m));
      h.values[1] = Scalar::one(m);
      star.central = h.expand();
      for (int a = 1; a <= n; ++a) {
        if (a == type.hub) {
          if (!shifted(a)) star.chains[a - 1].push_back(sym_zero_one_zero(m));
          // a shifted hub cancels the two [0,1,0] links
        } else {
          star.chains[a - 1].push_back(
              sym_binary(Scalar::one(m), Scalar::zero(m), type.weights[a]));
          if (shifted(a)) star.chains[a - 1].push_back(sym_zero_one_zero(m));
        }
      }
      break;
    }
    case MpType::Kind::SmallArity:
      throw CaseExhaustion("untyped permutable matchgate");
  }
  return star;
}

/* ---- symmetric realizations (the case machine) ------------------------ */

namespace {

/* Structure of a permutable matchgate outside the affine class, read off
 * its normalization: which variables carry weight, which are forced, and
 * the support parity. */
struct MpShape {
  enum class Type { Parity, AntiDiag, Matching };
  Type type = Type::Parity;
  Mode m = Mode::Exact;
  const Signature* f = nullptr;
  Signature norm;        // normalization of f
  std::uint32_t beta = 0;
  std::vector<int> good;   // 1-based
  std::vector<int> drop0;  // forced to 0 in f's support
  std::vector<int> drop1;  // forced to 1
  int eps = 0;             // parity of f's support weight

  int slot(int var) const { return var - 1; }
  /* rotation: goods first, then forced variables */
  std::vector<int> rotation() const {
    std::vector<int> rot;
    for (int a : good) rot.push_back(slot(a));
    for (int a : drop0) rot.push_back(slot(a));
    for (int a : drop1) rot.push_back(slot(a));
    return rot;
  }
};

MpShape extract_shape(const Signature& f) {
  MpShape s;
  s.m = f.mode();
  s.f = &f;
  Normalization norm = normalize(f);
  s.norm = norm.normalized;
  s.beta = norm.cert.shift;
  int n = f.arity();
  const Signature& F = s.norm;
  std::set<int> good;
  bool triangle = false;
  for (int a = 1; a <= n && !triangle; ++a)
    for (int b = a + 1; b <= n && !triangle; ++b) {
      if (pair_entry(F, a, b).is_zero()) continue;
      for (int c = b + 1; c <= n; ++c)
        if (!pair_entry(F, a, c).is_zero() && !pair_entry(F, b, c).is_zero()) {
          triangle = true;
          break;
        }
    }
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (!pair_entry(F, a, b).is_zero()) {
        good.insert(a);
        good.insert(b);
      }
  if (good.empty()) throw CaseExhaustion("pinning-type input is affine");
  s.good.assign(good.begin(), good.end());
  if (triangle)
    s.type = MpShape::Type::Parity;
  else
    s.type = s.good.size() == 2 ? MpShape::Type::AntiDiag : MpShape::Type::Matching;
  for (int a = 1; a <= n; ++a) {
    if (good.count(a)) continue;
    if ((s.beta >> (n - a)) & 1u)
      s.drop1.push_back(a);
    else
      s.drop0.push_back(a);
  }
  s.eps = std::popcount(s.beta) & 1;
  return s;
}

/* One copy of f with its forced variables handled: forced-to-0 pinned with
 * [1,0], forced-to-1 looped in adjacent pairs; an odd count leaves one
 * open rail, reported back for cross-pairing. */
struct FCopy {
  int vertex = -1;
  std::optional<Port> spare_rail;  // unpaired forced-to-1 slot
};

FCopy add_f_copy(Frag& frag, const MpShape& s, bool mirror = false) {
  std::vector<int> rot = s.rotation();
  if (mirror) std::reverse(rot.begin(), rot.end());
  FCopy c;
  c.vertex = frag.add(*s.f, Side::Left, rot);
  for (int a : s.drop0) frag.pin(c.vertex, s.slot(a), unary_pin0(s.m));
  for (std::size_t k = 0; k + 1 < s.drop1.size(); k += 2)
    frag.wire_split(c.vertex, s.slot(s.drop1[k]), c.vertex, s.slot(s.drop1[k + 1]));
  if (s.drop1.size() % 2) c.spare_rail = Port{c.vertex, s.slot(s.drop1.back())};
  return c;
}

void cross_rails(Frag& frag, FCopy& a, FCopy& b) {
  if (a.spare_rail.has_value() != b.spare_rail.has_value())
    throw CaseExhaustion("unmatched forced-to-1 rails");
  if (a.spare_rail) {
    frag.wire_split(a.spare_rail->first, a.spare_rail->second, b.spare_rail->first,
                    b.spare_rail->second);
    a.spare_rail.reset();
    b.spare_rail.reset();
  }
}

struct Core {
  Frag frag;
  std::vector<Port> ports;     // open good ports, defining variable order
  Core(Mode m) : frag(m) {}
};

/* Frame exposing all good variables of f; a second fully pinned copy
 * absorbs the spare rail when the forced-to-1 count is odd. */
Core main_frame(const MpShape& s) {
  Core core(s.m);
  FCopy main = add_f_copy(core.frag, s);
  if (main.spare_rail) {
    MpShape aux = s;  // fully pinned partner
    FCopy partner = add_f_copy(core.frag, aux, true);
    for (int a : s.good) core.frag.pin(partner.vertex, s.slot(a), unary_pin0(s.m));
    cross_rails(core.frag, main, partner);
  }
  for (int a : s.good) core.ports.push_back({main.vertex, s.slot(a)});
  return core;
}

SymmetricRealization finish_realization(Frag frag, std::span<const Port> ports, int case_id) {
  SymmetricRealization out;
  out.gadget = frag.finish(ports);
  out.realized = contract(out.gadget);
  out.case_id = case_id;
  auto sym = detect_symmetric(out.realized);
  if (!sym) throw CaseExhaustion("realized signature is not symmetric");
  if (!is_matchgate(out.realized).yes)
    throw CaseExhaustion("realized signature fails the matchgate identities");
  if (is_affine(out.realized)) throw CaseExhaustion("realized signature is affine");
  if (!m_minus_a_form(*sym)) throw CaseExhaustion("realized signature fits no M-A shape");
  return out;
}

/* Case machine over an even-parity frame: the contracted table over the
 * good ports has the product shape [weight even] * prod [1, y_a]. */
SymmetricRealization realize_from_even_frame(const Core& core, int routed) {
  Mode m = core.frag.m;
  int k = static_cast<int>(core.ports.size());
  Signature fp = contract_ports(core.frag, core.ports);
  if (fp.at(0).is_zero()) throw CaseExhaustion("even frame has empty base point");
  auto pairv = [&](int i, int j) {  // y_i y_j
    return pair_entry(fp, i, j) / fp.at(0);
  };
  // a pair with (y_i y_j)^4 != 1 pins everything else
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      Scalar p = pairv(i, j);
      if (p.is_zero() || fourth_power_class(p) == FourthPower::One) continue;
      Frag frag = core.frag;
      for (int t = 1; t <= k; ++t)
        if (t != i && t != j)
          frag.pin(core.ports[t - 1].first, core.ports[t - 1].second, unary_pin0(m));
      std::vector<Port> keep{core.ports[i - 1], core.ports[j - 1]};
      return finish_realization(std::move(frag), keep, routed ? 8 : 1);
    }
  if (k < 3) throw CaseExhaustion("no usable pair in a rank-2 even frame");
  // all pair products are fourth roots of unity; alignment is needed
  auto square_of = [&](int i) {  // y_i^2 from three pair products
    int j = 0, t = 0;
    for (int c = 1; c <= k && !t; ++c) {
      if (c == i) continue;
      if (!j)
        j = c;
      else
        t = c;
    }
    return pairv(i, j) * pairv(i, t) / pairv(j, t);
  };
  bool any_nonunit = false;
  for (int i = 1; i <= k; ++i) {
    Scalar sq = square_of(i);
    Scalar quad = sq * sq;
    if (quad.equals(-Scalar::one(m)))
      any_nonunit = true;
    else if (!quad.equals(Scalar::one(m)))
      throw CaseExhaustion("pair products are fourth roots but a weight is not an eighth root");
  }
  if (!any_nonunit) throw CaseExhaustion("all weights are fourth roots: frame is affine");
  for (int i = 1; i <= k; ++i)
    if (!(square_of(i) * square_of(i)).equals(-Scalar::one(m)))
      throw CaseExhaustion("mixed fourth/eighth root weights");

  // binary [1,0,+-i] sub-gadgets realizable from the frame
  std::optional<std::pair<int, int>> plus_pair, minus_pair;
  Scalar iu = Scalar::i_unit(m);
  for (int i = 1; i <= k && !(plus_pair && minus_pair); ++i)
    for (int j = i + 1; j <= k; ++j) {
      Scalar p = pairv(i, j);
      if (!plus_pair && p.equals(iu)) plus_pair = {i, j};
      if (!minus_pair && p.equals(-iu)) minus_pair = {i, j};
    }
  if (!plus_pair && !minus_pair)
    throw CaseExhaustion("no [1,0,+-i] pair available for alignment");

  auto link_frag = [&](std::pair<int, int> pr) {
    Frag frag = core.frag;
    for (int t = 1; t <= k; ++t)
      if (t != pr.first && t != pr.second)
        frag.pin(core.ports[t - 1].first, core.ports[t - 1].second, unary_pin0(m));
    std::vector<Port> keep{core.ports[pr.first - 1], core.ports[pr.second - 1]};
    return std::make_pair(frag, keep);
  };

  // anchored weights: y_1 from its square, the rest by exact ratios
  Scalar y1 = *sqrt_in_field(square_of(1));
  std::vector<Scalar> y(static_cast<std::size_t>(k) + 1, Scalar::zero(m));
  y[1] = y1;
  for (int i = 2; i <= k; ++i) y[i] = pairv(1, i) / y1;
  auto exponent_of = [&](const Scalar& v) {
    Scalar w = Scalar::omega(m);
    Scalar cur = w;
    for (int e = 0; e < 4; ++e) {
      if (v.equals(cur)) return e;
      cur = cur * iu;
    }
    throw CaseExhaustion("weight is not an eighth root times omega");
  };

  Frag frag = core.frag;
  std::vector<Port> outer;
  for (int a = 1; a <= k; ++a) {
    int e = exponent_of(y[a]);
    int plus_count = (4 - e) % 4, minus_count = e % 4;
    bool use_plus;
    if (plus_pair && minus_pair)
      use_plus = plus_count <= minus_count;  // ties break toward [1,0,i]
    else
      use_plus = plus_pair.has_value();
    int count = use_plus ? plus_count : minus_count;
    Port cur = core.ports[a - 1];
    for (int t = 0; t < count; ++t) {
      auto [sub, sub_ports] = link_frag(use_plus ? *plus_pair : *minus_pair);
      int off = frag.absorb(sub);
      Port p1{sub_ports[0].first + off, sub_ports[0].second};
      Port p2{sub_ports[1].first + off, sub_ports[1].second};
      frag.wire_split(cur.first, cur.second, p1.first, p1.second);
      cur = p2;
    }
    outer.push_back(cur);
  }
  return finish_realization(std::move(frag), outer, routed ? 8 : 2);
}

/* Parity type with an odd frame: reroute one variable through the
 * inequality binary realized by a pinned partner copy, which flips the
 * frame to even parity. */
SymmetricRealization realize_parity_odd(const MpShape& s) {
  Mode m = s.m;
  const Signature& F = s.norm;
  // fourth powers of the weights, up to inversion
  auto weight_quad_is_one = [&](int a) {
    int b = -1, c = -1;
    for (int t : s.good)
      if (t != a) {
        if (b < 0)
          b = t;
        else if (c < 0) {
          c = t;
          break;
        }
      }
    Scalar sq = pair_entry(F, std::min(a, b), std::max(a, b)) *
                pair_entry(F, std::min(a, c), std::max(a, c)) /
                pair_entry(F, std::min(b, c), std::max(b, c));
    return (sq * sq).equals(Scalar::one(m));
  };
  int bad = -1;
  for (int a : s.good)
    if (!weight_quad_is_one(a)) {
      bad = a;
      break;
    }
  if (bad < 0) throw CaseExhaustion("all parity weights are fourth roots: input is affine");
  int reroute = -1;
  for (int a : s.good)
    if (a != bad) {
      reroute = a;
      break;
    }
  // partner copy pinned to everything except (reroute, bad) realizes the
  // weighted inequality; its second end replaces the rerouted variable
  Core core(m);
  FCopy main = add_f_copy(core.frag, s);
  FCopy sub = add_f_copy(core.frag, s, true);
  for (int a : s.good)
    if (a != reroute && a != bad) core.frag.pin(sub.vertex, s.slot(a), unary_pin0(m));
  cross_rails(core.frag, main, sub);
  core.frag.wire_split(sub.vertex, s.slot(bad), main.vertex, s.slot(reroute));
  for (int a : s.good) {
    if (a == reroute)
      core.ports.push_back({sub.vertex, s.slot(reroute)});
    else
      core.ports.push_back({main.vertex, s.slot(a)});
  }
  return realize_from_even_frame(core, /*routed=*/1);
}

/* Arity-two goods: the support is a pair of complementary assignments. */
SymmetricRealization realize_antidiag(const MpShape& s) {
  Mode m = s.m;
  const Signature& f = *s.f;
  std::vector<std::uint32_t> support;
  for (std::uint32_t i = 0; i < f.size(); ++i)
    if (!f.at(i).is_zero()) support.push_back(i);
  if (support.size() != 2) throw CaseExhaustion("two-weight shape expected two support points");
  Scalar ratio = f.at(support[1]) / f.at(support[0]);
  int g1 = s.good[0], g2 = s.good[1];

  if (fourth_power_class(ratio * ratio) != FourthPower::One) {
    // mating on the first good variable leaves [v1^2, 0, v2^2]
    Frag frag(m);
    FCopy a = add_f_copy(frag, s);
    FCopy b = add_f_copy(frag, s, true);
    cross_rails(frag, a, b);
    for (int t : s.good)
      if (t != g2) {
        int w = frag.add(sym_one_zero_one(m), Side::Right);
        frag.wire(a.vertex, s.slot(t), w, 0);
        frag.wire(w, 1, b.vertex, s.slot(t));
      }
    std::vector<Port> ports{{a.vertex, s.slot(g2)}, {b.vertex, s.slot(g2)}};
    return finish_realization(std::move(frag), ports, 3);
  }

  // ratio^4 = -1 (a fourth root would make f affine)
  if (!(ratio.pow(4)).equals(-Scalar::one(m)))
    throw CaseExhaustion("two-point ratio is a fourth root: input is affine");

  auto triple = [&](bool with_factory) {
    Frag frag(m);
    std::vector<FCopy> legs;
    int hub = frag.add(parity_mask(3, 0, m), Side::Right);
    for (int c = 0; c < 3; ++c) {
      FCopy leg = add_f_copy(frag, s, c % 2 == 1);
      frag.wire(leg.vertex, s.slot(g2), hub, c);
      legs.push_back(leg);
    }
    std::vector<Port> rails;
    for (auto& leg : legs)
      if (leg.spare_rail) rails.push_back(*leg.spare_rail);
    if (with_factory) {
      // a copy pinned on both goods exposes its forced-to-1 rails
      int fac = frag.add(f, Side::Left, s.rotation());
      frag.pin(fac, s.slot(g1), unary_pin0(m));
      frag.pin(fac, s.slot(g2), unary_pin0(m));
      for (int d : s.drop0) frag.pin(fac, s.slot(d), unary_pin0(m));
      for (int d : s.drop1) rails.push_back({fac, s.slot(d)});
    }
    if (rails.size() % 2) throw CaseExhaustion("odd rail count in triple gadget");
    for (std::size_t t = 0; t + 1 < rails.size(); t += 2)
      frag.wire_split(rails[t].first, rails[t].second, rails[t + 1].first,
                      rails[t + 1].second);
    std::vector<Port> ports;
    for (auto& leg : legs) ports.push_back({leg.vertex, s.slot(g1)});
    return finish_realization(std::move(frag), ports, 4);
  };

  auto quad = [&]() {
    // two [1,0,1,0] hubs joined by a pair of f copies acting as a plain
    // wire; four legs give the even form [1,0,r,0,r^2]
    Frag frag(m);
    int hub1 = frag.add(parity_mask(3, 0, m), Side::Right);
    int hub2 = frag.add(parity_mask(3, 0, m), Side::Right);
    std::vector<FCopy> copies;
    std::vector<Port> ports;
    for (int c = 0; c < 4; ++c) {
      FCopy leg = add_f_copy(frag, s, c % 2 == 1);
      int hub = c < 2 ? hub1 : hub2;
      frag.wire(leg.vertex, s.slot(g2), hub, c % 2);
      ports.push_back({leg.vertex, s.slot(g1)});
      copies.push_back(leg);
    }
    // both wire copies traversed in the same g2->g1 direction, so their
    // composite is a scalar multiple of the identity
    FCopy w1 = add_f_copy(frag, s);
    FCopy w2 = add_f_copy(frag, s, true);
    frag.wire(w1.vertex, s.slot(g2), hub1, 2);
    frag.wire_split(w1.vertex, s.slot(g1), w2.vertex, s.slot(g2));
    frag.wire(w2.vertex, s.slot(g1), hub2, 2);
    copies.push_back(w1);
    copies.push_back(w2);
    std::vector<Port> rails;
    for (auto& c : copies)
      if (c.spare_rail) rails.push_back(*c.spare_rail);
    if (rails.size() % 2) throw CaseExhaustion("odd rail count in quad gadget");
    for (std::size_t t = 0; t + 1 < rails.size(); t += 2)
      frag.wire_split(rails[t].first, rails[t].second, rails[t + 1].first,
                      rails[t + 1].second);
    return finish_realization(std::move(frag), ports, 5);
  };

  bool diag_flavor = ((support[0] >> (f.arity() - g1)) & 1u) ==
                     ((support[0] >> (f.arity() - g2)) & 1u);
  bool rails_even = s.drop1.size() % 2 == 0;
  std::vector<std::function<SymmetricRealization()>> attempts;
  if (rails_even)
    attempts.push_back([&] { return triple(false); });
  else if (diag_flavor)
    attempts.push_back([&] { return triple(true); });
  attempts.push_back(quad);
  for (auto& attempt : attempts) {
    try {
      return attempt();
    } catch (const CaseExhaustion&) {
      continue;
    }
  }
  throw CaseExhaustion("no construction fits the two-point shape");
}

/* Matching type with three or more weighted variables. */
SymmetricRealization realize_matching(const MpShape& s) {
  Mode m = s.m;
  const Signature& f = *s.f;
  int n = f.arity();
  // support = { sigma ^ e_j : j good }, value v_j there
  std::vector<std::uint32_t> support;
  for (std::uint32_t i = 0; i < f.size(); ++i)
    if (!f.at(i).is_zero()) support.push_back(i);
  if (support.size() != s.good.size())
    throw CaseExhaustion("matching shape support mismatch");
  std::uint32_t sigma = 0;
  for (int v = 1; v <= n; ++v) {
    int ones = 0;
    for (std::uint32_t p : support) ones += (p >> (n - v)) & 1u;
    if (ones * 2 > static_cast<int>(support.size())) sigma |= 1u << (n - v);
  }
  std::map<int, Scalar> value;  // v_j
  std::set<std::uint32_t> seen(support.begin(), support.end());
  for (int j : s.good) {
    std::uint32_t point = sigma ^ (1u << (n - j));
    if (!seen.count(point)) throw CaseExhaustion("matching support is not a star");
    value[j] = f.at(point);
  }
  auto reversed = [&](int j) { return ((sigma >> (n - j)) & 1u) != 0; };
  std::vector<int> rev, upr;
  for (int j : s.good) (reversed(j) ? rev : upr).push_back(j);

  int q = static_cast<int>(s.drop1.size());
  int lg = static_cast<int>(rev.size());

  /* One or two blobs providing the fixed-to-1 role ends. The feed copy
   * pins the uprights and one reversed variable; the remaining rails are
   * looped down to one or two open ends. */
  auto fix1_feasible = q + lg - 1 >= 1;
  auto add_fix1_role = [&](Frag& frag, Port a_side, Port b_side) {
    auto build_feed = [&](std::vector<Port>& ends) {
      int v = frag.add(f, Side::Left, s.rotation());
      for (int d : s.drop0) frag.pin(v, s.slot(d), unary_pin0(m));
      for (int u : upr) frag.pin(v, s.slot(u), unary_pin0(m));
      frag.pin(v, s.slot(rev.front()), unary_pin0(m));
      std::vector<Port> rails;
      for (std::size_t t = 1; t < rev.size(); ++t) rails.push_back({v, s.slot(rev[t])});
      for (int d : s.drop1) rails.push_back({v, s.slot(d)});
      while (rails.size() > 2) {
        auto r1 = rails.back();
        rails.pop_back();
        auto r2 = rails.back();
        rails.pop_back();
        frag.wire_split(r1.first, r1.second, r2.first, r2.second);
      }
      ends = rails;
    };
    std::vector<Port> ends;
    build_feed(ends);
    if (ends.size() == 2) {
      frag.wire_split(ends[0].first, ends[0].second, a_side.first, a_side.second);
      frag.wire_split(ends[1].first, ends[1].second, b_side.first, b_side.second);
    } else {
      frag.wire_split(ends[0].first, ends[0].second, a_side.first, a_side.second);
      std::vector<Port> ends2;
      build_feed(ends2);
      if (ends2.size() != 1) throw CaseExhaustion("feed blob shape changed");
      frag.wire_split(ends2[0].first, ends2[0].second, b_side.first, b_side.second);
    }
  };

  auto build_mating = [&](int d, std::vector<int> sums) -> SymmetricRealization {
    Frag frag(m);
    std::vector<int> rot = s.rotation();
    std::vector<int> rrot(rot.rbegin(), rot.rend());
    int ca = frag.add(f, Side::Left, rot);
    int cb = frag.add(f, Side::Left, rrot);
    for (int j = 1; j <= n; ++j) {
      if (j == d) continue;
      bool is_sum = std::find(sums.begin(), sums.end(), j) != sums.end() ||
                    std::find(s.drop0.begin(), s.drop0.end(), j) != s.drop0.end() ||
                    std::find(s.drop1.begin(), s.drop1.end(), j) != s.drop1.end();
      if (is_sum) {
        int w = frag.add(sym_one_zero_one(m), Side::Right);
        frag.wire(ca, s.slot(j), w, 0);
        frag.wire(w, 1, cb, s.slot(j));
      } else if (!reversed(j)) {
        frag.pin(ca, s.slot(j), unary_pin0(m));
        frag.pin(cb, s.slot(j), unary_pin0(m));
      } else {
        add_fix1_role(frag, {ca, s.slot(j)}, {cb, s.slot(j)});
      }
    }
    std::vector<Port> ports{{ca, s.slot(d)}, {cb, s.slot(d)}};
    return finish_realization(std::move(frag), ports,
                              static_cast<int>(sums.size()) == 1 ? 6 : 7);
  };

  auto fix1_needed = [&](int d, const std::vector<int>& sums) {
    for (int j : s.good)
      if (j != d && reversed(j) && std::find(sums.begin(), sums.end(), j) == sums.end())
        return true;
    return false;
  };

  // single sum-up matings: need (v_d^2 / v_s^2)^4 != 1
  for (int d : s.good)
    for (int sum : s.good) {
      if (sum == d) continue;
      if (fix1_needed(d, {sum}) && !fix1_feasible) continue;
      Scalar r = value[d] / value[sum];
      if (fourth_power_class(r * r) != FourthPower::One)
        return build_mating(d, {sum});
    }

  // double sum-up fallback on a mixed triple
  std::vector<int> triple;
  for (int j : rev) {
    triple.push_back(j);
    if (triple.size() == 3) break;
  }
  for (int j : upr) {
    if (triple.size() == 3) break;
    triple.push_back(j);
  }
  std::sort(triple.begin(), triple.end());
  if (triple.size() < 3) throw CaseExhaustion("matching machine needs three weighted variables");
  for (int pick = 0; pick < 3; ++pick) {
    int d = triple[pick];
    std::vector<int> sums;
    for (int t = 0; t < 3; ++t)
      if (t != pick) sums.push_back(triple[t]);
    Scalar total = value[sums[0]] * value[sums[0]] + value[sums[1]] * value[sums[1]];
    if (total.is_zero()) continue;
    if (fix1_needed(d, sums) && !fix1_feasible) continue;
    return build_mating(d, sums);
  }
  throw CaseExhaustion("all double sum-up gadgets vanish");
}

}  // namespace

SymmetricRealization realize_symmetric_from_mp(const Signature& f) {
  if (!is_permutable_matchgate(f).yes)
    throw PreconditionViolated("input is not a permutable matchgate signature");
  if (is_affine(f)) throw PreconditionViolated("input is affine");
  MpShape shape = extract_shape(f);
  switch (shape.type) {
    case MpShape::Type::Parity: {
      int odd = (shape.eps + static_cast<int>(shape.drop1.size())) & 1;
      if (odd == 0) return realize_from_even_frame(main_frame(shape), 0);
      return realize_parity_odd(shape);
    }
    case MpShape::Type::AntiDiag:
      return realize_antidiag(shape);
    case MpShape::Type::Matching:
      return realize_matching(shape);
  }
  throw CaseExhaustion("unreachable");
}

/* ---- nondegenerate binaries (bounded-occurrence machinery) ------------- */

namespace {

std::vector<MatingRole> nondeg_roles(const Signature& cur) {
  int k = cur.arity();
  if (k == 2) return {MatingRole::Dangling, MatingRole::SumUp};
  for (int i = 1; i <= k; ++i)
    for (int c = 0; c <= 1; ++c) {
      Signature sub = pin(cur, i, c);
      if (is_degenerate(sub)) continue;
      std::vector<MatingRole> inner = nondeg_roles(sub);
      inner.insert(inner.begin() + (i - 1), c ? MatingRole::Fix1 : MatingRole::Fix0);
      return inner;
    }
  // every pin degenerate: the support is {0 alpha, 1 bar-alpha}
  std::vector<MatingRole> roles(static_cast<std::size_t>(k), MatingRole::SumUp);
  roles[0] = MatingRole::Dangling;
  return roles;
}

bool nondegenerate_binary(const Signature& g) {
  if (g.arity() != 2) return false;
  Scalar det = g.at(0) * g.at(3) - g.at(1) * g.at(2);
  return !det.is_zero();
}

}  // namespace

BinaryRealization realize_nondeg_binary(const Signature& f) {
  if (f.arity() < 2) throw ArityMismatch("needs arity >= 2");
  if (is_degenerate(f)) throw DegenerateInput("input tensors into unaries");
  std::vector<MatingRole> roles = nondeg_roles(f);
  BinaryRealization out;
  out.gadget = mating_gadget(f, roles);
  out.realized = contract(out.gadget);
  out.kind = BinaryRealization::Kind::NondegBinary;
  if (!nondegenerate_binary(out.realized))
    throw CaseExhaustion("mated binary is degenerate");
  return out;
}

namespace {

/* Builds one copy of the working signature as a fragment with one port per
 * variable; wrapping with pins implements the recursion on f^{x_i=0}. */
struct CopyMaker {
  std::function<std::pair<Frag, std::vector<Port>>()> make;
};

BinaryRealization finish_binary(Frag frag, std::span<const Port> ports,
                                BinaryRealization::Kind kind, Mode m) {
  BinaryRealization out;
  out.gadget = frag.finish(ports);
  out.realized = contract(out.gadget);
  out.kind = kind;
  if (kind == BinaryRealization::Kind::NondegBinary) {
    if (!nondegenerate_binary(out.realized))
      throw CaseExhaustion("realized binary is degenerate");
  } else {
    Signature point = Signature::zero_of(2, m);
    point.at(3) = Scalar::one(m);
    if (!proportionality_factor(out.realized, point))
      throw CaseExhaustion("realized signature is not the (0,0,0,1) point");
  }
  return out;
}

/* Mates two copies of a forced tensor [0,1]^m (delivered by maker as a
 * fragment with m ports) into the (0,0,0,1) point. */
BinaryRealization make_point_001(const CopyMaker& maker, Mode m) {
  auto [fa, pa] = maker.make();
  auto [fb, pb] = maker.make();
  Frag frag = fa;
  int off = frag.absorb(fb);
  for (auto& p : pb) p.first += off;
  // first port dangles on each side, the rest are summed together
  for (std::size_t t = 1; t < pa.size(); ++t)
    frag.wire_split(pa[t].first, pa[t].second, pb[t].first, pb[t].second);
  std::vector<Port> ports{pa[0], pb[0]};
  return finish_binary(std::move(frag), ports, BinaryRealization::Kind::Point001, m);
}

BinaryRealization realize_binary_rec(const Signature& cur, const CopyMaker& maker) {
  Mode m = cur.mode();
  int k = cur.arity();
  if (k == 2) {
    auto [frag, ports] = maker.make();
    return finish_binary(std::move(frag), ports, BinaryRealization::Kind::NondegBinary, m);
  }
  // recurse on a nondegenerate zero-pin
  for (int i = 1; i <= k; ++i) {
    Signature sub = pin(cur, i, 0);
    if (sub.is_trivial() || is_degenerate(sub)) continue;
    CopyMaker wrapped{[maker, i, m]() {
      auto [frag, ports] = maker.make();
      frag.pin(ports[i - 1].first, ports[i - 1].second, unary_pin0(m));
      ports.erase(ports.begin() + (i - 1));
      return std::make_pair(frag, ports);
    }};
    return realize_binary_rec(sub, wrapped);
  }
  // all zero-pins degenerate; pick one that is not identically zero
  int i1 = -1;
  for (int i = 1; i <= k; ++i)
    if (!pin(cur, i, 0).is_trivial()) {
      i1 = i;
      break;
    }
  if (i1 < 0) throw CaseExhaustion("nondegenerate signature with all zero pins trivial");
  Signature pinned = pin(cur, i1, 0);
  auto factors = degenerate_factors(pinned);
  if (!factors) throw CaseExhaustion("pin lost degeneracy unexpectedly");
  // L: positions (in cur) whose factor has a nonzero 0-entry
  std::vector<int> zero_entry_vars;  // factors proportional to [0,1]
  {
    int pos = 0;
    for (int v = 1; v <= k; ++v) {
      if (v == i1) continue;
      if ((*factors)[pos].at(0).is_zero()) zero_entry_vars.push_back(v);
      ++pos;
    }
  }
  if (!zero_entry_vars.empty()) {
    // pin i1 and the L-part to zero; the rest is a forced [0,1]^m tensor
    std::vector<int> keep = zero_entry_vars;
    CopyMaker blob{[&maker, keep, k, m]() {
      auto [frag, ports] = maker.make();
      std::vector<Port> out;
      std::vector<Port> all = ports;
      for (int v = 1; v <= k; ++v) {
        if (std::find(keep.begin(), keep.end(), v) != keep.end()) {
          out.push_back(all[v - 1]);
        } else {
          frag.pin(all[v - 1].first, all[v - 1].second, unary_pin0(m));
        }
      }
      return std::make_pair(frag, out);
    }};
    return make_point_001(blob, m);
  }
  // cur = scale * (tensor of [1,b_j] + d [0,1]^k) with d != 0
  Scalar base = cur.at(0);
  if (base.is_zero()) throw CaseExhaustion("expected a nonzero all-zero entry");
  std::vector<Scalar> b(static_cast<std::size_t>(k) + 1, Scalar::zero(m));
  for (int j = 1; j <= k; ++j) b[j] = cur.at(1u << (k - j)) / base;
  Scalar prod_b = Scalar::one(m);
  for (int j = 1; j <= k; ++j) prod_b = prod_b * b[j];
  Scalar d = cur.at(cur.size() - 1) / base - prod_b;
  if (d.is_zero()) throw CaseExhaustion("degenerate decomposition: d vanished");

  auto make_unary_blob = [&](int i) {
    // copy pinned everywhere except variable i: realizes [1, b_i]
    auto [frag, ports] = maker.make();
    for (int v = 1; v <= k; ++v)
      if (v != i) frag.pin(ports[v - 1].first, ports[v - 1].second, unary_pin0(m));
    return std::make_pair(frag, ports[i - 1]);
  };

  for (int i = 1; i <= k; ++i) {
    if (!(b[i] * b[i]).equals(-Scalar::one(m))) continue;
    // b_i = +-i kills the tensor part: the rest is a forced [0,1]^(k-1)
    CopyMaker blob{[&maker, &make_unary_blob, i, k]() {
      auto [frag, ports] = maker.make();
      auto [ufrag, uport] = make_unary_blob(i);
      int off = frag.absorb(ufrag);
      frag.wire_split(ports[i - 1].first, ports[i - 1].second, uport.first + off,
                      uport.second);
      ports.erase(ports.begin() + (i - 1));
      return std::make_pair(frag, ports);
    }};
    return make_point_001(blob, m);
  }

  bool all_b_zero = true;
  for (int j = 1; j <= k; ++j)
    if (!b[j].is_zero()) all_b_zero = false;
  if (all_b_zero) {
    // weighted equality: mate two copies, summing everything but x1
    auto [fa, pa] = maker.make();
    auto [fb, pb] = maker.make();
    Frag frag = fa;
    int off = frag.absorb(fb);
    for (auto& p : pb) p.first += off;
    for (int v = 2; v <= k; ++v)
      frag.wire_split(pa[v - 1].first, pa[v - 1].second, pb[v - 1].first, pb[v - 1].second);
    std::vector<Port> ports{pa[0], pb[0]};
    return finish_binary(std::move(frag), ports, BinaryRealization::Kind::NondegBinary, m);
  }

  // connect [1, b_i] into variable i for i >= 3; variables 1 and 2 remain
  auto [frag, ports] = maker.make();
  for (int i = 3; i <= k; ++i) {
    auto [ufrag, uport] = make_unary_blob(i);
    int off = frag.absorb(ufrag);
    frag.wire_split(ports[i - 1].first, ports[i - 1].second, uport.first + off, uport.second);
  }
  std::vector<Port> keep{ports[0], ports[1]};
  return finish_binary(std::move(frag), keep, BinaryRealization::Kind::NondegBinary, m);
}

}  // namespace

BinaryRealization realize_binary_or_001(const Signature& f) {
  if (f.arity() < 2) throw ArityMismatch("needs arity >= 2");
  if (is_degenerate(f)) throw DegenerateInput("input tensors into unaries");
  Mode m = f.mode();
  CopyMaker base{[&f, m]() {
    Frag frag(m);
    int v = frag.add(f, Side::Left);
    std::vector<Port> ports;
    for (int a = 0; a < f.arity(); ++a) ports.push_back({v, a});
    return std::make_pair(frag, ports);
  }};
  return realize_binary_rec(f, base);
}

}  // namespace matchkit
