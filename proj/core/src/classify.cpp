#include "matchkit/classify.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace matchkit {

/* ---- affine ---------------------------------------------------------- */

namespace {

/* Ratio must be a power of i; returns the exponent in Z4. */
std::optional<int> i_power_exponent(const Scalar& ratio) {
  Scalar p = Scalar::one(ratio.mode());
  Scalar iu = Scalar::i_unit(ratio.mode());
  for (int k = 0; k < 4; ++k) {
    if (ratio.equals(p)) return k;
    p = p * iu;
  }
  return std::nullopt;
}

}  // namespace

Signature AffineWitness::reconstruct(int arity, Mode m) const {
  Signature f = Signature::zero_of(arity, m);
  if (lambda.is_zero()) return f;
  int r = static_cast<int>(basis.size());
  Scalar iu = Scalar::i_unit(m);
  for (std::uint32_t t = 0; t < (1u << r); ++t) {
    std::uint32_t x = base;
    int expo = 0;
    for (int k = 0; k < r; ++k) {
      if (!(t & (1u << k))) continue;
      x ^= basis[k];
      expo += linear[k];
      for (int l = 0; l < k; ++l)
        if (t & (1u << l)) expo += quad[k][l];
    }
    f.at(x) = lambda * iu.pow(expo & 3);
  }
  return f;
}

std::optional<AffineWitness> is_affine(const Signature& f) {
  Mode m = f.mode();
  AffineWitness w;
  w.lambda = Scalar::zero(m);
  if (f.is_trivial()) return w;  // zero signature counts as affine

  std::vector<std::uint32_t> support;
  for (std::uint32_t i = 0; i < f.size(); ++i)
    if (!f.at(i).is_zero()) support.push_back(i);
  w.base = support.front();
  w.lambda = f.at(w.base);

  // GF(2) echelon basis of the direction space
  std::vector<std::uint32_t> echelon;  // descending leading bit
  for (std::uint32_t s : support) {
    std::uint32_t v = s ^ w.base;
    for (std::uint32_t b : echelon) v = std::min(v, v ^ b);
    if (v) {
      echelon.push_back(v);
      std::sort(echelon.rbegin(), echelon.rend());
    }
  }
  int r = static_cast<int>(echelon.size());
  if (support.size() != (std::size_t{1} << r)) return std::nullopt;
  w.basis = echelon;

  // exponents on the parameterized support
  std::vector<int> eps(std::size_t{1} << r, 0);
  for (std::uint32_t t = 0; t < (1u << r); ++t) {
    std::uint32_t x = w.base;
    for (int k = 0; k < r; ++k)
      if (t & (1u << k)) x ^= echelon[k];
    if (f.at(x).is_zero()) return std::nullopt;  // support not the full coset
    auto e = i_power_exponent(f.at(x) / w.lambda);
    if (!e) return std::nullopt;
    eps[t] = *e;
  }

  // multilinear coefficients over Z4 via a Moebius pass
  std::vector<int> c(eps);
  for (int k = 0; k < r; ++k)
    for (std::uint32_t t = 0; t < (1u << r); ++t)
      if (t & (1u << k)) c[t] = ((c[t] - c[t ^ (1u << k)]) % 4 + 4) % 4;

  w.linear.assign(r, 0);
  w.quad.assign(r, {});
  for (int k = 0; k < r; ++k) w.quad[k].assign(k, 0);
  for (std::uint32_t t = 1; t < (1u << r); ++t) {
    int deg = std::popcount(t);
    if (deg >= 3) {
      if (c[t] != 0) return std::nullopt;
    } else if (deg == 2) {
      if (c[t] & 1) return std::nullopt;  // cross terms must be even
      int k = std::bit_width(t) - 1;
      int l = std::countr_zero(t);
      w.quad[k][l] = c[t];
    } else {
      w.linear[std::countr_zero(t)] = c[t];
    }
  }
  return w;
}

/* ---- product type ---------------------------------------------------- */

namespace {

/* Support confined to one pair of complementary assignments. */
bool is_e_signature(const Signature& f) {
  std::uint32_t full = f.size() - 1;
  std::optional<std::uint32_t> sigma;
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    if (f.at(i).is_zero()) continue;
    if (!sigma) {
      sigma = i;
    } else if (i != (*sigma ^ full)) {
      return false;
    }
  }
  return true;
}

struct ProductSearch {
  std::map<std::uint64_t, bool> infeasible;  // negative cache, keyed by global var mask

  std::uint64_t mask_of(const std::vector<int>& vars) const {
    std::uint64_t m = 0;
    for (int v : vars) m |= std::uint64_t{1} << v;
    return m;
  }

  bool run(const Signature& g, const std::vector<int>& vars,
           std::vector<ProductBlock>* out) {
    std::uint64_t key = mask_of(vars);
    auto it = infeasible.find(key);
    if (it != infeasible.end()) return false;
    if (is_e_signature(g)) {
      if (out) out->push_back({vars, g});
      return true;
    }
    int n = g.arity();
    // proper bipartitions; fix variable 1 on the left half
    for (std::uint32_t pick = 0; pick < (1u << (n - 1)); ++pick) {
      std::vector<int> left_pos{1}, right_pos;
      for (int v = 2; v <= n; ++v)
        if (pick & (1u << (v - 2)))
          left_pos.push_back(v);
        else
          right_pos.push_back(v);
      if (right_pos.empty()) continue;
      auto split = split_rank1(g, left_pos, right_pos);
      if (!split) continue;
      std::vector<int> left_vars, right_vars;
      for (int p : left_pos) left_vars.push_back(vars[p - 1]);
      for (int p : right_pos) right_vars.push_back(vars[p - 1]);
      std::vector<ProductBlock> tmp;
      if (run(split->first, left_vars, out ? &tmp : nullptr) &&
          run(split->second, right_vars, out ? &tmp : nullptr)) {
        if (out) out->insert(out->end(), tmp.begin(), tmp.end());
        return true;
      }
    }
    infeasible[key] = true;
    return false;
  }

  /* Try to write g = a(left) * b(right); exact factor extraction. */
  std::optional<std::pair<Signature, Signature>> split_rank1(
      const Signature& g, const std::vector<int>& left_pos,
      const std::vector<int>& right_pos) {
    int nl = static_cast<int>(left_pos.size());
    int nr = static_cast<int>(right_pos.size());
    int n = g.arity();
    auto compose = [&](std::uint32_t u, std::uint32_t v) {
      std::uint32_t idx = 0;
      for (int j = 0; j < nl; ++j)
        idx = g.set_bit(idx, left_pos[j], static_cast<int>((u >> (nl - 1 - j)) & 1u));
      for (int j = 0; j < nr; ++j)
        idx = g.set_bit(idx, right_pos[j], static_cast<int>((v >> (nr - 1 - j)) & 1u));
      return idx;
    };
    (void)n;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> pivot;
    for (std::uint32_t u = 0; u < (1u << nl) && !pivot; ++u)
      for (std::uint32_t v = 0; v < (1u << nr); ++v)
        if (!g.at(compose(u, v)).is_zero()) {
          pivot = {u, v};
          break;
        }
    Mode m = g.mode();
    if (!pivot) {  // zero splits as zero x zero... keep left zero, right unit-like
      Signature a = Signature::zero_of(nl, m);
      Signature b = Signature::zero_of(nr, m);
      return std::make_pair(a, b);
    }
    auto [u0, v0] = *pivot;
    Scalar denom = g.at(compose(u0, v0));
    std::vector<Scalar> at(std::size_t{1} << nl, Scalar::zero(m));
    std::vector<Scalar> bt(std::size_t{1} << nr, Scalar::zero(m));
    for (std::uint32_t u = 0; u < (1u << nl); ++u) at[u] = g.at(compose(u, v0));
    for (std::uint32_t v = 0; v < (1u << nr); ++v) bt[v] = g.at(compose(u0, v)) / denom;
    Signature a(nl, m, std::move(at));
    Signature b(nr, m, std::move(bt));
    for (std::uint32_t u = 0; u < (1u << nl); ++u)
      for (std::uint32_t v = 0; v < (1u << nr); ++v)
        if (!g.at(compose(u, v)).equals(a.at(u) * b.at(v))) return std::nullopt;
    return std::make_pair(a, b);
  }
};

}  // namespace

Signature ProductWitness::reconstruct(int arity, Mode m) const {
  Signature f = Signature::zero_of(arity, m);
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    Scalar v = Scalar::one(m);
    for (const ProductBlock& blk : blocks) {
      std::uint32_t sub = 0;
      int bn = blk.factor.arity();
      for (int j = 0; j < bn; ++j)
        sub = blk.factor.set_bit(sub, j + 1, f.bit(i, blk.vars[j]));
      v *= blk.factor.at(sub);
    }
    f.at(i) = v;
  }
  return f;
}

std::optional<ProductWitness> is_product(const Signature& f) {
  if (f.arity() == 0) {
    ProductWitness w;
    w.blocks.push_back({{}, f});
    return w;
  }
  std::vector<int> vars(f.arity());
  for (int v = 1; v <= f.arity(); ++v) vars[v - 1] = v;
  ProductSearch search;
  ProductWitness w;
  if (!search.run(f, vars, &w.blocks)) return std::nullopt;
  std::sort(w.blocks.begin(), w.blocks.end(),
            [](const ProductBlock& a, const ProductBlock& b) { return a.vars < b.vars; });
  return w;
}

/* ---- permutable matchgates ------------------------------------------ */

PermutableReport is_permutable_matchgate(const Signature& f) {
  PermutableReport rep;
  if (f.is_trivial()) {
    rep.yes = true;
    return rep;
  }
  MgiReport base = mgi_check(f);
  if (!base.pass) {
    rep.identity_failure = base.witness;
    return rep;
  }
  Normalization norm = normalize(f);
  int n = f.arity();
  if (n < 4) {
    rep.yes = true;
    return rep;
  }
  const Signature& F = norm.normalized;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d) {
          Scalar p1 = pair_entry(F, a, b) * pair_entry(F, c, d);
          Scalar p2 = pair_entry(F, a, c) * pair_entry(F, b, d);
          Scalar p3 = pair_entry(F, a, d) * pair_entry(F, b, c);
          if (!p1.equals(p2) || !p2.equals(p3)) {
            rep.quad_failure = std::array<int, 4>{a, b, c, d};
            return rep;
          }
        }
  rep.yes = true;
  return rep;
}

namespace {

void require_normalized_permutable(const Signature& f) {
  if (f.arity() < 1 || !f.at(0).is_one())
    throw PreconditionViolated("expected a normalized signature");
  if (!is_permutable_matchgate(f).yes)
    throw PreconditionViolated("expected a permutable matchgate signature");
}

std::optional<std::array<int, 3>> first_triangle(const Signature& f) {
  int n = f.arity();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      if (pair_entry(f, a, b).is_zero()) continue;
      for (int c = b + 1; c <= n; ++c)
        if (!pair_entry(f, a, c).is_zero() && !pair_entry(f, b, c).is_zero())
          return std::array<int, 3>{a, b, c};
    }
  return std::nullopt;
}

bool all_pairs_zero(const Signature& f) {
  int n = f.arity();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (!pair_entry(f, a, b).is_zero()) return false;
  return true;
}

std::optional<int> find_hub(const Signature& f) {
  int n = f.arity();
  std::vector<std::pair<int, int>> nonzero;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (!pair_entry(f, a, b).is_zero()) nonzero.emplace_back(a, b);
  if (nonzero.empty()) return std::nullopt;
  for (int x = 1; x <= n; ++x) {
    bool ok = true;
    for (auto [a, b] : nonzero)
      if (a != x && b != x) {
        ok = false;
        break;
      }
    if (ok) return x;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Scalar> parity_witness(const Signature& f) {
  int n = f.arity();
  auto tri = first_triangle(f);
  if (!tri) throw PreconditionViolated("no nonzero pair triangle: not parity type");
  auto [a, b, c] = *tri;
  Scalar ratio = pair_entry(f, a, b) * pair_entry(f, a, c) / pair_entry(f, b, c);
  auto root = sqrt_in_field(ratio);
  if (!root)
    throw SqrtNotInField("G(" + std::to_string(a) + ")^2 = " + ratio.str() +
                         " has no square root in Q(w)");
  std::vector<Scalar> g(static_cast<std::size_t>(n) + 1, Scalar::zero(f.mode()));
  g[a] = *root;
  for (int d = 1; d <= n; ++d) {
    if (d == a) continue;
    g[d] = pair_entry(f, std::min(a, d), std::max(a, d)) / g[a];
  }
  for (int s = 1; s <= n; ++s)
    for (int t = s + 1; t <= n; ++t)
      if (!pair_entry(f, s, t).equals(g[s] * g[t]))
        throw PreconditionViolated("pair values are not of product form G(a)G(b)");
  return g;
}

MatchingHub matching_hub(const Signature& f) {
  auto hub = find_hub(f);
  if (!hub) throw NoHub("no variable meets every nonzero pair");
  MatchingHub out;
  out.hub = *hub;
  int n = f.arity();
  out.weights.assign(static_cast<std::size_t>(n) + 1, Scalar::zero(f.mode()));
  out.weights[*hub] = Scalar::one(f.mode());
  for (int a = 1; a <= n; ++a) {
    if (a == *hub) continue;
    out.weights[a] = pair_entry(f, std::min(a, *hub), std::max(a, *hub));
  }
  // every higher even level must vanish
  std::vector<int> set;
  std::function<void(int)> rec = [&](int next) {
    if (set.size() >= 4 && set.size() % 2 == 0) {
      if (!at_set(f, set).is_zero())
        throw NoHub("nonzero level F(" + std::to_string(set.size()) +
                    " indices) in matching type");
    }
    for (int v = next; v <= n; ++v) {
      set.push_back(v);
      rec(v + 1);
      set.pop_back();
    }
  };
  rec(1);
  return out;
}

MpType classify_mp_type(const Signature& f) {
  require_normalized_permutable(f);
  MpType out;
  if (all_pairs_zero(f)) {
    out.kind = MpType::Kind::Pinning;
    return out;
  }
  if (first_triangle(f)) {
    out.kind = MpType::Kind::Parity;
    out.weights = parity_witness(f);
    return out;
  }
  if (find_hub(f)) {
    MatchingHub hub = matching_hub(f);
    out.kind = MpType::Kind::Matching;
    out.hub = hub.hub;
    out.weights = hub.weights;
    return out;
  }
  if (f.arity() < 4) {
    out.kind = MpType::Kind::SmallArity;
    return out;
  }
  throw NoHub("permutable matchgate fits no weight-2 type");
}

bool hat_membership(const Signature& f, MatchgateClass cls) {
  Signature h = hat(f);
  if (cls == MatchgateClass::Matchgate) return is_matchgate(h).yes;
  return is_permutable_matchgate(h).yes;
}

/* ---- the five symmetric shapes --------------------------------------- */

namespace {

bool only_index_nonzero(const std::vector<Scalar>& v, std::size_t idx) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j == idx) {
      if (v[j].is_zero()) return false;
    } else if (!v[j].is_zero()) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::optional<SymmetricMaForm> m_minus_a_form(const SymmetricSignature& g) {
  const auto& v = g.values;
  int k = g.arity();
  SymmetricMaForm out;
  out.k = k;
  if (k >= 3 && only_index_nonzero(v, 1)) {
    out.form = 1;
    out.scale = v[1];
    return out;
  }
  if (k >= 3 && only_index_nonzero(v, static_cast<std::size_t>(k) - 1)) {
    out.form = 2;
    out.scale = v[k - 1];
    return out;
  }
  if (k == 2 && !v[0].is_zero() && v[1].is_zero() && !v[2].is_zero()) {
    Scalar r = v[2] / v[0];
    if (fourth_power_class(r) != FourthPower::One) {
      out.form = 3;
      out.scale = v[0];
      out.ratio = r;
      return out;
    }
  }
  auto geometric = [&](int offset) -> std::optional<Scalar> {
    // v[offset + 2j] = scale * r^j, other entries zero
    if (k < 3 || v[offset].is_zero()) return std::nullopt;
    if (offset + 2 > k) return std::nullopt;
    Scalar r = v[offset + 2] / v[offset];
    if (r.is_zero() || (r * r).equals(Scalar::one(g.mode))) return std::nullopt;
    Scalar expect = v[offset];
    for (int j = 0; j <= k; ++j) {
      if ((j - offset) % 2 == 0 && j >= offset) {
        if (!v[j].equals(expect)) return std::nullopt;
        expect = expect * r;
      } else if (!v[j].is_zero()) {
        return std::nullopt;
      }
    }
    return r;
  };
  if (auto r = geometric(0)) {
    out.form = 4;
    out.scale = v[0];
    out.ratio = r;
    return out;
  }
  if (auto r = geometric(1)) {
    out.form = 5;
    out.scale = v[1];
    out.ratio = r;
    return out;
  }
  return std::nullopt;
}

ClassVerdict classify_signature(const Signature& f) {
  ClassVerdict v;
  v.affine = is_affine(f);
  v.in_affine = v.affine.has_value();
  v.product = is_product(f);
  v.in_product = v.product.has_value();
  MatchgateReport mg = is_matchgate(f);
  v.in_matchgate = mg.yes;
  v.matchgate_failure = mg.witness;
  PermutableReport pm = is_permutable_matchgate(f);
  v.in_permutable = pm.yes;
  if (pm.yes && !f.is_trivial()) {
    Normalization norm = normalize(f);
    try {
      v.mp_type = classify_mp_type(norm.normalized);
    } catch (const SqrtNotInField&) {
      // parity weights outside the exact field; type stays unreported
    }
  }
  v.in_matchgate_hat = hat_membership(f, MatchgateClass::Matchgate);
  v.in_permutable_hat = hat_membership(f, MatchgateClass::Permutable);
  return v;
}

}  // namespace matchkit
