#include "matchkit/matchgate.hpp"

#include <algorithm>
#include <bit>
#include <complex>

namespace matchkit {

namespace {

/* Small exact cyclotomic value on int64 coefficients; fast path for the
 * identity scans. Inputs are admitted only when every table entry is an
 * integer combination with |coefficient| <= 2^20, which keeps every sum
 * of n products far below overflow. */
struct C4 {
  std::int64_t a = 0, b = 0, c = 0, d = 0;
  bool is_zero() const { return !(a | b | c | d); }
};

C4 mul(const C4& x, const C4& y) {
  C4 r;
  r.a = x.a * y.a - x.b * y.d - x.c * y.c - x.d * y.b;
  r.b = x.a * y.b + x.b * y.a - x.c * y.d - x.d * y.c;
  r.c = x.a * y.c + x.b * y.b + x.c * y.a - x.d * y.d;
  r.d = x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a;
  return r;
}

void add_to(C4& acc, const C4& x, bool negate) {
  if (negate) {
    acc.a -= x.a;
    acc.b -= x.b;
    acc.c -= x.c;
    acc.d -= x.d;
  } else {
    acc.a += x.a;
    acc.b += x.b;
    acc.c += x.c;
    acc.d += x.d;
  }
}

std::optional<std::vector<C4>> small_table(const Signature& f) {
  if (f.mode() != Mode::Exact) return std::nullopt;
  constexpr std::int64_t kLimit = std::int64_t{1} << 20;
  std::vector<C4> out(f.size());
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    C4 v;
    std::int64_t* slot[4] = {&v.a, &v.b, &v.c, &v.d};
    for (int k = 0; k < 4; ++k) {
      const mpq_class& q = f.at(i).coeff(k);
      if (q.get_den() != 1) return std::nullopt;
      if (!q.get_num().fits_slong_p()) return std::nullopt;
      long n = q.get_num().get_si();
      if (n > kLimit || n < -kLimit) return std::nullopt;
      *slot[k] = n;
    }
    out[i] = v;
  }
  return out;
}

/* One identity evaluated exactly (Scalar arithmetic). */
Scalar mgi_sum(const Signature& f, std::uint32_t beta, std::uint32_t gamma) {
  Scalar sum = Scalar::zero(f.mode());
  std::uint32_t diff = beta ^ gamma;
  int j = 0;
  int n = f.arity();
  for (int v = 1; v <= n; ++v) {
    std::uint32_t e = 1u << (n - v);
    if (!(diff & e)) continue;
    ++j;
    Scalar term = f.at(beta ^ e) * f.at(gamma ^ e);
    if (j & 1)
      sum -= term;
    else
      sum += term;
  }
  return sum;
}

template <typename Value, typename IsZero, typename Mul, typename AddTo>
std::optional<std::pair<std::uint32_t, std::uint32_t>> mgi_scan(
    int n, const std::vector<Value>& tab, IsZero is_zero, Mul mul_fn, AddTo add_fn) {
  const std::uint32_t size = 1u << n;
  for (std::uint32_t beta = 0; beta < size; ++beta) {
    for (std::uint32_t gamma = 0; gamma <= beta; ++gamma) {
      std::uint32_t diff = beta ^ gamma;
      if (!diff) continue;
      Value sum{};
      bool neg = true;  // j = 1 term carries the minus sign
      for (std::uint32_t rest = diff; rest;) {
        int lead = std::bit_width(rest) - 1;
        std::uint32_t e = 1u << lead;
        rest ^= e;
        if (!is_zero(tab[beta ^ e]) && !is_zero(tab[gamma ^ e]))
          add_fn(sum, mul_fn(tab[beta ^ e], tab[gamma ^ e]), neg);
        neg = !neg;
      }
      if (!is_zero(sum)) return std::make_pair(beta, gamma);
    }
  }
  return std::nullopt;
}

}  // namespace

MgiReport mgi_check(const Signature& f) {
  if (f.arity() < 1) throw ArityMismatch("identity scan needs arity >= 1");
  std::optional<std::pair<std::uint32_t, std::uint32_t>> hit;
  if (auto fast = small_table(f)) {
    hit = mgi_scan(
        f.arity(), *fast, [](const C4& v) { return v.is_zero(); },
        [](const C4& x, const C4& y) { return mul(x, y); },
        [](C4& acc, const C4& x, bool neg) { add_to(acc, x, neg); });
  } else if (f.mode() == Mode::Float) {
    std::vector<std::complex<double>> tab(f.size());
    for (std::uint32_t i = 0; i < f.size(); ++i) tab[i] = f.at(i).to_complex();
    double eps = float_eps();
    hit = mgi_scan(
        f.arity(), tab, [eps](const std::complex<double>& v) { return std::abs(v) <= eps; },
        [](const std::complex<double>& x, const std::complex<double>& y) { return x * y; },
        [](std::complex<double>& acc, const std::complex<double>& x, bool neg) {
          acc += neg ? -x : x;
        });
  } else {
    hit = mgi_scan(
        f.arity(), f.table(), [](const Scalar& v) { return v.is_zero(); },
        [](const Scalar& x, const Scalar& y) { return x * y; },
        [](Scalar& acc, const Scalar& x, bool neg) {
          if (neg)
            acc -= x;
          else
            acc += x;
        });
  }
  MgiReport rep;
  if (!hit) {
    rep.pass = true;
    return rep;
  }
  rep.pass = false;
  rep.witness = MgiWitness{hit->first, hit->second, mgi_sum(f, hit->first, hit->second)};
  return rep;
}

Normalization normalize(const Signature& g) {
  Normalization out;
  out.normalized = g;
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    if (g.at(i).is_zero()) continue;
    out.cert.shift = i;
    out.cert.scale = g.at(i);
    std::vector<Scalar> tab(g.size(), Scalar::zero(g.mode()));
    for (std::uint32_t a = 0; a < g.size(); ++a) tab[a] = g.at(a ^ i) / g.at(i);
    out.normalized = Signature(g.arity(), g.mode(), std::move(tab));
    return out;
  }
  out.trivial = true;
  return out;
}

Signature denormalize(const Signature& f, const NormalizationCertificate& cert) {
  if (cert.scale.is_zero()) throw PreconditionViolated("certificate scale is zero");
  std::vector<Scalar> tab(f.size(), Scalar::zero(f.mode()));
  for (std::uint32_t a = 0; a < f.size(); ++a) tab[a] = f.at(a ^ cert.shift) * cert.scale;
  return Signature(f.arity(), f.mode(), std::move(tab));
}

std::uint32_t index_of_set(int arity, std::span<const int> vars) {
  std::uint32_t idx = 0;
  for (int v : vars) {
    if (v < 1 || v > arity) throw IndexOutOfRange("index " + std::to_string(v));
    std::uint32_t e = 1u << (arity - v);
    if (idx & e) throw DuplicateIndex("index " + std::to_string(v) + " repeated");
    idx |= e;
  }
  return idx;
}

const Scalar& at_set(const Signature& f, std::span<const int> vars) {
  return f.at(index_of_set(f.arity(), vars));
}

const Scalar& pair_entry(const Signature& f, int a, int b) {
  int v[2] = {a, b};
  return at_set(f, v);
}

namespace {

void pairings_rec(std::vector<int>& left, Pairing& cur,
                  const std::function<void(const Pairing&)>& yield) {
  if (left.empty()) {
    yield(cur);
    return;
  }
  int first = left.front();
  for (std::size_t k = 1; k < left.size(); ++k) {
    int partner = left[k];
    std::vector<int> rest;
    rest.reserve(left.size() - 2);
    for (std::size_t t = 1; t < left.size(); ++t)
      if (t != k) rest.push_back(left[t]);
    cur.pairs.emplace_back(first, partner);
    pairings_rec(rest, cur, yield);
    cur.pairs.pop_back();
  }
}

}  // namespace

void enumerate_pairings(std::span<const int> set,
                        const std::function<void(const Pairing&)>& yield) {
  if (set.size() % 2 != 0) throw OddSize("pairings need an even index set");
  std::vector<int> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  Pairing cur;
  pairings_rec(sorted, cur, yield);
}

std::vector<Pairing> all_pairings(std::span<const int> set) {
  std::vector<Pairing> out;
  enumerate_pairings(set, [&](const Pairing& p) { out.push_back(p); });
  return out;
}

int crossing_count(const Pairing& m) {
  int count = 0;
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < m.pairs.size(); ++j) {
      int a = std::min(m.pairs[i].first, m.pairs[i].second);
      int c = std::max(m.pairs[i].first, m.pairs[i].second);
      int b = std::min(m.pairs[j].first, m.pairs[j].second);
      int d = std::max(m.pairs[j].first, m.pairs[j].second);
      if (b < a) {
        std::swap(a, b);
        std::swap(c, d);
      }
      if (a < b && b < c && c < d) ++count;
    }
  }
  return count;
}

int cross_parity(std::span<const int> s1, std::span<const int> s2) {
  if (s1.size() % 2 || s2.size() % 2) throw OddSize("both sides must have even size");
  std::vector<int> merged(s1.begin(), s1.end());
  merged.insert(merged.end(), s2.begin(), s2.end());
  std::sort(merged.begin(), merged.end());
  for (std::size_t i = 1; i < merged.size(); ++i)
    if (merged[i] == merged[i - 1]) throw NotDisjoint("index sets overlap");
  // rank-relabel: q + sum of the ranks of s1's elements, mod 2
  long q = static_cast<long>(s1.size()) / 2;
  long acc = q;
  for (int v : s1) {
    auto it = std::lower_bound(merged.begin(), merged.end(), v);
    acc += static_cast<long>(it - merged.begin()) + 1;
  }
  return static_cast<int>(acc & 1);
}

namespace {

Scalar pfaffian_enum(const Signature& f, std::span<const int> b_set) {
  Scalar acc = Scalar::zero(f.mode());
  enumerate_pairings(b_set, [&](const Pairing& m) {
    Scalar prod = Scalar::one(f.mode());
    for (auto [a, b] : m.pairs) prod *= pair_entry(f, a, b);
    if (crossing_count(m) & 1)
      acc -= prod;
    else
      acc += prod;
  });
  return acc;
}

}  // namespace

Scalar pfaffian_expand(const Signature& f, std::span<const int> b_set) {
  if (b_set.size() % 2) throw OddSize("pairing expansion needs an even set");
  if (b_set.empty()) return Scalar::one(f.mode());
  if (b_set.size() > 12) {
    if (f.mode() == Mode::Exact)
      throw PairingSetTooLarge("exact pairing enumeration capped at |B| = 12");
    return pfaffian_recurrence(f, b_set);
  }
  std::vector<int> sorted(b_set.begin(), b_set.end());
  std::sort(sorted.begin(), sorted.end());
  return pfaffian_enum(f, sorted);
}

Scalar pfaffian_recurrence(const Signature& f, std::span<const int> b_set) {
  if (b_set.size() % 2) throw OddSize("pairing expansion needs an even set");
  std::vector<int> sorted(b_set.begin(), b_set.end());
  std::sort(sorted.begin(), sorted.end());
  // expand on the smallest index: sum_j (-1)^j F(b1 bj) Pf(B - {b1, bj})
  std::function<Scalar(const std::vector<int>&)> rec =
      [&](const std::vector<int>& set) -> Scalar {
    if (set.empty()) return Scalar::one(f.mode());
    if (set.size() == 2) return pair_entry(f, set[0], set[1]);
    Scalar acc = Scalar::zero(f.mode());
    for (std::size_t j = 1; j < set.size(); ++j) {
      const Scalar& head = pair_entry(f, set[0], set[j]);
      if (head.is_zero()) continue;
      std::vector<int> rest;
      rest.reserve(set.size() - 2);
      for (std::size_t t = 1; t < set.size(); ++t)
        if (t != j) rest.push_back(set[t]);
      Scalar term = head * rec(rest);
      if (j & 1)
        acc += term;  // (-1)^(j+1) with 1-based second index j+1 even
      else
        acc -= term;
    }
    return acc;
  };
  return rec(sorted);
}

MatchgateReport is_matchgate(const Signature& f) {
  MgiReport rep = mgi_check(f);
  MatchgateReport out;
  out.yes = rep.pass;
  out.witness = rep.witness;
  return out;
}

namespace {

bool even_parity_support(const Signature& f) {
  for (std::uint32_t i = 0; i < f.size(); ++i)
    if ((std::popcount(i) & 1) && !f.at(i).is_zero()) return false;
  return true;
}

void subsets_of_even_size(int n, int min_size, const std::function<void(std::vector<int>&)>& use) {
  std::vector<int> set;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(set.size()) >= min_size && set.size() % 2 == 0) use(set);
    for (int v = next; v <= n; ++v) {
      set.push_back(v);
      rec(v + 1);
      set.pop_back();
    }
  };
  rec(1);
}

}  // namespace

bool matchgate_by_pfaffian(const Signature& f) {
  if (f.arity() < 1) throw ArityMismatch("needs arity >= 1");
  if (!f.at(0).is_one())
    throw PreconditionViolated("pairing characterization needs a normalized signature");
  if (!even_parity_support(f))
    throw PreconditionViolated("pairing characterization needs even-parity support");
  bool ok = true;
  subsets_of_even_size(f.arity(), 4, [&](std::vector<int>& b_set) {
    if (!ok) return;
    if (!at_set(f, b_set).equals(pfaffian_expand(f, b_set))) ok = false;
  });
  return ok;
}

Signature generate_from_pairs(int arity,
                              const std::map<std::pair<int, int>, Scalar>& pair_values,
                              Mode m) {
  if (arity < 2) throw ArityMismatch("pair generation needs arity >= 2");
  auto pair_of = [&](int a, int b) -> Scalar {
    auto it = pair_values.find({a, b});
    if (it == pair_values.end()) return Scalar::zero(m);
    if (it->second.mode() != m) throw MixedModes("pair value mode mismatch");
    return it->second;
  };
  // subset values by the head-expansion recurrence, memoized on bitmasks
  std::vector<Scalar> memo(std::size_t{1} << arity, Scalar::zero(m));
  std::vector<bool> known(std::size_t{1} << arity, false);
  std::function<Scalar(std::uint32_t)> value = [&](std::uint32_t mask) -> Scalar {
    if (known[mask]) return memo[mask];
    std::vector<int> vars;
    for (int v = 1; v <= arity; ++v)
      if (mask & (1u << (arity - v))) vars.push_back(v);
    Scalar r = Scalar::zero(m);
    if (vars.empty()) {
      r = Scalar::one(m);
    } else if (vars.size() == 2) {
      r = pair_of(vars[0], vars[1]);
    } else {
      for (std::size_t j = 1; j < vars.size(); ++j) {
        Scalar head = pair_of(vars[0], vars[j]);
        if (head.is_zero()) continue;
        std::uint32_t rest = mask & ~(1u << (arity - vars[0])) & ~(1u << (arity - vars[j]));
        Scalar term = head * value(rest);
        if (j & 1)
          r += term;
        else
          r -= term;
      }
    }
    known[mask] = true;
    memo[mask] = r;
    return r;
  };
  std::vector<Scalar> tab(std::size_t{1} << arity, Scalar::zero(m));
  for (std::uint32_t i = 0; i < tab.size(); ++i) {
    if (std::popcount(i) & 1) continue;
    tab[i] = value(i);
  }
  return Signature(arity, m, std::move(tab));
}

bool permutation_preserves_matchgate(const Signature& f, std::span<const int> perm) {
  MgiReport base = mgi_check(f);
  if (!base.pass) throw NotAMatchgate("input fails the matchgate identities");
  if (static_cast<int>(perm.size()) != f.arity()) throw NotAPermutation("length mismatch");
  Normalization norm = normalize(f);
  if (norm.trivial) return true;
  int n = f.arity();
  if (n < 4) return true;
  const Signature& F = norm.normalized;
  if (!even_parity_support(F)) {
    // does not arise for exact matchgates; decide directly
    return mgi_check(permute(f, perm)).pass;
  }
  auto img = [&](std::initializer_list<int> vars) {
    std::vector<int> out;
    for (int v : vars) out.push_back(perm[v - 1]);
    return out;
  };
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d) {
          auto q = img({a, b, c, d});
          Scalar lhs = at_set(F, q);
          auto pv = [&](int x, int y) { return pair_entry(F, perm[x - 1], perm[y - 1]); };
          Scalar rhs = pv(a, b) * pv(c, d) - pv(a, c) * pv(b, d) + pv(a, d) * pv(b, c);
          if (!lhs.equals(rhs)) return false;
        }
  return true;
}

}  // namespace matchkit
