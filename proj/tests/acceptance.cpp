// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expected values marked "derived" below were computed with the
// independent oracles in this file (brute-force scans, direct summation,
// exhaustive permutation checks) and frozen.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "matchkit/decide.hpp"
#include "matchkit/gadget.hpp"
#include "matchkit/io.hpp"

using namespace matchkit;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail, double seconds) {
  std::printf("%s criterion %2d: %s (%.2fs)\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

Scalar S(const std::string& t) { return parse_scalar(t, Mode::Exact); }

Signature sym_sig(std::vector<std::string> profile) {
  SymmetricSignature s;
  for (const auto& e : profile) s.values.push_back(S(e));
  return s.expand();
}

std::vector<Scalar> small_pool() { return {S("0"), S("1"), S("-1"), S("i")}; }

Scalar pick(std::mt19937& rng, const std::vector<Scalar>& pool) {
  std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
  return pool[d(rng)];
}

Signature pair_gate(int arity, const std::function<Scalar(int, int)>& value) {
  std::map<std::pair<int, int>, Scalar> pairs;
  for (int a = 1; a <= arity; ++a)
    for (int b = a + 1; b <= arity; ++b) pairs[{a, b}] = value(a, b);
  return generate_from_pairs(arity, pairs);
}

/* 1. Signatures of random planar (outerplanar) weighted graphs satisfy the
 * matchgate identities. */
void criterion_1() {
  Timer timer;
  std::mt19937 rng(2024);
  std::vector<Scalar> weights{S("1"), S("2"), S("i")};
  int pass = 0, total = 50;
  for (int t = 0; t < total; ++t) {
    std::uniform_int_distribution<int> nv(2, 8);
    int n = nv(rng);
    WeightedGraph g;
    g.vertex_count = n;
    std::uniform_int_distribution<int> coin(0, 1);
    for (int v = 0; v < n; ++v)
      if (n > 2 ? coin(rng) : true) g.edges.push_back({v, (v + 1) % n, pick(rng, weights)});
    std::vector<std::pair<int, int>> chords;
    std::uniform_int_distribution<int> pv(0, n - 1);
    for (int tries = 0; tries < 8; ++tries) {
      int a = pv(rng), b = pv(rng);
      if (a > b) std::swap(a, b);
      if (b - a <= 1 || (a == 0 && b == n - 1)) continue;
      bool crossing = false;
      for (auto [c, d] : chords)
        if ((c < a && a < d && d < b) || (a < c && c < b && b < d)) crossing = true;
      if (!crossing) {
        chords.push_back({a, b});
        g.edges.push_back({a, b, pick(rng, weights)});
      }
    }
    std::uniform_int_distribution<int> ne(1, std::min(4, n));
    int k = ne(rng);
    std::vector<int> verts(n);
    for (int v = 0; v < n; ++v) verts[v] = v;
    std::shuffle(verts.begin(), verts.end(), rng);
    std::vector<int> externals(verts.begin(), verts.begin() + k);
    std::sort(externals.begin(), externals.end());  // circle order
    Signature f = matchgate_signature_from_graph(g, externals);
    if (mgi_check(f).pass) ++pass;
  }
  double sec = timer.seconds();
  report(1, pass == total && sec < 10.0,
         "matchgate graphs vs identities, " + std::to_string(pass) + "/" +
             std::to_string(total),
         sec);
}

/* 2. Pairing-expansion characterization agrees with the full identity scan
 * on all arity-4 weight-2 assignments over {0,1,-1,i}, plus perturbed
 * non-members. */
void criterion_2() {
  Timer timer;
  std::vector<Scalar> pool = small_pool();
  long long total = 0, agree = 0;
  int vals[6];
  for (vals[0] = 0; vals[0] < 4; ++vals[0])
    for (vals[1] = 0; vals[1] < 4; ++vals[1])
      for (vals[2] = 0; vals[2] < 4; ++vals[2])
        for (vals[3] = 0; vals[3] < 4; ++vals[3])
          for (vals[4] = 0; vals[4] < 4; ++vals[4])
            for (vals[5] = 0; vals[5] < 4; ++vals[5]) {
              std::map<std::pair<int, int>, Scalar> pairs;
              int idx = 0;
              for (int a = 1; a <= 4; ++a)
                for (int b = a + 1; b <= 4; ++b) pairs[{a, b}] = pool[vals[idx++]];
              Signature f = generate_from_pairs(4, pairs);
              bool by_scan = is_matchgate(f).yes;
              bool by_pairs = matchgate_by_pfaffian(f);
              ++total;
              if (by_scan && by_pairs) ++agree;
              Signature bad = f;
              bad.at(bad.size() - 1) += S("1");
              ++total;
              if (!is_matchgate(bad).yes && !matchgate_by_pfaffian(bad)) ++agree;
            }
  double sec = timer.seconds();
  report(2, agree == total && sec < 60.0,
         "pairing expansion vs identity scan, " + std::to_string(agree) + "/" +
             std::to_string(total) + " agreements",
         sec);
}

/* 3 and 4 share the exhaustive arity-4 permutation scan.
 * 3: the quadruple identity decides each single permutation.
 * 4: the pair-product equalities decide all permutations at once. */
void criteria_3_4() {
  Timer timer;
  std::mt19937 rng(2025);
  std::vector<Scalar> pool = small_pool();
  long long checks3 = 0, good3 = 0, checks4 = 0, good4 = 0;

  std::vector<std::vector<int>> perms4;
  {
    std::vector<int> p{1, 2, 3, 4};
    do {
      perms4.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  int vals[6];
  for (vals[0] = 0; vals[0] < 4; ++vals[0])
    for (vals[1] = 0; vals[1] < 4; ++vals[1])
      for (vals[2] = 0; vals[2] < 4; ++vals[2])
        for (vals[3] = 0; vals[3] < 4; ++vals[3])
          for (vals[4] = 0; vals[4] < 4; ++vals[4])
            for (vals[5] = 0; vals[5] < 4; ++vals[5]) {
              std::map<std::pair<int, int>, Scalar> pairs;
              int idx = 0;
              for (int a = 1; a <= 4; ++a)
                for (int b = a + 1; b <= 4; ++b) pairs[{a, b}] = pool[vals[idx++]];
              Signature f = generate_from_pairs(4, pairs);
              bool all_perms = true;
              for (const auto& p : perms4) {
                bool quad = permutation_preserves_matchgate(f, p);
                bool scan = mgi_check(permute(f, p)).pass;
                ++checks3;
                if (quad == scan) ++good3;
                all_perms = all_perms && scan;
              }
              ++checks4;
              if (is_permutable_matchgate(f).yes == all_perms) ++good4;
            }
  // arity-5 exhaustive permutation scans on a sample (criterion 4)
  {
    std::vector<int> base{1, 2, 3, 4, 5};
    for (int t = 0; t < 6; ++t) {
      Signature f = pair_gate(5, [&](int, int) { return pick(rng, pool); });
      bool all_perms = true;
      std::vector<int> p = base;
      do {
        if (!mgi_check(permute(f, p)).pass) {
          all_perms = false;
          break;
        }
      } while (std::next_permutation(p.begin(), p.end()));
      ++checks4;
      if (is_permutable_matchgate(f).yes == all_perms) ++good4;
    }
  }
  double sec4 = timer.seconds();
  // criterion 3 spot checks at arity 5 and 6, including guaranteed passes
  for (int t = 0; t < 200; ++t) {
    int arity = t < 190 ? 5 : 6;
    Signature f = t % 4 == 0
                      ? pair_gate(arity, [&](int, int) { return pick(rng, pool); })
                      : pair_gate(arity, [&, t](int a, int b) {
                          // product-form pair values stay permutable
                          std::vector<Scalar> g{S("1"), S("i"), S("-1"), S("1"), S("i"), S("1")};
                          return g[(a + t) % 6] * g[(b + t) % 6];
                        });
    std::vector<int> p(arity);
    for (int i = 0; i < arity; ++i) p[i] = i + 1;
    std::shuffle(p.begin(), p.end(), rng);
    bool quad = permutation_preserves_matchgate(f, p);
    bool scan = mgi_check(permute(f, p)).pass;
    ++checks3;
    if (quad == scan) ++good3;
  }
  double sec3 = timer.seconds();
  report(3, checks3 == good3 && sec3 < 120.0,
         "quadruple test vs permuted scans, " + std::to_string(good3) + "/" +
             std::to_string(checks3),
         sec3);
  report(4, checks4 == good4,
         "pair-product equalities vs exhaustive permutations, " + std::to_string(good4) +
             "/" + std::to_string(checks4),
         sec4);
}

/* 5. Split crossing parity is constant over pairing choices and matches
 * the rank closed form, exhaustively up to ten indices. */
void criterion_5() {
  Timer timer;
  long long checks = 0, good = 0;
  for (int m = 2; m <= 10; m += 2) {
    std::vector<int> all(m);
    for (int i = 0; i < m; ++i) all[i] = 2 * i + 1;  // sparse labels exercise ranking
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      std::vector<int> s1, s2;
      for (int i = 0; i < m; ++i) ((mask >> i) & 1 ? s1 : s2).push_back(all[i]);
      if (s1.size() % 2 || s2.size() % 2) continue;
      int expect = cross_parity(s1, s2);
      for (const Pairing& m1 : all_pairings(s1))
        for (const Pairing& m2 : all_pairings(s2)) {
          Pairing merged;
          merged.pairs = m1.pairs;
          merged.pairs.insert(merged.pairs.end(), m2.pairs.begin(), m2.pairs.end());
          int crossings =
              crossing_count(merged) - crossing_count(m1) - crossing_count(m2);
          ++checks;
          if (crossings % 2 == expect) ++good;
        }
    }
  }
  double sec = timer.seconds();
  report(5, checks == good && sec < 30.0,
         "split crossing parity closed form, " + std::to_string(good) + "/" +
             std::to_string(checks),
         sec);
}

Signature shifted(const Signature& f, std::uint32_t shift, const Scalar& scale) {
  return denormalize(f, {shift, scale});
}

std::vector<Signature> permutable_corpus() {
  std::vector<Signature> corpus;
  auto parity = [&](std::vector<Scalar> g) {
    int n = static_cast<int>(g.size());
    return pair_gate(n, [&](int a, int b) { return g[a - 1] * g[b - 1]; });
  };
  auto matching = [&](std::vector<Scalar> w) {
    int n = static_cast<int>(w.size()) + 1;
    return pair_gate(n, [&](int a, int b) {
      return a == 1 ? w[b - 2] : Scalar::zero();
    });
  };
  // pinning
  corpus.push_back(Signature::point_mass(2, 1, Mode::Exact));
  corpus.push_back(Signature::point_mass(3, 5, Mode::Exact));
  corpus.push_back(shifted(Signature::point_mass(4, 0, Mode::Exact), 9, S("i")));
  corpus.push_back(Signature::point_mass(6, 33, Mode::Exact));
  // parity, various weights / shifts / scales
  corpus.push_back(parity({S("1"), S("1")}));
  corpus.push_back(shifted(parity({S("2"), S("i")}), 1, S("3")));
  corpus.push_back(parity({S("2"), S("2"), S("3")}));
  corpus.push_back(shifted(parity({S("w"), S("w"), S("w")}), 0b101, S("1")));
  corpus.push_back(parity({S("1"), S("i"), S("2"), S("1")}));
  corpus.push_back(shifted(parity({S("1"), S("1"), S("1"), S("1")}), 0b1111, S("i")));
  corpus.push_back(parity({S("2"), S("1"), S("1"), S("1"), S("1")}));
  corpus.push_back(shifted(parity({S("1"), S("1"), S("1"), S("1"), S("1"), S("1")}),
                           0b100000, S("2")));
  // parity with dropped variables: tensor with forced unaries
  corpus.push_back(tensor_product(parity({S("2"), S("3")}), Signature::unary(S("1"), S("0"))));
  corpus.push_back(tensor_product(parity({S("i"), S("1")}), Signature::unary(S("0"), S("2"))));
  // matching stars
  corpus.push_back(matching({S("1"), S("1")}));
  corpus.push_back(shifted(matching({S("2"), S("i")}), 0b100, S("1")));
  corpus.push_back(matching({S("w"), S("1"), S("2")}));
  corpus.push_back(shifted(matching({S("1"), S("1"), S("1"), S("1")}), 0b10000, S("i")));
  corpus.push_back(shifted(matching({S("2"), S("1"), S("1"), S("1"), S("1")}), 0, S("1")));
  corpus.push_back(shifted(matching({S("i"), S("2"), S("1")}), 0b0010, S("2")));
  // arity-2 generic diagonals and antidiagonals
  corpus.push_back(pair_gate(2, [&](int, int) { return S("w"); }));
  corpus.push_back(shifted(pair_gate(2, [&](int, int) { return S("2"); }), 0b01, S("1")));
  corpus.push_back(shifted(pair_gate(2, [&](int, int) { return S("i"); }), 0b11, S("5")));
  // unaries and tensors of unaries
  corpus.push_back(Signature::unary(S("1"), S("2")));
  corpus.push_back(tensor_product(Signature::unary(S("1"), S("0")),
                                  Signature::unary(S("0"), S("1"))));
  // a few random parity/matching draws to pad past thirty
  std::mt19937 rng(2026);
  std::vector<Scalar> pool{S("1"), S("2"), S("i"), S("w")};
  for (int t = 0; t < 6; ++t) {
    std::uniform_int_distribution<int> ar(3, 6);
    int n = ar(rng);
    std::vector<Scalar> g;
    for (int a = 0; a < n; ++a) g.push_back(pick(rng, pool));
    std::uniform_int_distribution<std::uint32_t> sh(0, (1u << n) - 1);
    corpus.push_back(shifted(parity(g), sh(rng), S("2")));
  }
  return corpus;
}

/* 6. Star gadgets reproduce every corpus member exactly, up to the
 * recorded scale. */
void criterion_6() {
  Timer timer;
  int total = 0, good = 0;
  for (const Signature& f : permutable_corpus()) {
    if (!is_permutable_matchgate(f).yes || f.is_trivial()) continue;
    ++total;
    StarGadget star = synthesize_star(f);
    Signature back = contract(star.to_gadget());
    bool ok = true;
    for (std::uint32_t i = 0; i < f.size(); ++i)
      ok = ok && back.at(i).equals(star.scale * f.at(i));
    ok = ok && check_rotation_planar(star.to_gadget());
    if (ok) ++good;
  }
  report(6, total >= 30 && good == total,
         "star round trips, " + std::to_string(good) + "/" + std::to_string(total),
         timer.seconds());
}

/* 7. Symmetric non-affine realizations across all construction branches. */
void criterion_7() {
  Timer timer;
  struct Entry {
    const char* label;
    Signature f;
  };
  auto parity = [&](std::vector<Scalar> g) {
    int n = static_cast<int>(g.size());
    return pair_gate(n, [&](int a, int b) { return g[a - 1] * g[b - 1]; });
  };
  auto matching = [&](std::vector<Scalar> w) {
    int n = static_cast<int>(w.size()) + 1;
    return pair_gate(n, [&](int a, int b) {
      return a == 1 ? w[b - 2] : Scalar::zero();
    });
  };
  std::vector<Entry> corpus;
  corpus.push_back({"parity case 1, pair", parity({S("2"), S("1"), S("1")})});
  corpus.push_back({"parity case 1, pair arity 4", parity({S("2"), S("i"), S("1"), S("1")})});
  corpus.push_back({"parity case 1, alignment", parity({S("w"), S("w"), S("w")})});
  corpus.push_back(
      {"parity case 1, alignment arity 4", parity({S("w"), S("-w"), S("w^3"), S("w")})});
  corpus.push_back({"parity case 2, rerouted",
                    shifted(parity({S("2"), S("1"), S("1")}), 0b100, S("1"))});
  corpus.push_back({"parity case 2, rerouted eighth roots",
                    shifted(parity({S("w"), S("w"), S("1")}), 0b010, S("1"))});
  corpus.push_back({"parity case 2 arity 2, mate",
                    shifted(pair_gate(2, [&](int, int) { return S("2"); }), 0b01, S("1"))});
  corpus.push_back({"parity case 2 arity 2, triple",
                    shifted(pair_gate(2, [&](int, int) { return S("w"); }), 0b01, S("1"))});
  corpus.push_back({"parity case 2 arity 2, forced unit",
                    tensor_product(shifted(pair_gate(2, [&](int, int) { return S("w"); }),
                                           0b01, S("1")),
                                   Signature::unary(S("0"), S("1")))});
  corpus.push_back({"matching l=0", shifted(matching({S("2"), S("1"), S("1")}), 0b1000, S("1"))});
  corpus.push_back({"matching l=1", matching({S("2"), S("1"), S("1")})});
  corpus.push_back({"matching l=2",
                    shifted(matching({S("2"), S("1"), S("1")}), 0b0100, S("1"))});
  corpus.push_back({"matching l=3",
                    shifted(matching({S("2"), S("1"), S("1")}), 0b0110, S("1"))});
  corpus.push_back({"matching sums", matching({S("1"), S("1"), S("1")})});
  int total = 0, good = 0;
  for (const Entry& e : corpus) {
    if (!is_permutable_matchgate(e.f).yes || is_affine(e.f).has_value()) {
      std::printf("  criterion 7 corpus entry '%s' out of scope\n", e.label);
      continue;
    }
    ++total;
    bool ok = false;
    try {
      SymmetricRealization real = realize_symmetric_from_mp(e.f);
      auto symf = detect_symmetric(real.realized);
      ok = symf.has_value() && is_matchgate(real.realized).yes &&
           !is_affine(real.realized).has_value() && m_minus_a_form(*symf).has_value() &&
           contract(real.gadget).equals(real.realized) &&
           check_rotation_planar(real.gadget);
      if (ok) {
        // left-side bipartition discipline
        for (const auto& v : real.gadget.vertices) {
          if (!v.side) ok = false;
          if (v.side && *v.side == Side::Left && !v.sig.equals(e.f)) ok = false;
        }
      }
    } catch (const Error& err) {
      std::printf("  criterion 7 '%s' threw: %s\n", e.label, err.what());
    }
    if (ok)
      ++good;
    else
      std::printf("  criterion 7 '%s' failed\n", e.label);
  }
  report(7, total >= 12 && good == total,
         "symmetric realizations, " + std::to_string(good) + "/" + std::to_string(total),
         timer.seconds());
}

/* 8. Holographic rewrites preserve the value: exact mode exactly, float
 * mode to a relative 1e-6. */
void criterion_8() {
  Timer timer;
  std::mt19937 rng(2027);
  std::vector<Scalar> pool = small_pool();
  pool.push_back(S("2"));
  int total = 0, good = 0;
  while (total < 200) {
    std::uniform_int_distribution<int> ne(2, 10);
    int edges = ne(rng);
    // left vertices of arity 1..3 covering all edges, then right ones
    auto chop = [&](int count) {
      std::vector<int> sizes;
      int left = count;
      while (left > 0) {
        std::uniform_int_distribution<int> s(1, std::min(3, left));
        int take = s(rng);
        sizes.push_back(take);
        left -= take;
      }
      return sizes;
    };
    std::vector<int> lsz = chop(edges), rsz = chop(edges);
    HolantInstance inst;
    inst.edge_count = edges;
    int next = 0;
    for (int sz : lsz) {
      HolantVertex v;
      std::vector<Scalar> tab;
      for (int i = 0; i < (1 << sz); ++i) tab.push_back(pick(rng, pool));
      v.sig = Signature(sz, Mode::Exact, tab);
      for (int i = 0; i < sz; ++i) v.edges.push_back(next++);
      v.side = Side::Left;
      inst.vertices.push_back(std::move(v));
    }
    std::vector<int> ids(edges);
    for (int i = 0; i < edges; ++i) ids[i] = i;
    std::shuffle(ids.begin(), ids.end(), rng);
    int at = 0;
    for (int sz : rsz) {
      HolantVertex v;
      std::vector<Scalar> tab;
      for (int i = 0; i < (1 << sz); ++i) tab.push_back(pick(rng, pool));
      v.sig = Signature(sz, Mode::Exact, tab);
      for (int i = 0; i < sz; ++i) v.edges.push_back(ids[at++]);
      v.side = Side::Right;
      inst.vertices.push_back(std::move(v));
    }
    BinaryMatrix t{pick(rng, pool), pick(rng, pool), pick(rng, pool), pick(rng, pool)};
    if (!t.is_invertible()) continue;
    ++total;
    Scalar z = eval_holant(inst);
    Scalar z2 = eval_holant(holographic_rewrite(inst, t));
    bool ok = z.equals(z2);
    // float mode
    HolantInstance finst = inst;
    for (auto& v : finst.vertices) v.sig = v.sig.to_float();
    BinaryMatrix ft{t.a00.to_float(), t.a01.to_float(), t.a10.to_float(), t.a11.to_float()};
    std::complex<double> fz = eval_holant(finst).to_complex();
    std::complex<double> fz2 = eval_holant(holographic_rewrite(finst, ft)).to_complex();
    ok = ok && std::abs(fz - fz2) <= 1e-6 * std::max(1.0, std::abs(fz));
    if (ok) ++good;
  }
  report(8, good == total,
         "holographic invariance, " + std::to_string(good) + "/" + std::to_string(total),
         timer.seconds());
}

/* 9. The hadamard image of each equality is proportional to the even
 * parity mask. Direct summation gives the constant 2 for every k:
 * sum_{b in {0..0, 1..1}} prod_i H[a_i, b_i] = 1 + (-1)^{|a|}. The factor
 * 2^{k-1} quoted in the acceptance table only matches k = 2; the value
 * asserted here is the one its own derivation method (direct summation)
 * produces. */
void criterion_9() {
  Timer timer;
  int total = 0, good = 0;
  std::string factors;
  for (int k = 1; k <= 6; ++k) {
    Signature eq = Signature::equality(k);
    Signature image = hat(eq);
    // independent direct summation
    Signature expect = Signature::zero_of(k, Mode::Exact);
    for (std::uint32_t a = 0; a < expect.size(); ++a)
      expect.at(a) = (std::popcount(a) % 2 == 0) ? S("2") : S("0");
    SymmetricSignature mask;
    for (int j = 0; j <= k; ++j) mask.values.push_back(j % 2 ? S("0") : S("1"));
    auto lambda = proportionality_factor(image, mask.expand());
    ++total;
    if (lambda && image.equals(expect) && lambda->equals(S("2"))) ++good;
    factors += (k > 1 ? ", " : "") + std::string("k=") + std::to_string(k) + ":" +
               (lambda ? format_scalar(*lambda) : "-");
  }
  report(9, good == total,
         "hadamard images of equalities, constants recorded [" + factors + "]",
         timer.seconds());
}

/* 10. The curated dichotomy table, with every verdict re-derived by the
 * classifiers and every witness re-verified. The [1,0,w] row is frozen to
 * the classifier-derived verdict: [1,0,w] is a single block of product
 * type, so every variant is polynomial via P. */
void criterion_10() {
  Timer timer;
  const std::vector<ProblemVariant> all{ProblemVariant::Csp,   ProblemVariant::RdCsp,
                                        ProblemVariant::PlCsp, ProblemVariant::PlRdCsp,
                                        ProblemVariant::CspPl, ProblemVariant::RdCspPl};
  int total = 0, good = 0;
  auto verify_poly = [&](const DichotomyVerdict& v, const Signature& f) {
    if (!v.poly || !v.witness_class) return false;
    const ClassVerdict& cv = v.per_signature[0];
    switch (*v.witness_class) {
      case TractableClass::Affine:
        return cv.in_affine && cv.affine &&
               cv.affine->reconstruct(f.arity(), f.mode()).equals(f);
      case TractableClass::Product:
        return cv.in_product && cv.product &&
               cv.product->reconstruct(f.arity(), f.mode()).equals(f);
      case TractableClass::MatchgateHat:
        return is_matchgate(hat(f)).yes;
      case TractableClass::PermutableHat:
        return is_permutable_matchgate(hat(f)).yes;
    }
    return false;
  };
  auto verify_hard = [&](const DichotomyVerdict& v, ProblemVariant variant,
                         const std::vector<Signature>& set) {
    if (v.poly) return false;
    if (v.counterexamples.size() != candidate_classes(variant).size()) return false;
    for (auto [cls, idx] : v.counterexamples) {
      const Signature& f = set[idx];
      switch (cls) {
        case TractableClass::Affine:
          if (is_affine(f)) return false;
          break;
        case TractableClass::Product:
          if (is_product(f)) return false;
          break;
        case TractableClass::MatchgateHat:
          if (is_matchgate(hat(f)).yes) return false;
          break;
        case TractableClass::PermutableHat:
          if (is_permutable_matchgate(hat(f)).yes) return false;
          break;
      }
    }
    return true;
  };

  auto check_row = [&](const Signature& f,
                       const std::function<bool(ProblemVariant, const DichotomyVerdict&)>&
                           expect) {
    std::vector<Signature> set{f};
    for (ProblemVariant variant : all) {
      DichotomyVerdict v = decide(set, variant);
      ++total;
      bool row_ok = expect(variant, v);
      bool witness_ok = v.poly ? verify_poly(v, f) : verify_hard(v, variant, set);
      if (row_ok && witness_ok) ++good;
    }
  };

  check_row(Signature::equality(3), [&](ProblemVariant, const DichotomyVerdict& v) {
    return v.poly && v.per_signature[0].in_affine && v.per_signature[0].in_product;
  });
  check_row(sym_sig({"1", "0", "2"}), [&](ProblemVariant, const DichotomyVerdict& v) {
    return v.poly && *v.witness_class == TractableClass::Product &&
           !v.per_signature[0].in_affine;
  });
  check_row(sym_sig({"0", "1", "1", "0"}), [&](ProblemVariant variant,
                                               const DichotomyVerdict& v) {
    switch (variant) {
      case ProblemVariant::Csp:
      case ProblemVariant::RdCsp:
        return !v.poly;
      case ProblemVariant::PlCsp:
      case ProblemVariant::PlRdCsp:
        return v.poly && *v.witness_class == TractableClass::MatchgateHat;
      case ProblemVariant::CspPl:
      case ProblemVariant::RdCspPl:
        return v.poly && *v.witness_class == TractableClass::PermutableHat;
    }
    return false;
  });
  // classifier-derived row for [1,0,w]; see the decisions note on the
  // difference from the quoted table
  check_row(sym_sig({"1", "0", "w"}), [&](ProblemVariant, const DichotomyVerdict& v) {
    return v.poly && *v.witness_class == TractableClass::Product &&
           !v.per_signature[0].in_affine;
  });
  std::printf(
      "  note: [1,0,w] is an E-signature (two complementary supports), hence in P;\n"
      "  the decider derives poly(P) for every variant and the witness re-verifies.\n");
  report(10, good == total,
         "dichotomy table re-derived, " + std::to_string(good) + "/" + std::to_string(total),
         timer.seconds());
}

/* 11. Single-variable pins of permutable matchgates stay permutable. */
void criterion_11() {
  Timer timer;
  int total = 0, good = 0;
  for (const Signature& f : permutable_corpus()) {
    if (!is_permutable_matchgate(f).yes) continue;
    if (f.arity() < 1 || f.arity() > 6) continue;
    for (int v = 1; v <= f.arity(); ++v)
      for (int c = 0; c <= 1; ++c) {
        ++total;
        if (is_permutable_matchgate(pin(f, v, c)).yes) ++good;
      }
  }
  report(11, good == total && total > 0,
         "pinning closure, " + std::to_string(good) + "/" + std::to_string(total),
         timer.seconds());
}

/* 12. Mating realizations on random non-degenerate signatures. */
void criterion_12() {
  Timer timer;
  std::mt19937 rng(2028);
  std::vector<Scalar> pool = small_pool();
  pool.push_back(S("2"));
  int total = 0, good = 0;
  while (total < 20) {
    std::uniform_int_distribution<int> ar(2, 5);
    int n = ar(rng);
    std::vector<Scalar> tab;
    for (int i = 0; i < (1 << n); ++i) tab.push_back(pick(rng, pool));
    Signature f(n, Mode::Exact, std::move(tab));
    if (is_degenerate(f)) continue;
    ++total;
    bool ok = true;
    try {
      BinaryRealization nb = realize_nondeg_binary(f);
      Scalar det = nb.realized.at(0) * nb.realized.at(3) - nb.realized.at(1) * nb.realized.at(2);
      ok = ok && !det.is_zero() && contract(nb.gadget).equals(nb.realized);
      BinaryRealization bo = realize_binary_or_001(f);
      if (bo.kind == BinaryRealization::Kind::NondegBinary) {
        Scalar d2 = bo.realized.at(0) * bo.realized.at(3) - bo.realized.at(1) * bo.realized.at(2);
        ok = ok && !d2.is_zero();
      } else {
        Signature point = Signature::zero_of(2, Mode::Exact);
        point.at(3) = S("1");
        ok = ok && proportionality_factor(bo.realized, point).has_value();
      }
      ok = ok && contract(bo.gadget).equals(bo.realized);
    } catch (const Error& err) {
      std::printf("  criterion 12 threw: %s\n", err.what());
      ok = false;
    }
    if (ok) ++good;
  }
  report(12, good == total,
         "mating realizations, " + std::to_string(good) + "/" + std::to_string(total),
         timer.seconds());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criteria_3_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
