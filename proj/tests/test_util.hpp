#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "matchkit/matchgate.hpp"
#include "matchkit/signature.hpp"

namespace tk {

using namespace matchkit;

inline Scalar S(const std::string& text, Mode m = Mode::Exact) {
  return parse_scalar(text, m);
}

/* Signature from scalar strings in table order. */
inline Signature sig(int arity, std::vector<std::string> entries, Mode m = Mode::Exact) {
  std::vector<Scalar> table;
  for (const auto& e : entries) table.push_back(parse_scalar(e, m));
  return Signature(arity, m, std::move(table));
}

/* Symmetric [f0,...,fk], expanded. */
inline Signature sym(std::vector<std::string> profile, Mode m = Mode::Exact) {
  SymmetricSignature s;
  s.mode = m;
  for (const auto& e : profile) s.values.push_back(parse_scalar(e, m));
  return s.expand();
}

inline Scalar random_small_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> part(0, 3);
  mpq_class c[4];
  c[part(rng)] = mpq_class(num(rng), den(rng));
  if (part(rng) == 0) c[part(rng)] += num(rng);
  return Scalar::cyclotomic(c[0], c[1], c[2], c[3]);
}

inline Scalar random_from(std::mt19937& rng, const std::vector<Scalar>& pool) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  return pool[pick(rng)];
}

inline Signature random_signature(std::mt19937& rng, int arity,
                                  const std::vector<Scalar>& pool) {
  std::vector<Scalar> t;
  for (std::uint32_t i = 0; i < (1u << arity); ++i) t.push_back(random_from(rng, pool));
  return Signature(arity, Mode::Exact, std::move(t));
}

inline std::vector<int> random_permutation(std::mt19937& rng, int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/* Random normalized even-parity matchgate via its weight-2 entries. */
inline Signature random_pair_matchgate(std::mt19937& rng, int arity,
                                       const std::vector<Scalar>& pool) {
  std::map<std::pair<int, int>, Scalar> pairs;
  for (int a = 1; a <= arity; ++a)
    for (int b = a + 1; b <= arity; ++b) pairs[{a, b}] = random_from(rng, pool);
  return generate_from_pairs(arity, pairs);
}

inline std::vector<Scalar> small_pool() {
  return {S("0"), S("1"), S("-1"), S("i")};
}

}  // namespace tk
