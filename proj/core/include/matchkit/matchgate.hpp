#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "matchkit/signature.hpp"

namespace matchkit {

/*
 * The matchgate identities for a signature f of arity n: for every pair
 * beta, gamma of assignments, with P the positions where they differ
 * (p_1 < ... < p_l),
 *
 *   sum_{j=1..l} (-1)^j f(beta ^ e_{p_j}) f(gamma ^ e_{p_j}) = 0.
 *
 * f is a matchgate signature exactly when all of these hold.
 */

struct MgiWitness {
  std::uint32_t beta = 0, gamma = 0;
  Scalar sum;
};

struct MgiReport {
  bool pass = false;
  std::optional<MgiWitness> witness;
};

/* Scans beta in table order and gamma in 0..beta (the identity is symmetric
 * in beta,gamma); reports the first violating pair in that enumeration. */
MgiReport mgi_check(const Signature& f);

struct NormalizationCertificate {
  std::uint32_t shift = 0;  // support point beta, as a table index
  Scalar scale;             // g(beta), nonzero
};

struct Normalization {
  bool trivial = false;  // g identically zero
  Signature normalized;  // F with F(0...0) = 1
  NormalizationCertificate cert;
};

/* F(a) = g(a ^ beta) / g(beta) with beta the first support point in table
 * order. Exact inverse is denormalize(). */
Normalization normalize(const Signature& g);
Signature denormalize(const Signature& f, const NormalizationCertificate& cert);

/* Entry of a normalized signature addressed by the set of 1-positions. */
std::uint32_t index_of_set(int arity, std::span<const int> vars);
const Scalar& at_set(const Signature& f, std::span<const int> vars);
const Scalar& pair_entry(const Signature& f, int a, int b);

struct Pairing {
  std::vector<std::pair<int, int>> pairs;  // each (a,b) with a < b
};

/* All (|S|-1)!! pairings of the sorted index set S, each delivered once. */
void enumerate_pairings(std::span<const int> set,
                        const std::function<void(const Pairing&)>& yield);
std::vector<Pairing> all_pairings(std::span<const int> set);

/* Number of interleaved pairs (ac, bd) with a < b < c < d. */
int crossing_count(const Pairing& m);

/* Crossings between the two halves of a split pairing, counted mod 2.
 * Independent of the actual pairings: equals q + sum of ranks of S1 inside
 * the merged order, with |S1| = 2q. */
int cross_parity(std::span<const int> s1, std::span<const int> s2);

/* Signed sum over all pairings of B of the products of pair entries:
 * sum_M (-1)^{c(M)} prod_{ab in M} F(ab). |B| = 0 gives 1. Exact mode
 * enumerates pairings for |B| <= 12 and refuses larger sets. */
Scalar pfaffian_expand(const Signature& f, std::span<const int> b_set);

/* Same value by expansion on the smallest index with alternating signs;
 * the scalable route, used as a cross-check against the enumeration. */
Scalar pfaffian_recurrence(const Signature& f, std::span<const int> b_set);

struct MatchgateReport {
  bool yes = false;
  std::optional<MgiWitness> witness;  // present when the answer is no
};

/* Full identity scan (strategy "direct"). */
MatchgateReport is_matchgate(const Signature& f);

/* Pairing-expansion characterization, valid for normalized signatures of
 * even parity: true iff F(B) matches pfaffian_expand for every even set
 * |B| >= 4. PreconditionViolated if f is not normalized even-parity. */
bool matchgate_by_pfaffian(const Signature& f);

/* Builds the normalized even-parity matchgate with the given weight-2
 * entries: F(empty) = 1, F(ab) as given (missing pairs are 0), higher even
 * levels by the pairing expansion, odd entries 0. */
Signature generate_from_pairs(int arity,
                              const std::map<std::pair<int, int>, Scalar>& pair_values,
                              Mode m = Mode::Exact);

/* Whether permuting f's variables by perm keeps it a matchgate signature.
 * f itself must be one (NotAMatchgate otherwise). Decided on the quadruple
 * identity F_pi(abcd) = F_pi(ab)F_pi(cd) - F_pi(ac)F_pi(bd) + F_pi(ad)F_pi(bc)
 * over the normalization; arity < 4 is always preserved. */
bool permutation_preserves_matchgate(const Signature& f, std::span<const int> perm);

}  // namespace matchkit
