#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "matchkit/matchgate.hpp"
#include "matchkit/signature.hpp"

namespace matchkit {

/*
 * Membership deciders for the tractable signature classes: affine (A),
 * product type (P), matchgate (M), permutable matchgate (M_P), and their
 * images under the [[1,1],[1,-1]] basis change (M^, M_P^).
 */

/* f = lambda * chi_support * i^eps(t) where the support is an affine
 * subspace s0 + span(basis) over Z2 and eps is Z4-valued of degree <= 2
 * in the subspace coordinates with even cross coefficients. */
struct AffineWitness {
  Scalar lambda;                    // value at the base point (0 for the zero signature)
  std::uint32_t base = 0;           // s0 as a table index
  std::vector<std::uint32_t> basis; // GF(2) basis of the support direction space
  std::vector<int> linear;          // Z4 coefficient per basis dimension
  std::vector<std::vector<int>> quad;  // quad[k][l], l < k, values in {0,2}

  Signature reconstruct(int arity, Mode m) const;
};

std::optional<AffineWitness> is_affine(const Signature& f);

/* Tensor factorization into blocks whose support sits inside a pair of
 * complementary assignments. Blocks are listed with their global variable
 * indices; the interleaved product reproduces f exactly. */
struct ProductBlock {
  std::vector<int> vars;  // 1-based, ascending
  Signature factor;
};
struct ProductWitness {
  std::vector<ProductBlock> blocks;
  Signature reconstruct(int arity, Mode m) const;
};

std::optional<ProductWitness> is_product(const Signature& f);

struct PermutableReport {
  bool yes = false;
  std::optional<MgiWitness> identity_failure;     // not a matchgate at all
  std::optional<std::array<int, 4>> quad_failure; // pair-product equality broke here
};

/* f stays a matchgate under every variable permutation iff its normalized
 * form satisfies F(ab)F(cd) = F(ac)F(bd) = F(ad)F(bc) for all quadruples. */
PermutableReport is_permutable_matchgate(const Signature& f);

struct MpType {
  enum class Kind { Pinning, Parity, Matching, SmallArity };
  Kind kind = Kind::SmallArity;
  std::vector<Scalar> weights;  // 1-based (index 0 unused): G for Parity / Matching
  int hub = 0;                  // Matching only
};

/* Structural type of a normalized permutable matchgate signature by its
 * weight-2 entries: Pinning (all zero), Parity (some triangle of nonzero
 * pairs, F(ab) = G(a)G(b)), or Matching (every nonzero pair meets a hub).
 * PreconditionViolated unless F is normalized and permutable. */
MpType classify_mp_type(const Signature& f);

/* G with F(ab) = G(a)G(b) on all pairs, anchored at the first nonzero
 * triangle; the single square root taken is the principal one, which pins
 * the global sign. SqrtNotInField in exact mode when no root exists. */
std::vector<Scalar> parity_witness(const Signature& f);

struct MatchingHub {
  int hub = 0;
  std::vector<Scalar> weights;  // weights[hub] = 1, weights[a] = F(a hub)
};

/* The hub x with F(st) = 0 whenever s,t != x; also verifies that every
 * even level F(B), |B| >= 4, vanishes. NoHub signals a classification bug. */
MatchingHub matching_hub(const Signature& f);

enum class MatchgateClass { Matchgate, Permutable };

/* f in M^ iff hat(f) in M; same for M_P^. Scalar factors are immaterial. */
bool hat_membership(const Signature& f, MatchgateClass cls);

/* The five shapes a symmetric matchgate signature outside the affine class
 * can take, matched up to a nonzero scalar:
 *   1: [0,1,0,...,0]_k, k >= 3        2: [0,...,0,1,0]_k, k >= 3
 *   3: [1,0,r], r^4 not in {0,1}
 *   4: [1,0,r,0,r^2,...]_k, k >= 3, r^2 not in {0,1}
 *   5: [0,1,0,r,0,r^2,...]_k, k >= 3, r^2 not in {0,1}
 */
struct SymmetricMaForm {
  int form = 0;  // 1..5
  int k = 0;
  Scalar scale;
  std::optional<Scalar> ratio;  // r for forms 3..5
};

std::optional<SymmetricMaForm> m_minus_a_form(const SymmetricSignature& g);

/* Everything decide() needs to know about one signature. */
struct ClassVerdict {
  bool in_affine = false, in_product = false;
  bool in_matchgate = false, in_matchgate_hat = false;
  bool in_permutable = false, in_permutable_hat = false;
  std::optional<AffineWitness> affine;
  std::optional<ProductWitness> product;
  std::optional<MgiWitness> matchgate_failure;
  std::optional<MpType> mp_type;  // of the normalized form, when permutable
};

ClassVerdict classify_signature(const Signature& f);

}  // namespace matchkit
