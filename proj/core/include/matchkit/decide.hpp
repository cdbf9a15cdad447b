#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matchkit/classify.hpp"

namespace matchkit {

/*
 * The six counting problems the deciders cover. RD variants carry the
 * per-variable occurrence bound D >= 3; PL asks for a planar incidence
 * graph with prescribed cyclic variable orders, and the <PL> variants ask
 * only for planarity of the incidence graph.
 */
enum class ProblemVariant { Csp, RdCsp, PlCsp, PlRdCsp, CspPl, RdCspPl };

const char* to_string(ProblemVariant v);
std::optional<ProblemVariant> variant_from_string(std::string_view s);

enum class TractableClass { Affine, Product, MatchgateHat, PermutableHat };

const char* to_string(TractableClass c);

/* Tractable classes consulted for a variant, in report order. */
std::vector<TractableClass> candidate_classes(ProblemVariant v);

struct DichotomyVerdict {
  bool poly = false;
  std::optional<TractableClass> witness_class;  // first class containing the whole set
  std::vector<ClassVerdict> per_signature;
  /* For hard verdicts: per candidate class, the index of a signature
   * outside it. */
  std::vector<std::pair<TractableClass, int>> counterexamples;
};

/* Membership-driven dichotomy: polynomial time iff the whole set sits in
 * one candidate class of the variant. DBelowThree for RD variants with
 * d < 3. */
DichotomyVerdict decide(std::span<const Signature> set, ProblemVariant v, int d = 3);

}  // namespace matchkit
