#include <doctest.h>

#include <algorithm>
#include <random>

#include "matchkit/decide.hpp"
#include "test_util.hpp"

using namespace matchkit;
using tk::S;
using tk::sig;
using tk::sym;

namespace {

const std::vector<ProblemVariant> kAll{ProblemVariant::Csp,    ProblemVariant::RdCsp,
                                       ProblemVariant::PlCsp,  ProblemVariant::PlRdCsp,
                                       ProblemVariant::CspPl,  ProblemVariant::RdCspPl};

}  // namespace

TEST_CASE("worked dichotomy rows") {
  std::vector<Signature> p_set{Signature::equality(3), sym({"1", "0", "2"})};
  DichotomyVerdict v = decide(p_set, ProblemVariant::Csp);
  CHECK(v.poly);
  CHECK(*v.witness_class == TractableClass::Product);
  // the witness class re-verifies on every member of the set
  for (std::size_t i = 0; i < p_set.size(); ++i) {
    REQUIRE(v.per_signature[i].product.has_value());
    CHECK(v.per_signature[i]
              .product->reconstruct(p_set[i].arity(), p_set[i].mode())
              .equals(p_set[i]));
  }

  std::vector<Signature> blow{sym({"0", "1", "1", "0"})};
  CHECK_FALSE(decide(blow, ProblemVariant::Csp).poly);
  CHECK_FALSE(decide(blow, ProblemVariant::RdCsp).poly);
  DichotomyVerdict pl = decide(blow, ProblemVariant::PlCsp);
  CHECK(pl.poly);
  CHECK(*pl.witness_class == TractableClass::MatchgateHat);
  DichotomyVerdict cpl = decide(blow, ProblemVariant::CspPl);
  CHECK(cpl.poly);
  CHECK(*cpl.witness_class == TractableClass::PermutableHat);

  std::vector<Signature> affine{sym({"1", "0", "1", "0"})};
  for (ProblemVariant variant : kAll) {
    DichotomyVerdict av = decide(affine, variant);
    CHECK(av.poly);
    CHECK(*av.witness_class == TractableClass::Affine);
  }
}

TEST_CASE("hard verdicts carry counterexamples that re-verify") {
  std::vector<Signature> blow{sym({"0", "1", "1", "0"})};
  DichotomyVerdict v = decide(blow, ProblemVariant::Csp);
  REQUIRE_FALSE(v.poly);
  CHECK(v.counterexamples.size() == candidate_classes(ProblemVariant::Csp).size());
  for (auto [cls, idx] : v.counterexamples) {
    const ClassVerdict& cv = v.per_signature[idx];
    switch (cls) {
      case TractableClass::Affine: CHECK_FALSE(cv.in_affine); break;
      case TractableClass::Product: CHECK_FALSE(cv.in_product); break;
      case TractableClass::MatchgateHat: CHECK_FALSE(cv.in_matchgate_hat); break;
      case TractableClass::PermutableHat: CHECK_FALSE(cv.in_permutable_hat); break;
    }
  }
}

TEST_CASE("bounded-occurrence variants reject small bounds") {
  std::vector<Signature> set{Signature::equality(2)};
  CHECK_THROWS_AS(decide(set, ProblemVariant::RdCsp, 2), DBelowThree);
  CHECK_THROWS_AS(decide(set, ProblemVariant::RdCspPl, 1), DBelowThree);
  CHECK(decide(set, ProblemVariant::RdCsp, 3).poly);
}

TEST_CASE("a hard planar variant forces a hard general variant") {
  std::mt19937 rng(163);
  for (int t = 0; t < 20; ++t) {
    std::vector<Signature> set{tk::random_signature(rng, 3, tk::small_pool())};
    if (!decide(set, ProblemVariant::PlCsp).poly) CHECK_FALSE(decide(set, ProblemVariant::Csp).poly);
    if (!decide(set, ProblemVariant::CspPl).poly) CHECK_FALSE(decide(set, ProblemVariant::Csp).poly);
  }
}

TEST_CASE("planarity with free orders matches the permutation closure") {
  std::mt19937 rng(167);
  for (int t = 0; t < 12; ++t) {
    std::uniform_int_distribution<int> ar(2, 4);
    int n = ar(rng);
    Signature f = tk::random_signature(rng, n, tk::small_pool());
    std::vector<Signature> closure;
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    do {
      closure.push_back(permute(f, p));
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<Signature> single{f};
    CHECK(decide(single, ProblemVariant::CspPl).poly ==
          decide(closure, ProblemVariant::PlCsp).poly);
  }
}

TEST_CASE("deciding twice gives identical verdicts") {
  std::vector<Signature> set{sym({"0", "1", "1", "0"}), Signature::equality(3)};
  DichotomyVerdict a = decide(set, ProblemVariant::PlCsp);
  DichotomyVerdict b = decide(set, ProblemVariant::PlCsp);
  CHECK(a.poly == b.poly);
  CHECK(a.counterexamples == b.counterexamples);
}
