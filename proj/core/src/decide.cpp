#include "matchkit/decide.hpp"

namespace matchkit {

const char* to_string(ProblemVariant v) {
  switch (v) {
    case ProblemVariant::Csp: return "csp";
    case ProblemVariant::RdCsp: return "rd-csp";
    case ProblemVariant::PlCsp: return "pl-csp";
    case ProblemVariant::PlRdCsp: return "pl-rd-csp";
    case ProblemVariant::CspPl: return "csp-pl";
    case ProblemVariant::RdCspPl: return "rd-csp-pl";
  }
  return "?";
}

std::optional<ProblemVariant> variant_from_string(std::string_view s) {
  if (s == "csp") return ProblemVariant::Csp;
  if (s == "rd-csp") return ProblemVariant::RdCsp;
  if (s == "pl-csp") return ProblemVariant::PlCsp;
  if (s == "pl-rd-csp") return ProblemVariant::PlRdCsp;
  if (s == "csp-pl") return ProblemVariant::CspPl;
  if (s == "rd-csp-pl") return ProblemVariant::RdCspPl;
  return std::nullopt;
}

const char* to_string(TractableClass c) {
  switch (c) {
    case TractableClass::Affine: return "A";
    case TractableClass::Product: return "P";
    case TractableClass::MatchgateHat: return "M_hat";
    case TractableClass::PermutableHat: return "M_P_hat";
  }
  return "?";
}

std::vector<TractableClass> candidate_classes(ProblemVariant v) {
  switch (v) {
    case ProblemVariant::Csp:
    case ProblemVariant::RdCsp:
      return {TractableClass::Affine, TractableClass::Product};
    case ProblemVariant::PlCsp:
    case ProblemVariant::PlRdCsp:
      return {TractableClass::Affine, TractableClass::Product, TractableClass::MatchgateHat};
    case ProblemVariant::CspPl:
    case ProblemVariant::RdCspPl:
      return {TractableClass::Affine, TractableClass::Product, TractableClass::PermutableHat};
  }
  return {};
}

namespace {

bool member(const ClassVerdict& v, TractableClass c) {
  switch (c) {
    case TractableClass::Affine: return v.in_affine;
    case TractableClass::Product: return v.in_product;
    case TractableClass::MatchgateHat: return v.in_matchgate_hat;
    case TractableClass::PermutableHat: return v.in_permutable_hat;
  }
  return false;
}

}  // namespace

DichotomyVerdict decide(std::span<const Signature> set, ProblemVariant v, int d) {
  if ((v == ProblemVariant::RdCsp || v == ProblemVariant::PlRdCsp ||
       v == ProblemVariant::RdCspPl) &&
      d < 3)
    throw DBelowThree("occurrence bound must be at least 3");
  DichotomyVerdict out;
  out.per_signature.reserve(set.size());
  for (const Signature& f : set) out.per_signature.push_back(classify_signature(f));
  for (TractableClass c : candidate_classes(v)) {
    int outside = -1;
    for (int i = 0; i < static_cast<int>(set.size()); ++i)
      if (!member(out.per_signature[i], c)) {
        outside = i;
        break;
      }
    if (outside < 0) {
      if (!out.poly) {
        out.poly = true;
        out.witness_class = c;
      }
    } else {
      out.counterexamples.emplace_back(c, outside);
    }
  }
  if (out.poly) out.counterexamples.clear();
  return out;
}

}  // namespace matchkit
