#pragma once

#include <stdexcept>
#include <string>

namespace matchkit {

/* Base class for all matchkit errors. `kind()` is stable across messages
 * so callers (and the CLI exit-code mapping) can dispatch without string
 * matching. Parse failures carry a byte offset into the input. */
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

#define MATCHKIT_ERROR(Name)                                             \
  struct Name : Error {                                                  \
    explicit Name(const std::string& what) : Error(what) {}              \
    const char* kind() const noexcept override { return #Name; }         \
  }

MATCHKIT_ERROR(DivisionByZero);
MATCHKIT_ERROR(MixedModes);
MATCHKIT_ERROR(ArityMismatch);
MATCHKIT_ERROR(IndexOutOfRange);
MATCHKIT_ERROR(DuplicateIndex);
MATCHKIT_ERROR(NotAPermutation);
MATCHKIT_ERROR(OddSize);
MATCHKIT_ERROR(NotDisjoint);
MATCHKIT_ERROR(PairingSetTooLarge);
MATCHKIT_ERROR(ArityCapExceeded);
MATCHKIT_ERROR(CapExceeded);
MATCHKIT_ERROR(MissingRotation);
MATCHKIT_ERROR(Disconnected);
MATCHKIT_ERROR(SingularMatrix);
MATCHKIT_ERROR(NotBipartite);
MATCHKIT_ERROR(NotAMatchgate);
MATCHKIT_ERROR(NotPermutableMatchgate);
MATCHKIT_ERROR(PreconditionViolated);
MATCHKIT_ERROR(SqrtNotInField);
MATCHKIT_ERROR(NoHub);
MATCHKIT_ERROR(CaseExhaustion);
MATCHKIT_ERROR(DegenerateInput);
MATCHKIT_ERROR(NoDangling);
MATCHKIT_ERROR(MultipleDangling);
MATCHKIT_ERROR(DBelowThree);
MATCHKIT_ERROR(BadInstance);

#undef MATCHKIT_ERROR

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  const char* kind() const noexcept override { return "ParseError"; }
};

}  // namespace matchkit
