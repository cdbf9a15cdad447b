#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "matchkit/config.hpp"
#include "matchkit/errors.hpp"

namespace matchkit {

enum class Mode { Exact, Float };

const char* to_string(Mode m);
Mode mode_from_string(std::string_view s);

/*
 * A scalar is either an exact element of Q(w), w a primitive 8th root of
 * unity with w^4 = -1, stored as c0 + c1*w + c2*w^2 + c3*w^3 with rational
 * coefficients, or a complex double compared with an absolute tolerance.
 *
 * Q(w) contains the imaginary unit (i = w^2) and sqrt(2) (= w - w^3), so
 * it is closed under every constant the signature machinery produces.
 * Exact and float scalars never mix inside one expression; combining them
 * throws MixedModes.
 */
class Scalar {
 public:
  Scalar() : mode_(Mode::Exact) {}  // exact zero

  static Scalar integer(long v, Mode m = Mode::Exact);
  static Scalar rational(const mpq_class& v);
  static Scalar cyclotomic(mpq_class c0, mpq_class c1, mpq_class c2, mpq_class c3);
  static Scalar complex_value(std::complex<double> z);

  static Scalar zero(Mode m = Mode::Exact);
  static Scalar one(Mode m = Mode::Exact);
  static Scalar i_unit(Mode m = Mode::Exact);   // w^2
  static Scalar omega(Mode m = Mode::Exact);    // w itself
  static Scalar sqrt2(Mode m = Mode::Exact);    // w - w^3

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::Exact; }

  bool is_zero() const;
  bool is_one() const;
  /* True when the value is rational (exact mode: c1=c2=c3=0). */
  bool is_rational() const;

  /* Exact coefficient access; only valid in exact mode. */
  const mpq_class& coeff(int k) const;

  std::complex<double> to_complex() const;
  /* Rebuild this scalar as a float-mode value. */
  Scalar to_float() const { return complex_value(to_complex()); }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);  // DivisionByZero
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  Scalar inverse() const;      // DivisionByZero on zero
  Scalar pow(long e) const;    // integer powers, negative allowed on nonzero
  Scalar conjugate() const;    // complex conjugation (w -> w^7 = -w^3)

  /* Equality in the active mode: literal for exact, |a-b| <= eps for float.
   * Mixed modes throw. */
  bool equals(const Scalar& other) const;
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.equals(b); }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !a.equals(b); }

  std::string str() const;

 private:
  Mode mode_;
  mpq_class c_[4];                  // exact payload
  std::complex<double> z_{0.0, 0.0};  // float payload
};

enum class FourthPower { One, MinusOne, OtherOrZero };

/* Classifies a^4 against 1 and -1 (exactly, or within eps in float mode). */
FourthPower fourth_power_class(const Scalar& a);

/* Some s with s*s = a, if one exists in the active field. Exact mode
 * searches Q(w) completely through the tower Q < Q(i) < Q(w); float mode
 * returns the principal complex square root. The returned root is
 * deterministic, so callers may use it to pin sign conventions. */
std::optional<Scalar> sqrt_in_field(const Scalar& a);

/*
 * Scalar grammar (whitespace insignificant):
 *   integer | p/q | sums of terms "3i", "w", "-w^3", "1/2 + w^2 - 3w^3"
 * "i" is sugar for w^2; float mode additionally accepts decimals.
 */
Scalar parse_scalar(std::string_view text, Mode m);
std::string format_scalar(const Scalar& s);

}  // namespace matchkit
