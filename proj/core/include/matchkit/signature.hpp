#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matchkit/scalar.hpp"

namespace matchkit {

/*
 * Dense Boolean-domain signature: arity n and a table of 2^n scalars.
 * Index convention, fixed everywhere: the assignment string a1..an maps
 * to offset sum(ai * 2^(n-i)), i.e. variable 1 is the most significant
 * bit and the table is in plain lexicographic string order.
 */
class Signature {
 public:
  Signature() : arity_(0), mode_(Mode::Exact), table_(1, Scalar::zero()) {}
  Signature(int arity, Mode m, std::vector<Scalar> table);

  /* Constant signature of arity 0. */
  static Signature constant(Scalar v);
  static Signature zero_of(int arity, Mode m);
  /* Unary [a, b]. */
  static Signature unary(Scalar a, Scalar b);
  /* Point mass: value 1 at the given assignment, 0 elsewhere. */
  static Signature point_mass(int arity, std::uint32_t index, Mode m);
  /* Equality =_k (value 1 on the two constant strings). */
  static Signature equality(int arity, Mode m = Mode::Exact);

  int arity() const { return arity_; }
  Mode mode() const { return mode_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(table_.size()); }
  const std::vector<Scalar>& table() const { return table_; }

  const Scalar& at(std::uint32_t index) const { return table_[index]; }
  Scalar& at(std::uint32_t index) { return table_[index]; }

  /* Value at an assignment string like "0101". ArityMismatch if the length
   * is wrong, ParseError on non-binary characters. */
  const Scalar& eval(std::string_view assignment) const;

  /* Bit of variable i (1-based) inside a table index. */
  int bit(std::uint32_t index, int var) const {
    return static_cast<int>((index >> (arity_ - var)) & 1u);
  }
  std::uint32_t set_bit(std::uint32_t index, int var, int value) const {
    std::uint32_t m = 1u << (arity_ - var);
    return value ? (index | m) : (index & ~m);
  }

  bool is_trivial() const;  // identically zero
  bool equals(const Signature& other) const;

  std::string index_string(std::uint32_t index) const;

  Signature to_float() const;

 private:
  int arity_;
  Mode mode_;
  std::vector<Scalar> table_;
};

/* Symmetric signature [f0,...,fn]: value at Hamming weight k is fk. */
struct SymmetricSignature {
  std::vector<Scalar> values;  // size arity+1
  Mode mode = Mode::Exact;

  int arity() const { return static_cast<int>(values.size()) - 1; }
  Signature expand() const;
};

/* Weight profile if f is symmetric, otherwise nullopt. */
std::optional<SymmetricSignature> detect_symmetric(const Signature& f);

/* 2x2 matrix of scalars used for binary signatures and basis changes. */
struct BinaryMatrix {
  Scalar a00, a01, a10, a11;

  static BinaryMatrix identity(Mode m = Mode::Exact);
  static BinaryMatrix hadamard(Mode m = Mode::Exact);  // [[1,1],[1,-1]]
  static BinaryMatrix diagonal(Scalar d0, Scalar d1);

  Mode mode() const { return a00.mode(); }
  Scalar det() const { return a00 * a11 - a01 * a10; }
  bool is_invertible() const { return !det().is_zero(); }
  BinaryMatrix inverse() const;  // SingularMatrix
  BinaryMatrix transpose() const { return {a00, a10, a01, a11}; }
  friend BinaryMatrix operator*(const BinaryMatrix& a, const BinaryMatrix& b);
  const Scalar& at(int r, int c) const {
    return r ? (c ? a11 : a10) : (c ? a01 : a00);
  }
};

/* Pin the listed (variable, bit) pairs; remaining variables keep their
 * relative order. Indices are 1-based and must be distinct. */
Signature pin(const Signature& f, std::span<const std::pair<int, int>> positions);
Signature pin(const Signature& f, int var, int bit);

/*
 * Variable permutation. perm is 1-based with perm[i-1] = pi(i); the result
 * g satisfies g(S) = f(pi(S)) on index sets, equivalently
 * eval(g, a) = eval(f, b) with b[pi(i)] = a[i].
 */
Signature permute(const Signature& f, std::span<const int> perm);

Signature tensor_product(const Signature& f, const Signature& g);

/* (Tf)(a) = sum_b prod_i T[a_i, b_i] f(b). */
Signature transform(const BinaryMatrix& t, const Signature& f);
/* hat(f): transform by [[1,1],[1,-1]]. */
Signature hat(const Signature& f);

/* lambda with f = lambda*g entrywise, if any. Zero against zero gives 1. */
std::optional<Scalar> proportionality_factor(const Signature& f, const Signature& g);

/* Unary factors whose tensor product equals f, or nullopt. The all-zero
 * signature factors as [0,0] x ... x [0,0]. */
std::optional<std::vector<Signature>> degenerate_factors(const Signature& f);
bool is_degenerate(const Signature& f);

}  // namespace matchkit
