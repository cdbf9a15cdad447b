#include "matchkit/signature.hpp"

#include <algorithm>
#include <bit>

namespace matchkit {

Signature::Signature(int arity, Mode m, std::vector<Scalar> table)
    : arity_(arity), mode_(m), table_(std::move(table)) {
  if (arity < 0 || arity > arity_cap())
    throw ArityCapExceeded("arity " + std::to_string(arity) + " exceeds cap " +
                           std::to_string(arity_cap()));
  if (table_.size() != (std::size_t{1} << arity))
    throw ArityMismatch("table size does not match arity");
  for (const Scalar& s : table_)
    if (s.mode() != m) throw MixedModes("table entry mode mismatch");
}

Signature Signature::constant(Scalar v) {
  Mode m = v.mode();
  return Signature(0, m, {std::move(v)});
}

Signature Signature::zero_of(int arity, Mode m) {
  return Signature(arity, m, std::vector<Scalar>(std::size_t{1} << arity, Scalar::zero(m)));
}

Signature Signature::unary(Scalar a, Scalar b) {
  Mode m = a.mode();
  return Signature(1, m, {std::move(a), std::move(b)});
}

Signature Signature::point_mass(int arity, std::uint32_t index, Mode m) {
  Signature f = zero_of(arity, m);
  f.at(index) = Scalar::one(m);
  return f;
}

Signature Signature::equality(int arity, Mode m) {
  Signature f = zero_of(arity, m);
  f.at(0) = Scalar::one(m);
  f.at(f.size() - 1) = Scalar::one(m);
  return f;
}

const Scalar& Signature::eval(std::string_view assignment) const {
  if (static_cast<int>(assignment.size()) != arity_)
    throw ArityMismatch("assignment length " + std::to_string(assignment.size()) +
                        " vs arity " + std::to_string(arity_));
  std::uint32_t idx = 0;
  for (char c : assignment) {
    if (c != '0' && c != '1') throw ParseError("assignment must be binary", 0);
    idx = (idx << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return table_[idx];
}

bool Signature::is_trivial() const {
  for (const Scalar& s : table_)
    if (!s.is_zero()) return false;
  return true;
}

bool Signature::equals(const Signature& other) const {
  if (arity_ != other.arity_) return false;
  for (std::uint32_t i = 0; i < size(); ++i)
    if (!table_[i].equals(other.table_[i])) return false;
  return true;
}

std::string Signature::index_string(std::uint32_t index) const {
  std::string s(static_cast<std::size_t>(arity_), '0');
  for (int v = 1; v <= arity_; ++v)
    if (bit(index, v)) s[v - 1] = '1';
  return s;
}

Signature Signature::to_float() const {
  std::vector<Scalar> t;
  t.reserve(table_.size());
  for (const Scalar& s : table_) t.push_back(s.to_float());
  return Signature(arity_, Mode::Float, std::move(t));
}

Signature SymmetricSignature::expand() const {
  int n = arity();
  Signature f = Signature::zero_of(n, mode);
  for (std::uint32_t i = 0; i < f.size(); ++i)
    f.at(i) = values[std::popcount(i)];
  return f;
}

std::optional<SymmetricSignature> detect_symmetric(const Signature& f) {
  SymmetricSignature s;
  s.mode = f.mode();
  s.values.assign(static_cast<std::size_t>(f.arity()) + 1, Scalar::zero(f.mode()));
  std::vector<bool> seen(f.arity() + 1, false);
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    int w = std::popcount(i);
    if (!seen[w]) {
      s.values[w] = f.at(i);
      seen[w] = true;
    } else if (!s.values[w].equals(f.at(i))) {
      return std::nullopt;
    }
  }
  return s;
}

BinaryMatrix BinaryMatrix::identity(Mode m) {
  return {Scalar::one(m), Scalar::zero(m), Scalar::zero(m), Scalar::one(m)};
}

BinaryMatrix BinaryMatrix::hadamard(Mode m) {
  return {Scalar::one(m), Scalar::one(m), Scalar::one(m), -Scalar::one(m)};
}

BinaryMatrix BinaryMatrix::diagonal(Scalar d0, Scalar d1) {
  Mode m = d0.mode();
  return {std::move(d0), Scalar::zero(m), Scalar::zero(m), std::move(d1)};
}

BinaryMatrix BinaryMatrix::inverse() const {
  Scalar d = det();
  if (d.is_zero()) throw SingularMatrix("matrix is singular");
  return {a11 / d, -a01 / d, -a10 / d, a00 / d};
}

BinaryMatrix operator*(const BinaryMatrix& a, const BinaryMatrix& b) {
  return {a.a00 * b.a00 + a.a01 * b.a10, a.a00 * b.a01 + a.a01 * b.a11,
          a.a10 * b.a00 + a.a11 * b.a10, a.a10 * b.a01 + a.a11 * b.a11};
}

Signature pin(const Signature& f, std::span<const std::pair<int, int>> positions) {
  int n = f.arity();
  std::vector<bool> pinned(n + 1, false);
  for (auto [var, bit] : positions) {
    if (var < 1 || var > n) throw IndexOutOfRange("pin index " + std::to_string(var));
    if (pinned[var]) throw DuplicateIndex("pin index " + std::to_string(var) + " repeated");
    if (bit != 0 && bit != 1) throw Error("pin bit must be 0 or 1");
    pinned[var] = true;
  }
  int k = static_cast<int>(positions.size());
  std::uint32_t base = 0;
  for (auto [var, bit] : positions) base = f.set_bit(base, var, bit);
  std::vector<int> free_vars;
  for (int v = 1; v <= n; ++v)
    if (!pinned[v]) free_vars.push_back(v);
  int m = n - k;
  std::vector<Scalar> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint32_t a = 0; a < (1u << m); ++a) {
    std::uint32_t idx = base;
    for (int j = 0; j < m; ++j)
      idx = f.set_bit(idx, free_vars[j], static_cast<int>((a >> (m - 1 - j)) & 1u));
    out.push_back(f.at(idx));
  }
  return Signature(m, f.mode(), std::move(out));
}

Signature pin(const Signature& f, int var, int bit) {
  std::pair<int, int> p{var, bit};
  return pin(f, std::span<const std::pair<int, int>>(&p, 1));
}

Signature permute(const Signature& f, std::span<const int> perm) {
  int n = f.arity();
  if (static_cast<int>(perm.size()) != n) throw NotAPermutation("length mismatch");
  std::vector<bool> hit(n + 1, false);
  for (int p : perm) {
    if (p < 1 || p > n || hit[p]) throw NotAPermutation("not a bijection on 1..n");
    hit[p] = true;
  }
  std::vector<Scalar> out(f.size(), Scalar::zero(f.mode()));
  for (std::uint32_t a = 0; a < f.size(); ++a) {
    // g(a) = f(b) with b[pi(i)] = a[i]
    std::uint32_t b = 0;
    for (int i = 1; i <= n; ++i)
      b = f.set_bit(b, perm[i - 1], f.bit(a, i));
    out[a] = f.at(b);
  }
  return Signature(n, f.mode(), std::move(out));
}

Signature tensor_product(const Signature& f, const Signature& g) {
  if (f.mode() != g.mode()) throw MixedModes("tensor of mixed-mode signatures");
  int n = f.arity() + g.arity();
  std::vector<Scalar> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t a = 0; a < f.size(); ++a)
    for (std::uint32_t b = 0; b < g.size(); ++b) out.push_back(f.at(a) * g.at(b));
  return Signature(n, f.mode(), std::move(out));
}

Signature transform(const BinaryMatrix& t, const Signature& f) {
  if (t.mode() != f.mode()) throw MixedModes("transform mode mismatch");
  std::vector<Scalar> cur(f.table());
  int n = f.arity();
  // apply the 2x2 matrix along each axis in turn
  for (int v = 1; v <= n; ++v) {
    std::uint32_t stride = 1u << (n - v);
    for (std::uint32_t i = 0; i < cur.size(); ++i) {
      if (i & stride) continue;
      Scalar lo = cur[i], hi = cur[i | stride];
      cur[i] = t.a00 * lo + t.a01 * hi;
      cur[i | stride] = t.a10 * lo + t.a11 * hi;
    }
  }
  return Signature(n, f.mode(), std::move(cur));
}

Signature hat(const Signature& f) { return transform(BinaryMatrix::hadamard(f.mode()), f); }

std::optional<Scalar> proportionality_factor(const Signature& f, const Signature& g) {
  if (f.arity() != g.arity()) throw ArityMismatch("proportionality of unequal arities");
  std::optional<Scalar> lambda;
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    bool fz = f.at(i).is_zero(), gz = g.at(i).is_zero();
    if (gz) {
      if (!fz) return std::nullopt;
      continue;
    }
    Scalar r = f.at(i) / g.at(i);
    if (!lambda)
      lambda = r;
    else if (!lambda->equals(r))
      return std::nullopt;
  }
  if (!lambda) return Scalar::one(f.mode());  // zero vs zero, by convention
  if (lambda->is_zero()) return std::nullopt;
  return lambda;
}

std::optional<std::vector<Signature>> degenerate_factors(const Signature& f) {
  int n = f.arity();
  if (n < 1) throw ArityMismatch("degeneracy needs arity >= 1");
  Mode m = f.mode();
  if (f.is_trivial()) {
    std::vector<Signature> zs(static_cast<std::size_t>(n),
                              Signature::unary(Scalar::zero(m), Scalar::zero(m)));
    return zs;
  }
  std::vector<Signature> factors;
  Signature rest = f;
  while (rest.arity() > 1) {
    Signature r0 = pin(rest, 1, 0);
    Signature r1 = pin(rest, 1, 1);
    if (r0.is_trivial()) {
      factors.push_back(Signature::unary(Scalar::zero(m), Scalar::one(m)));
      rest = r1;
    } else if (r1.is_trivial()) {
      factors.push_back(Signature::unary(Scalar::one(m), Scalar::zero(m)));
      rest = r0;
    } else {
      auto lambda = proportionality_factor(r1, r0);
      if (!lambda) return std::nullopt;
      factors.push_back(Signature::unary(Scalar::one(m), *lambda));
      rest = r0;
    }
  }
  factors.push_back(Signature::unary(rest.at(0), rest.at(1)));
  return factors;
}

bool is_degenerate(const Signature& f) { return degenerate_factors(f).has_value(); }

}  // namespace matchkit
