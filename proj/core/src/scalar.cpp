#include "matchkit/scalar.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace matchkit {

namespace {

double g_eps = 1e-9;
int g_arity_cap = 16;
int g_holant_edge_cap = 24;
int g_csp_variable_cap = 20;
int g_pm_vertex_cap = 16;

}  // namespace

double float_eps() { return g_eps; }
void set_float_eps(double eps) { g_eps = eps; }
int arity_cap() { return g_arity_cap; }
void set_arity_cap(int cap) { g_arity_cap = cap; }
int holant_edge_cap() { return g_holant_edge_cap; }
void set_holant_edge_cap(int cap) { g_holant_edge_cap = cap; }
int csp_variable_cap() { return g_csp_variable_cap; }
void set_csp_variable_cap(int cap) { g_csp_variable_cap = cap; }
int pm_vertex_cap() { return g_pm_vertex_cap; }
void set_pm_vertex_cap(int cap) { g_pm_vertex_cap = cap; }

const char* to_string(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

Mode mode_from_string(std::string_view s) {
  if (s == "exact") return Mode::Exact;
  if (s == "float") return Mode::Float;
  throw ParseError("unknown mode '" + std::string(s) + "'", 0);
}

Scalar Scalar::integer(long v, Mode m) {
  if (m == Mode::Float) return complex_value({static_cast<double>(v), 0.0});
  Scalar s;
  s.c_[0] = v;
  return s;
}

Scalar Scalar::rational(const mpq_class& v) {
  Scalar s;
  s.c_[0] = v;
  s.c_[0].canonicalize();
  return s;
}

Scalar Scalar::cyclotomic(mpq_class c0, mpq_class c1, mpq_class c2, mpq_class c3) {
  Scalar s;
  s.c_[0] = std::move(c0);
  s.c_[1] = std::move(c1);
  s.c_[2] = std::move(c2);
  s.c_[3] = std::move(c3);
  for (auto& c : s.c_) c.canonicalize();
  return s;
}

Scalar Scalar::complex_value(std::complex<double> z) {
  Scalar s;
  s.mode_ = Mode::Float;
  s.z_ = z;
  return s;
}

Scalar Scalar::zero(Mode m) { return integer(0, m); }
Scalar Scalar::one(Mode m) { return integer(1, m); }

Scalar Scalar::i_unit(Mode m) {
  if (m == Mode::Float) return complex_value({0.0, 1.0});
  return cyclotomic(0, 0, 1, 0);
}

Scalar Scalar::omega(Mode m) {
  if (m == Mode::Float) return complex_value(std::polar(1.0, M_PI / 4));
  return cyclotomic(0, 1, 0, 0);
}

Scalar Scalar::sqrt2(Mode m) {
  if (m == Mode::Float) return complex_value({std::sqrt(2.0), 0.0});
  return cyclotomic(0, 1, 0, -1);
}

bool Scalar::is_zero() const {
  if (mode_ == Mode::Float) return std::abs(z_) <= g_eps;
  return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

bool Scalar::is_one() const { return equals(one(mode_)); }

bool Scalar::is_rational() const {
  if (mode_ == Mode::Float) return std::abs(z_.imag()) <= g_eps;
  return c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

const mpq_class& Scalar::coeff(int k) const {
  if (mode_ != Mode::Exact) throw MixedModes("coeff() on a float scalar");
  return c_[k & 3];
}

std::complex<double> Scalar::to_complex() const {
  if (mode_ == Mode::Float) return z_;
  const double r = M_SQRT1_2;  // cos(pi/4) = sin(pi/4)
  std::complex<double> w(r, r), w2(0.0, 1.0), w3(-r, r);
  return c_[0].get_d() + c_[1].get_d() * w + c_[2].get_d() * w2 + c_[3].get_d() * w3;
}

namespace {

void require_same_mode(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode())
    throw MixedModes("cannot combine exact and float scalars");
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.mode() == Mode::Float) return Scalar::complex_value(a.to_complex() + b.to_complex());
  return Scalar::cyclotomic(a.coeff(0) + b.coeff(0), a.coeff(1) + b.coeff(1),
                            a.coeff(2) + b.coeff(2), a.coeff(3) + b.coeff(3));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.mode() == Mode::Float) return Scalar::complex_value(a.to_complex() - b.to_complex());
  return Scalar::cyclotomic(a.coeff(0) - b.coeff(0), a.coeff(1) - b.coeff(1),
                            a.coeff(2) - b.coeff(2), a.coeff(3) - b.coeff(3));
}

Scalar Scalar::operator-() const {
  if (mode_ == Mode::Float) return complex_value(-z_);
  return cyclotomic(-c_[0], -c_[1], -c_[2], -c_[3]);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.mode() == Mode::Float) return Scalar::complex_value(a.to_complex() * b.to_complex());
  mpq_class r[4];
  for (int i = 0; i < 4; ++i) {
    if (a.coeff(i) == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (b.coeff(j) == 0) continue;
      mpq_class p = a.coeff(i) * b.coeff(j);
      int k = i + j;
      if (k >= 4) {
        r[k - 4] -= p;  // w^4 = -1
      } else {
        r[k] += p;
      }
    }
  }
  return Scalar::cyclotomic(r[0], r[1], r[2], r[3]);
}

namespace {

/* Galois conjugates: sigma_k sends w to w^k for odd k. */
Scalar sigma3(const Scalar& a) {
  return Scalar::cyclotomic(a.coeff(0), a.coeff(3), -a.coeff(2), a.coeff(1));
}
Scalar sigma5(const Scalar& a) {
  return Scalar::cyclotomic(a.coeff(0), -a.coeff(1), a.coeff(2), -a.coeff(3));
}
Scalar sigma7(const Scalar& a) {
  return Scalar::cyclotomic(a.coeff(0), -a.coeff(3), -a.coeff(2), -a.coeff(1));
}

}  // namespace

Scalar Scalar::conjugate() const {
  if (mode_ == Mode::Float) return complex_value(std::conj(z_));
  return sigma7(*this);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (mode_ == Mode::Float) return complex_value(1.0 / z_);
  Scalar cof = sigma3(*this) * sigma5(*this) * sigma7(*this);
  Scalar norm = *this * cof;
  // field norm lands in Q
  if (!(norm.coeff(1) == 0 && norm.coeff(2) == 0 && norm.coeff(3) == 0) || norm.coeff(0) == 0)
    throw Error("internal: field norm not a nonzero rational");
  mpq_class inv_n = 1 / norm.coeff(0);
  return cyclotomic(cof.coeff(0) * inv_n, cof.coeff(1) * inv_n,
                    cof.coeff(2) * inv_n, cof.coeff(3) * inv_n);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (b.is_zero()) throw DivisionByZero("division by zero");
  if (a.mode() == Mode::Float) return Scalar::complex_value(a.to_complex() / b.to_complex());
  return a * b.inverse();
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar acc = one(mode_);
  Scalar base = *this;
  for (unsigned long k = static_cast<unsigned long>(e); k; k >>= 1) {
    if (k & 1) acc = acc * base;
    base = base * base;
  }
  return acc;
}

bool Scalar::equals(const Scalar& other) const {
  require_same_mode(*this, other);
  if (mode_ == Mode::Float) return std::abs(z_ - other.z_) <= g_eps;
  for (int k = 0; k < 4; ++k)
    if (c_[k] != other.c_[k]) return false;
  return true;
}

FourthPower fourth_power_class(const Scalar& a) {
  Scalar p = a.pow(4);
  if (p.equals(Scalar::one(a.mode()))) return FourthPower::One;
  if (p.equals(-Scalar::one(a.mode()))) return FourthPower::MinusOne;
  return FourthPower::OtherOrZero;
}

/* ---- square roots ------------------------------------------------- */

namespace {

std::optional<mpq_class> sqrt_rational(const mpq_class& x) {
  if (x < 0) return std::nullopt;
  if (x == 0) return mpq_class(0);
  const mpz_class num = x.get_num(), den = x.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return mpq_class(rn) / mpq_class(rd);
}

struct QI {  // element of Q(i)
  mpq_class re, im;
  bool is_zero() const { return re == 0 && im == 0; }
};

QI qi_mul(const QI& a, const QI& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
QI qi_sub(const QI& a, const QI& b) { return {a.re - b.re, a.im - b.im}; }

/* Deterministic square root in Q(i): for nonreal inputs the root with
 * positive real part is returned. */
std::optional<QI> sqrt_qi(const QI& z) {
  if (z.is_zero()) return QI{0, 0};
  if (z.im == 0) {
    if (auto r = sqrt_rational(z.re)) return QI{*r, 0};
    if (auto r = sqrt_rational(-z.re)) return QI{0, *r};
    return std::nullopt;
  }
  auto n = sqrt_rational(z.re * z.re + z.im * z.im);
  if (!n) return std::nullopt;
  auto p = sqrt_rational((z.re + *n) / 2);
  if (!p || *p == 0) return std::nullopt;
  mpq_class q = z.im / (2 * (*p));
  return QI{*p, q};
}

Scalar from_tower(const QI& s, const QI& t) {
  // value s + t*w with s,t in Q(i)
  return Scalar::cyclotomic(s.re, t.re, s.im, t.im);
}

}  // namespace

std::optional<Scalar> sqrt_in_field(const Scalar& a) {
  if (a.mode() == Mode::Float) {
    return Scalar::complex_value(std::sqrt(a.to_complex()));
  }
  // a = A + B*w over Q(i), i = w^2
  QI A{a.coeff(0), a.coeff(2)};
  QI B{a.coeff(1), a.coeff(3)};
  if (B.is_zero()) {
    if (auto s = sqrt_qi(A)) return from_tower(*s, QI{0, 0});
    // s = T*w gives s^2 = T^2 * i, so T^2 = -i*A
    QI mia{A.im, -A.re};  // -i * A
    if (auto t = sqrt_qi(mia)) return from_tower(QI{0, 0}, *t);
    return std::nullopt;
  }
  // s = S + T*w with S != 0: S^2 solves z^2 - A z + i B^2/4 = 0
  QI B2 = qi_mul(B, B);
  QI iB2{-B2.im, B2.re};
  QI disc = qi_sub(qi_mul(A, A), iB2);
  auto d = sqrt_qi(disc);
  if (!d) return std::nullopt;
  for (int sign = 0; sign < 2; ++sign) {
    QI S2{(A.re + (sign ? -d->re : d->re)) / 2, (A.im + (sign ? -d->im : d->im)) / 2};
    auto S = sqrt_qi(S2);
    if (!S || S->is_zero()) continue;
    // T = B / (2S)
    mpq_class nrm = 4 * (S->re * S->re + S->im * S->im);
    QI twoSbar{2 * S->re, -2 * S->im};
    QI T = qi_mul(B, twoSbar);
    T.re /= nrm;
    T.im /= nrm;
    Scalar s = from_tower(*S, T);
    if ((s * s).equals(a)) return s;
  }
  return std::nullopt;
}

/* ---- text form ----------------------------------------------------- */

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool digits_ahead() {
    char c = peek();
    return c >= '0' && c <= '9';
  }

  mpz_class read_integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected digits", pos);
    return mpz_class(std::string(text.substr(start, pos - start)), 10);
  }

  /* Rational coefficient: integer or p/q. Decimals allowed in float mode. */
  void read_coeff(Mode m, mpq_class& exact, double& flt) {
    skip_ws();
    std::size_t start = pos;
    mpz_class num = read_integer();
    if (pos < text.size() && (text[pos] == '.' || text[pos] == 'e' || text[pos] == 'E')) {
      if (m == Mode::Exact)
        throw ParseError("decimal literals are not valid exact scalars", pos);
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
              text[pos] == 'e' || text[pos] == 'E' ||
              ((text[pos] == '+' || text[pos] == '-') &&
               (text[pos - 1] == 'e' || text[pos - 1] == 'E'))))
        ++pos;
      flt = std::strtod(std::string(text.substr(start, pos - start)).c_str(), nullptr);
      exact = 0;
      return;
    }
    if (peek() == '/') {
      ++pos;
      mpz_class den = read_integer();
      if (den == 0) throw ParseError("zero denominator", pos);
      mpq_class q(num, den);
      q.canonicalize();
      exact = q;
    } else {
      exact = mpq_class(num);
    }
    flt = exact.get_d();
  }
};

void emit_rat(std::ostringstream& out, const mpq_class& q) { out << q.get_str(); }

/* One signed term of the polynomial form. `unit` is "", "i", "w", "w^2", "w^3". */
void emit_term(std::ostringstream& out, bool& first, const mpq_class& coeff,
               const char* unit) {
  if (coeff == 0) return;
  mpq_class a = coeff;
  if (!first) {
    out << (a < 0 ? "-" : "+");
    if (a < 0) a = -a;
  } else {
    first = false;
    if (a < 0) {
      out << "-";
      a = -a;
    }
  }
  if (unit[0] == '\0') {
    emit_rat(out, a);
  } else {
    if (a != 1) emit_rat(out, a);
    out << unit;
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Scalar parse_scalar(std::string_view text, Mode m) {
  Parser p{text};
  mpq_class c[4];
  std::complex<double> z{0.0, 0.0};
  bool any = false;
  while (!p.done()) {
    int sign = 1;
    char c0 = p.peek();
    if (c0 == '+' || c0 == '-') {
      sign = c0 == '-' ? -1 : 1;
      ++p.pos;
    } else if (any) {
      throw ParseError("expected '+' or '-' between terms", p.pos);
    }
    mpq_class coeff = 1;
    double fcoeff = 1.0;
    bool saw_number = false;
    if (p.digits_ahead()) {
      p.read_coeff(m, coeff, fcoeff);
      if (coeff != 0) fcoeff = coeff.get_d();
      saw_number = true;
    }
    int unit = -1;  // -1 plain rational, 0..3 power of w
    char u = p.peek();
    if (u == 'i') {
      ++p.pos;
      unit = 2;
    } else if (u == 'w') {
      ++p.pos;
      if (p.peek() == '^') {
        ++p.pos;
        mpz_class e = p.read_integer();
        if (e < 0 || e > 3) throw ParseError("w exponent must be 0..3", p.pos);
        unit = static_cast<int>(e.get_si());
      } else {
        unit = 1;
      }
    } else if (!saw_number) {
      throw ParseError("expected a number, 'i' or 'w'", p.pos);
    }
    if (m == Mode::Exact) {
      if (unit < 0)
        c[0] += sign * coeff;
      else
        c[unit] += sign * coeff;
    } else {
      static const std::complex<double> kUnits[4] = {
          {1.0, 0.0}, {M_SQRT1_2, M_SQRT1_2}, {0.0, 1.0}, {-M_SQRT1_2, M_SQRT1_2}};
      std::complex<double> term(fcoeff * sign, 0.0);
      if (unit >= 0) term *= kUnits[unit];
      z += term;
    }
    any = true;
  }
  if (!any) throw ParseError("empty scalar", 0);
  if (m == Mode::Float) return Scalar::complex_value(z);
  return Scalar::cyclotomic(c[0], c[1], c[2], c[3]);
}

std::string format_scalar(const Scalar& s) {
  std::ostringstream out;
  if (s.mode() == Mode::Float) {
    double re = s.to_complex().real(), im = s.to_complex().imag();
    if (re == 0.0 && im == 0.0) return "0";
    bool first = true;
    if (re != 0.0) {
      out << format_double(re);
      first = false;
    }
    if (im != 0.0) {
      if (!first && im > 0) out << "+";
      if (im == 1.0)
        out << "i";
      else if (im == -1.0)
        out << "-i";
      else
        out << format_double(im) << "i";
    }
    return out.str();
  }
  if (s.is_zero()) return "0";
  bool first = true;
  if (s.coeff(1) == 0 && s.coeff(3) == 0) {
    emit_term(out, first, s.coeff(0), "");
    emit_term(out, first, s.coeff(2), "i");
    return out.str();
  }
  emit_term(out, first, s.coeff(0), "");
  emit_term(out, first, s.coeff(1), "w");
  emit_term(out, first, s.coeff(2), "w^2");
  emit_term(out, first, s.coeff(3), "w^3");
  return out.str();
}

std::string Scalar::str() const { return format_scalar(*this); }

}  // namespace matchkit
