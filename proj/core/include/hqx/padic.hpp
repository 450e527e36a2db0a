#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hqx/errors.hpp"

namespace hqx {

inline constexpr long kInfinitePrecision = std::numeric_limits<long>::max() / 4;

// p^n as a big integer; cached per thread.
const mpz_class& prime_power(long p, long n);

// p-adic valuation of a nonzero integer.
long valuation_of(const mpz_class& n, long p);

/// A p-adic rational known to a finite number of digits.
///
/// Nonzero values are stored as p^val * mantissa with mantissa a unit in
/// [0, p^prec), prec being the relative precision. A value that is zero to
/// the available precision is stored as "zero to absolute precision z",
/// meaning it is only known to be divisible by p^z. z may be
/// kInfinitePrecision for an exact zero, which is the additive identity and
/// is what absent coefficients of truncated expansions stand for.
class PadicNum {
 public:
  PadicNum() = default;

  static PadicNum zero(long p, long abs_prec = kInfinitePrecision);
  static PadicNum one(long p, long rel_prec) { return from_integer(p, 1, rel_prec); }
  static PadicNum from_integer(long p, const mpz_class& n, long rel_prec);
  static PadicNum from_rational(long p, const mpq_class& r, long rel_prec);
  // p^val * unit, reducing the unit into canonical form. Throws if unit is
  // divisible by p.
  static PadicNum from_unit(long p, long val, const mpz_class& unit, long rel_prec);
  // Value of the integer residue r, known modulo p^abs_prec.
  static PadicNum from_residue(long p, const mpz_class& r, long abs_prec);

  long prime() const { return p_; }
  bool is_zero() const { return zero_; }
  bool is_exact_zero() const { return zero_ && val_ >= kInfinitePrecision; }
  // Valuation of a nonzero value. For zero-to-precision this is the lower
  // bound on the valuation, i.e. the absolute precision.
  long valuation() const { return val_; }
  long relative_precision() const { return zero_ ? 0 : prec_; }
  long absolute_precision() const { return zero_ ? val_ : val_ + prec_; }
  const mpz_class& mantissa() const { return mantissa_; }
  bool is_unit() const { return !zero_ && val_ == 0; }
  bool is_integral() const { return val_ >= 0; }

  PadicNum operator-() const;
  PadicNum& operator+=(const PadicNum& o) { return *this = *this + o; }
  PadicNum& operator-=(const PadicNum& o) { return *this = *this - o; }
  PadicNum& operator*=(const PadicNum& o) { return *this = *this * o; }
  friend PadicNum operator+(const PadicNum& a, const PadicNum& b);
  friend PadicNum operator-(const PadicNum& a, const PadicNum& b) { return a + (-b); }
  friend PadicNum operator*(const PadicNum& a, const PadicNum& b);
  friend PadicNum operator/(const PadicNum& a, const PadicNum& b) { return a * b.inverse(); }

  PadicNum inverse() const;
  PadicNum pow(long n) const;
  // Multiplication by p^n; exact.
  PadicNum shifted(long n) const;
  // Multiplication by an exact nonzero rational; no precision is lost.
  PadicNum scaled(const mpq_class& r) const;
  // r + this, with r exact.
  PadicNum plus_rational(const mpq_class& r) const;
  PadicNum truncated_abs(long abs_prec) const;
  PadicNum truncated_rel(long rel_prec) const;
  // Re-express this value at the precision of `like` (which must not carry
  // more information than this value).
  PadicNum truncated_like(const PadicNum& like) const;

  // Integer representative in [0, p^digits) of an integral value.
  mpz_class residue(long digits) const;

  // Structural equality, including precision.
  friend bool operator==(const PadicNum& a, const PadicNum& b);
  // Equality to the common known precision.
  friend bool agrees(const PadicNum& a, const PadicNum& b);

  std::string to_string() const;

 private:
  long p_ = 0;
  long val_ = 0;
  long prec_ = 0;
  bool zero_ = true;
  mpz_class mantissa_;
};

inline PadicNum zero_like(const PadicNum& x) { return PadicNum::zero(x.prime()); }

/// Element c0 + c1*y of Base[y]/(y^2 - trace*y + norm).
///
/// Elements of Base embed with no modulus attached; an element carrying a
/// nonzero y-component always carries its modulus. The two roots of the
/// modulus are y and trace - y, swapped by conj().
template <class Base>
class QuadExt {
 public:
  struct Modulus {
    Base trace;
    Base norm;
  };
  using ModulusPtr = std::shared_ptr<const Modulus>;

  QuadExt() = default;
  QuadExt(Base c0) : c0_(std::move(c0)), c1_(zero_like(c0_)) {}  // NOLINT
  QuadExt(Base c0, Base c1, ModulusPtr m) : c0_(std::move(c0)), c1_(std::move(c1)), mod_(std::move(m)) {}

  static QuadExt generator(ModulusPtr m, const Base& one) {
    return QuadExt(zero_like(one), one, std::move(m));
  }

  const Base& c0() const { return c0_; }
  const Base& c1() const { return c1_; }
  const ModulusPtr& modulus() const { return mod_; }
  bool in_base() const { return c1_.is_zero(); }
  bool is_zero() const { return c0_.is_zero() && c1_.is_zero(); }

  QuadExt operator-() const { return QuadExt(-c0_, -c1_, mod_); }
  friend QuadExt operator+(const QuadExt& a, const QuadExt& b) {
    return QuadExt(a.c0_ + b.c0_, a.c1_ + b.c1_, common(a, b));
  }
  friend QuadExt operator-(const QuadExt& a, const QuadExt& b) { return a + (-b); }
  friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
    ModulusPtr m = common(a, b);
    if (a.in_base_exact() || b.in_base_exact() || !m) {
      return QuadExt(a.c0_ * b.c0_, a.c0_ * b.c1_ + a.c1_ * b.c0_, m);
    }
    Base hi = a.c1_ * b.c1_;
    return QuadExt(a.c0_ * b.c0_ - m->norm * hi, a.c0_ * b.c1_ + a.c1_ * b.c0_ + m->trace * hi, m);
  }
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }

  QuadExt conj() const {
    if (!mod_) return *this;
    return QuadExt(c0_ + mod_->trace * c1_, -c1_, mod_);
  }
  Base norm() const {
    QuadExt n = *this * conj();
    return n.c0_;
  }
  Base trace() const { return (*this + conj()).c0_; }
  QuadExt inverse() const {
    QuadExt c = conj();
    Base n = (*this * c).c0_;
    Base inv = n.inverse();
    return QuadExt(c.c0_ * inv, c.c1_ * inv, mod_);
  }
  friend QuadExt operator/(const QuadExt& a, const QuadExt& b) { return a * b.inverse(); }
  QuadExt pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    QuadExt result(one_like(c0_));
    QuadExt base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  // Structural equality of the components.
  friend bool operator==(const QuadExt& a, const QuadExt& b) { return a.c0_ == b.c0_ && a.c1_ == b.c1_; }
  friend bool agrees(const QuadExt& a, const QuadExt& b) {
    return agrees(a.c0_, b.c0_) && agrees(a.c1_, b.c1_);
  }

 private:
  bool in_base_exact() const { return c1_.is_zero() && is_exact_zero_of(c1_); }
  static ModulusPtr common(const QuadExt& a, const QuadExt& b) {
    if (!a.mod_) return b.mod_;
    if (!b.mod_ || a.mod_ == b.mod_) return a.mod_;
    if (a.mod_->trace == b.mod_->trace && a.mod_->norm == b.mod_->norm) return a.mod_;
    throw DomainError("QuadExt: operands live in different extensions");
  }

  Base c0_;
  Base c1_;
  ModulusPtr mod_;
};

using QuadExtNum = QuadExt<PadicNum>;
using BiquadNum = QuadExt<QuadExtNum>;

inline bool is_exact_zero_of(const PadicNum& x) { return x.is_exact_zero(); }
template <class B>
bool is_exact_zero_of(const QuadExt<B>& x) {
  return is_exact_zero_of(x.c0()) && is_exact_zero_of(x.c1());
}
template <class B>
QuadExt<B> zero_like(const QuadExt<B>& x) {
  return QuadExt<B>(zero_like(x.c0()));
}
inline PadicNum one_like(const PadicNum& x) {
  long prec = x.is_zero() ? std::max<long>(1, std::min(x.absolute_precision(), 64L)) : x.relative_precision();
  return PadicNum::one(x.prime(), prec);
}
template <class B>
QuadExt<B> one_like(const QuadExt<B>& x) {
  return QuadExt<B>(one_like(x.c0()));
}

// Smallest absolute precision over all base components.
inline long absolute_precision_of(const PadicNum& x) { return x.absolute_precision(); }
template <class B>
long absolute_precision_of(const QuadExt<B>& x) {
  return std::min(absolute_precision_of(x.c0()), absolute_precision_of(x.c1()));
}
inline PadicNum truncated_abs_of(const PadicNum& x, long a) { return x.truncated_abs(a); }
template <class B>
QuadExt<B> truncated_abs_of(const QuadExt<B>& x, long a) {
  return QuadExt<B>(truncated_abs_of(x.c0(), a), truncated_abs_of(x.c1(), a), x.modulus());
}

// Valuation of an element of the extension ring: val(norm)/2.
mpq_class ext_valuation(const QuadExtNum& x);

/// Reciprocal roots of a Hecke polynomial 1 - a x + p^{k-1} x^2, i.e. roots of
/// y^2 - a y + p^{k-1}.
struct RootPair {
  enum class Kind { kSplit, kNonsplit };
  Kind kind = Kind::kSplit;
  // kSplit: the two roots, smaller valuation first.
  PadicNum first;
  PadicNum second;
  // kNonsplit: the root as the class of y; the other root is its conjugate.
  QuadExtNum ext_root;
  mpq_class slope_first;
  mpq_class slope_second;
  // The coefficients the pair was computed from.
  PadicNum trace;
  PadicNum norm;

  bool split() const { return kind == Kind::kSplit; }
  // Roots as elements of the extension ring (base elements when split).
  QuadExtNum root_ext(int i) const;
};

// Evaluate a polynomial (constant term first) at x.
PadicNum poly_eval(std::span<const PadicNum> coeffs, const PadicNum& x);

/// Newton lifting of a simple root of `coeffs` (constant term first, all
/// p-integral) from the residue `seed` mod p to absolute precision p^M.
PadicNum hensel_root(std::span<const PadicNum> coeffs, const mpz_class& seed, long precision);

// Square root of a nonzero square a in Q_p (p odd), choosing the root whose
// unit part is congruent to the smaller residue in [1, p-1]. Returns nullopt
// when a is not a square.
std::optional<PadicNum> padic_sqrt(const PadicNum& a);

// Brute-force style quadratic-residue test of a p-adic unit residue.
bool is_square_residue(const mpz_class& unit, long p);

RootPair hecke_roots(const PadicNum& a, int k, long p, long precision);

struct Teichmuller {
  PadicNum mu;
  PadicNum one_unit;
};
Teichmuller teichmuller(const PadicNum& z);

}  // namespace hqx
