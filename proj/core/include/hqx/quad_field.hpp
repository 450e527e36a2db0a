#pragma once

#include <gmpxx.h>

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hqx/padic.hpp"

namespace hqx {

class QuadField;
using FieldPtr = std::shared_ptr<const QuadField>;

// Integral element x + y*omega, small enough for machine words. Expansion
// indices live here.
struct IntElem {
  long x = 0;
  long y = 0;
  friend bool operator==(const IntElem&, const IntElem&) = default;
};

// Sort key of an integral element: (trace, y). Self-contained so that maps can
// be ordered without the field at hand.
struct TraceKey {
  long trace = 0;
  long y = 0;
  friend auto operator<=>(const TraceKey&, const TraceKey&) = default;
};

/// x + y*omega with rational coordinates.
class QuadElem {
 public:
  QuadElem() = default;
  QuadElem(FieldPtr f, mpq_class x, mpq_class y) : f_(std::move(f)), x_(std::move(x)), y_(std::move(y)) {}
  QuadElem(FieldPtr f, const IntElem& e) : f_(std::move(f)), x_(e.x), y_(e.y) {}

  const FieldPtr& field() const { return f_; }
  const mpq_class& x() const { return x_; }
  const mpq_class& y() const { return y_; }

  QuadElem conjugate() const;
  mpq_class trace() const;
  mpq_class norm() const;
  bool is_integral() const { return x_.get_den() == 1 && y_.get_den() == 1; }
  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_totally_positive() const;
  // Sign of the first (resp. second) real embedding: -1, 0, 1.
  int sign_first() const;
  int sign_second() const;
  IntElem to_int() const;

  friend QuadElem operator+(const QuadElem& a, const QuadElem& b);
  friend QuadElem operator-(const QuadElem& a, const QuadElem& b);
  friend QuadElem operator*(const QuadElem& a, const QuadElem& b);
  friend bool operator==(const QuadElem& a, const QuadElem& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
  QuadElem inverse() const;

  std::string to_string() const;

 private:
  FieldPtr f_;
  mpq_class x_;
  mpq_class y_;
};

/// K = Q(sqrt D) with integral basis {1, omega}; omega^2 = shift*omega + c.
class QuadField {
 public:
  long D() const { return D_; }
  long disc() const { return disc_; }
  int basis_shift() const { return shift_; }
  long c() const { return c_; }
  bool has_norm_minus_one() const { return unit_norm_ == -1; }
  IntElem fund_unit() const { return unit_; }
  // Smallest totally positive unit > 1: the fundamental unit or its square.
  IntElem totally_positive_unit() const;

  // Element arithmetic on small integral elements (overflow-checked).
  IntElem mul(const IntElem& a, const IntElem& b) const;
  IntElem conj(const IntElem& a) const;
  long trace(const IntElem& a) const { return 2 * a.x + shift_ * a.y; }
  long norm(const IntElem& a) const;
  bool totally_positive(const IntElem& a) const;
  TraceKey key(const IntElem& a) const { return {trace(a), a.y}; }
  IntElem from_key(const TraceKey& k) const { return {(k.trace - shift_ * k.y) / 2, k.y}; }
  // b / a when a divides b in the ring of integers.
  std::optional<IntElem> divide(const IntElem& b, const IntElem& a) const;

  // Rational a, b with omega-embedding a + b sqrt(D) for x + y omega.
  std::pair<mpq_class, mpq_class> sqrt_coords(const mpq_class& x, const mpq_class& y) const;
  // Rational lo <= sqrt(D) <= hi with hi - lo <= 2^-bits.
  std::pair<mpq_class, mpq_class> sqrt_enclosure(int bits) const;
  // Rational enclosures of the two real embeddings of x + y omega.
  std::pair<mpq_class, mpq_class> embedding_enclosure(const IntElem& a, bool second, int bits) const;

  // Totally positive integral elements with trace <= bound in (trace, y) order.
  std::vector<IntElem> enumerate(long bound, bool include_zero) const;

  QuadElem elem(const FieldPtr& self, long x, long y) const;

 private:
  friend FieldPtr make_field(long D, bool require_norm_minus_one);
  long D_ = 0;
  long disc_ = 0;
  int shift_ = 0;
  long c_ = 0;
  IntElem unit_;
  int unit_norm_ = 0;
};

FieldPtr make_field(long D, bool require_norm_minus_one = true);

// Wrappers matching the element-level names.
inline mpq_class trace(const QuadElem& v) { return v.trace(); }
inline mpq_class norm(const QuadElem& v) { return v.norm(); }
inline QuadElem conjugate(const QuadElem& v) { return v.conjugate(); }
inline bool is_totally_positive(const QuadElem& v) { return v.is_totally_positive(); }
std::vector<QuadElem> enumerate_totally_positive(const FieldPtr& F, long trace_bound, bool include_zero);

/// A split prime p = pi * pi' with totally positive generators.
///
/// The p-adic embedding sends omega to the root making pi a multiple of p;
/// embed_conj is the other root, i.e. the embedding attached to pi'.
class PrimeSplit {
 public:
  long p() const { return p_; }
  long precision() const { return prec_; }
  const FieldPtr& field() const { return f_; }
  IntElem pi() const { return pi_; }
  IntElem pi_conj() const { return pi_conj_; }
  // sqrt(D) mod p^precision under the embedding.
  const mpz_class& sqrtD_mod() const { return sqrtD_; }
  // omega mod p^n under the embedding; n may exceed precision().
  mpz_class omega_mod(long n) const;
  mpz_class omega_conj_mod(long n) const;

  // Lower bound on min(pi, pi') and upper bound on max(pi, pi'), exact rationals.
  const mpq_class& pi_min_lower() const { return pi_min_lo_; }
  const mpq_class& pi_max_upper() const { return pi_max_hi_; }

  // pi-adic and pi'-adic valuation of a nonzero integral element.
  long pi_valuation(const IntElem& v) const;
  long pi_conj_valuation(const IntElem& v) const;
  bool pi_divides(const IntElem& v) const;
  bool pi_conj_divides(const IntElem& v) const;
  IntElem times_pi(const IntElem& v) const { return f_->mul(v, pi_); }
  IntElem times_pi_conj(const IntElem& v) const { return f_->mul(v, pi_conj_); }
  // v / pi and v / pi', assuming divisibility.
  IntElem div_pi(const IntElem& v) const;
  IntElem div_pi_conj(const IntElem& v) const;

 private:
  friend std::shared_ptr<const PrimeSplit> split_prime(const FieldPtr& F, long p, long precision);
  FieldPtr f_;
  long p_ = 0;
  long prec_ = 0;
  IntElem pi_;
  IntElem pi_conj_;
  mpz_class sqrtD_;
  mpz_class omega_seed_;  // omega mod p
  mpq_class pi_min_lo_;
  mpq_class pi_max_hi_;
};
using SplitPtr = std::shared_ptr<const PrimeSplit>;

SplitPtr split_prime(const FieldPtr& F, long p, long precision);

long pi_valuation(const QuadElem& v, const PrimeSplit& s);

/// Image of integral elements under the two p-adic embeddings, with omega
/// precomputed to a fixed number of digits.
class Embedder {
 public:
  // `rel_prec` is the relative precision of the returned values.
  Embedder(SplitPtr s, long rel_prec, long max_extra_valuation = 8);
  PadicNum embed(const IntElem& v) const;
  PadicNum embed_conj(const IntElem& v) const;
  const PrimeSplit& split() const { return *s_; }

 private:
  PadicNum image(const IntElem& v, const mpz_class& w, long val) const;
  SplitPtr s_;
  long rel_;
  long digits_;
  mpz_class w_;
  mpz_class wc_;
};

// One-off embeddings of elements with p-integral rational coordinates.
PadicNum embed(const QuadElem& v, const PrimeSplit& s, long precision);
PadicNum embed_conj(const QuadElem& v, const PrimeSplit& s, long precision);

}  // namespace hqx
