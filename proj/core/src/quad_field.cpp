#include "hqx/quad_field.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>

namespace hqx {

namespace {

long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("integral element arithmetic overflowed a machine word");
  return r;
}

long checked_add(long a, long b) {
  long r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("integral element arithmetic overflowed a machine word");
  return r;
}

long to_long(const mpz_class& z) {
  if (!z.fits_slong_p()) throw DomainError("value does not fit a machine word: " + z.get_str());
  return z.get_si();
}

// Exact sign of a + b sqrt(D).
int sign_of(const mpq_class& a, const mpq_class& b, long D) {
  int sa = mpq_sgn(a.get_mpq_t()), sb = mpq_sgn(b.get_mpq_t());
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  mpq_class lhs = a * a, rhs = b * b * D;
  return lhs > rhs ? sa : sb;
}

bool squarefree(long D) {
  for (long q = 2; q * q <= D; ++q) {
    if (D % (q * q) == 0) return false;
  }
  return true;
}

}  // namespace

// ---- QuadElem -------------------------------------------------------------

QuadElem QuadElem::conjugate() const { return QuadElem(f_, x_ + f_->basis_shift() * y_, -y_); }

mpq_class QuadElem::trace() const { return 2 * x_ + f_->basis_shift() * y_; }

mpq_class QuadElem::norm() const { return x_ * x_ + f_->basis_shift() * x_ * y_ - f_->c() * y_ * y_; }

int QuadElem::sign_first() const {
  auto [a, b] = f_->sqrt_coords(x_, y_);
  return sign_of(a, b, f_->D());
}

int QuadElem::sign_second() const {
  auto [a, b] = f_->sqrt_coords(x_, y_);
  return sign_of(a, -b, f_->D());
}

bool QuadElem::is_totally_positive() const { return trace() > 0 && norm() > 0; }

IntElem QuadElem::to_int() const {
  if (!is_integral()) throw DomainError("QuadElem::to_int: element is not integral");
  return {to_long(x_.get_num()), to_long(y_.get_num())};
}

QuadElem operator+(const QuadElem& a, const QuadElem& b) { return QuadElem(a.f_ ? a.f_ : b.f_, a.x_ + b.x_, a.y_ + b.y_); }
QuadElem operator-(const QuadElem& a, const QuadElem& b) { return QuadElem(a.f_ ? a.f_ : b.f_, a.x_ - b.x_, a.y_ - b.y_); }

QuadElem operator*(const QuadElem& a, const QuadElem& b) {
  const FieldPtr& f = a.f_ ? a.f_ : b.f_;
  mpq_class yy = a.y_ * b.y_;
  return QuadElem(f, a.x_ * b.x_ + f->c() * yy, a.x_ * b.y_ + b.x_ * a.y_ + f->basis_shift() * yy);
}

QuadElem QuadElem::inverse() const {
  mpq_class n = norm();
  if (n == 0) throw DomainError("QuadElem::inverse: zero element");
  QuadElem c = conjugate();
  return QuadElem(f_, c.x_ / n, c.y_ / n);
}

std::string QuadElem::to_string() const {
  std::ostringstream os;
  os << x_.get_str() << (y_ < 0 ? " - " : " + ") << mpq_class(abs(y_)).get_str() << "*w";
  return os.str();
}

// ---- QuadField ------------------------------------------------------------

FieldPtr make_field(long D, bool require_norm_minus_one) {
  if (D <= 1) throw DomainError("make_field: D must be > 1, got " + std::to_string(D));
  if (!squarefree(D)) throw DomainError("make_field: D = " + std::to_string(D) + " is not squarefree");
  auto F = std::make_shared<QuadField>();
  F->D_ = D;
  F->shift_ = (D % 4 == 1) ? 1 : 0;
  F->disc_ = F->shift_ ? D : 4 * D;
  F->c_ = F->shift_ ? (D - 1) / 4 : D;

  // Continued fraction of omega = (P + sqrt D)/Q; the first convergent h/k with
  // h - k*omega a unit gives the fundamental unit.
  mpz_class s;
  mpz_class Dz(D);
  mpz_sqrt(s.get_mpz_t(), Dz.get_mpz_t());
  mpz_class P = F->shift_, Q = F->shift_ ? 2 : 1;
  mpz_class hm2 = 0, hm1 = 1, km2 = 1, km1 = 0;
  bool found = false;
  for (int iter = 0; iter < 100000; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), mpz_class(P + s).get_mpz_t(), Q.get_mpz_t());
    mpz_class h = a * hm1 + hm2, k = a * km1 + km2;
    mpz_class n = h * h - F->shift_ * h * k - F->c_ * k * k;
    if (n == 1 || n == -1) {
      found = true;
      F->unit_norm_ = n == 1 ? 1 : -1;
      F->unit_ = {to_long(h), to_long(-k)};
      break;
    }
    hm2 = hm1;
    hm1 = h;
    km2 = km1;
    km1 = k;
    P = a * Q - P;
    Q = (Dz - P * P) / Q;
  }
  if (!found) throw DomainError("make_field: fundamental unit search did not terminate");
  // Normalize to the representative > 1 in the first embedding.
  FieldPtr tmp = F;
  IntElem u = F->unit_;
  IntElem cands[4] = {u, {-u.x, -u.y}, F->conj(u), {-F->conj(u).x, -F->conj(u).y}};
  for (const IntElem& c : cands) {
    QuadElem e(tmp, c.x - 1, c.y);
    if (e.sign_first() > 0) {
      F->unit_ = c;
      break;
    }
  }
  if (require_norm_minus_one && F->unit_norm_ != -1) {
    throw DomainError("make_field: Q(sqrt " + std::to_string(D) + ") has no unit of norm -1");
  }
  return F;
}

IntElem QuadField::totally_positive_unit() const { return unit_norm_ == -1 ? mul(unit_, unit_) : unit_; }

IntElem QuadField::mul(const IntElem& a, const IntElem& b) const {
  long yy = checked_mul(a.y, b.y);
  long x = checked_add(checked_mul(a.x, b.x), checked_mul(c_, yy));
  long y = checked_add(checked_add(checked_mul(a.x, b.y), checked_mul(b.x, a.y)), checked_mul(shift_, yy));
  return {x, y};
}

IntElem QuadField::conj(const IntElem& a) const { return {a.x + shift_ * a.y, -a.y}; }

long QuadField::norm(const IntElem& a) const {
  __int128 x = a.x, y = a.y;
  __int128 n = x * x + shift_ * x * y - static_cast<__int128>(c_) * y * y;
  if (n > LONG_MAX || n < LONG_MIN) throw DomainError("norm overflowed a machine word");
  return static_cast<long>(n);
}

bool QuadField::totally_positive(const IntElem& a) const { return trace(a) > 0 && norm(a) > 0; }

std::optional<IntElem> QuadField::divide(const IntElem& b, const IntElem& a) const {
  long n = norm(a);
  if (n == 0) throw DomainError("divide by zero element");
  IntElem t = mul(b, conj(a));
  if (t.x % n != 0 || t.y % n != 0) return std::nullopt;
  return IntElem{t.x / n, t.y / n};
}

std::pair<mpq_class, mpq_class> QuadField::sqrt_coords(const mpq_class& x, const mpq_class& y) const {
  if (shift_ == 0) return {x, y};
  return {x + y / 2, y / 2};
}

std::pair<mpq_class, mpq_class> QuadField::sqrt_enclosure(int bits) const {
  mpz_class scaled = mpz_class(D_) << (2 * bits);
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
  mpz_class den = mpz_class(1) << bits;
  return {mpq_class(r, den), mpq_class(r + 1, den)};
}

std::pair<mpq_class, mpq_class> QuadField::embedding_enclosure(const IntElem& a, bool second, int bits) const {
  auto [A, B] = sqrt_coords(a.x, a.y);
  if (second) B = -B;
  auto [lo, hi] = sqrt_enclosure(bits);
  mpq_class v1 = A + B * lo, v2 = A + B * hi;
  if (v1 > v2) std::swap(v1, v2);
  v1.canonicalize();
  v2.canonicalize();
  return {v1, v2};
}

std::vector<IntElem> QuadField::enumerate(long bound, bool include_zero) const {
  std::vector<IntElem> out;
  if (include_zero) out.push_back({0, 0});
  const long scale = shift_ ? D_ : 4 * D_;
  for (long t = 1; t <= bound; ++t) {
    if (!shift_ && (t % 2)) continue;
    // |y| < t / sqrt(scale)
    long ymax = static_cast<long>(std::sqrt(static_cast<double>(t) * t / scale)) + 1;
    for (long y = -ymax; y <= ymax; ++y) {
      if (shift_ && ((t - y) % 2 != 0)) continue;
      __int128 lhs = static_cast<__int128>(t) * t, rhs = static_cast<__int128>(scale) * y * y;
      if (lhs <= rhs) continue;
      out.push_back({(t - shift_ * y) / 2, y});
    }
  }
  return out;
}

QuadElem QuadField::elem(const FieldPtr& self, long x, long y) const { return QuadElem(self, mpq_class(x), mpq_class(y)); }

std::vector<QuadElem> enumerate_totally_positive(const FieldPtr& F, long trace_bound, bool include_zero) {
  std::vector<QuadElem> out;
  for (const IntElem& e : F->enumerate(trace_bound, include_zero)) out.emplace_back(F, e);
  return out;
}

// ---- PrimeSplit -----------------------------------------------------------

SplitPtr split_prime(const FieldPtr& F, long p, long precision) {
  if (precision < 1) throw DomainError("split_prime: precision must be >= 1");
  mpz_class pz(p);
  if (p < 3 || mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0) {
    throw DomainError("split_prime: p = " + std::to_string(p) + " is not an odd prime");
  }
  if (F->disc() % p == 0) throw DomainError("prime does not split: " + std::to_string(p) + " is ramified");
  mpz_class Dz(F->D());
  if (mpz_legendre(Dz.get_mpz_t(), pz.get_mpz_t()) != 1) {
    throw DomainError("prime does not split: " + std::to_string(p) + " is inert");
  }
  auto s = std::make_shared<PrimeSplit>();
  s->f_ = F;
  s->p_ = p;
  s->prec_ = precision;

  // Generators of either prime are normalized by powers of the totally
  // positive unit eta into the window 1 <= pi/pi' < eta^2, where both
  // embeddings are below sqrt(p) * eta. Among the normalized generators the
  // one with the largest first embedding is pi.
  IntElem eta = F->totally_positive_unit();
  IntElem eta2 = F->mul(eta, eta);
  mpq_class eta_hi = F->embedding_enclosure(eta, false, 32).second;
  double box = std::sqrt(static_cast<double>(p)) * (eta_hi.get_d() + 1.0);
  long search = static_cast<long>(std::ceil(box)) + 2;
  bool found = false;
  for (const IntElem& e : F->enumerate(search, false)) {
    if (F->norm(e) != p) continue;
    if (e.y < 0) continue;  // pi/pi' >= 1 means a nonnegative sqrt(D) coordinate
    IntElem tw = F->mul(eta2, F->conj(e));
    if (QuadElem(F, mpq_class(e.x - tw.x), mpq_class(e.y - tw.y)).sign_first() >= 0) continue;
    if (!found || QuadElem(F, mpq_class(e.x - s->pi_.x), mpq_class(e.y - s->pi_.y)).sign_first() > 0) {
      s->pi_ = e;
      found = true;
    }
  }
  if (!found) {
    throw DomainError("split_prime: no totally positive element of norm " + std::to_string(p) +
                      " with trace <= " + std::to_string(search) + " (narrow class number > 1?)");
  }
  s->pi_conj_ = F->conj(s->pi_);
  // pi = x + y omega = 0 fixes omega = -x / y mod p.
  mpz_class yinv, ymod = mpz_class(s->pi_.y) % p;
  if (ymod < 0) ymod += p;
  if (mpz_invert(yinv.get_mpz_t(), ymod.get_mpz_t(), pz.get_mpz_t()) == 0) {
    throw InternalCheckError("split_prime: generator has y divisible by p");
  }
  mpz_class w = (-mpz_class(s->pi_.x) * yinv) % p;
  if (w < 0) w += p;
  s->omega_seed_ = w;
  mpz_class wM = s->omega_mod(precision);
  mpz_class root = (F->basis_shift() + 1) * wM - F->basis_shift();
  const mpz_class& mod = prime_power(p, precision);
  mpz_mod(s->sqrtD_.get_mpz_t(), root.get_mpz_t(), mod.get_mpz_t());

  auto [lo1, hi1] = F->embedding_enclosure(s->pi_, false, 64);
  auto [lo2, hi2] = F->embedding_enclosure(s->pi_, true, 64);
  s->pi_min_lo_ = std::min(lo1, lo2);
  s->pi_max_hi_ = std::max(hi1, hi2);
  return s;
}

mpz_class PrimeSplit::omega_mod(long n) const {
  const long shift = f_->basis_shift();
  std::vector<PadicNum> poly{PadicNum::from_integer(p_, -f_->c(), n), PadicNum::from_integer(p_, -shift, n),
                             PadicNum::one(p_, n)};
  return hensel_root(poly, omega_seed_, n).residue(n);
}

mpz_class PrimeSplit::omega_conj_mod(long n) const {
  mpz_class r = f_->basis_shift() - omega_mod(n);
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), prime_power(p_, n).get_mpz_t());
  return r;
}

bool PrimeSplit::pi_divides(const IntElem& v) const {
  IntElem t = f_->mul(v, pi_conj_);
  return t.x % p_ == 0 && t.y % p_ == 0;
}

bool PrimeSplit::pi_conj_divides(const IntElem& v) const {
  IntElem t = f_->mul(v, pi_);
  return t.x % p_ == 0 && t.y % p_ == 0;
}

IntElem PrimeSplit::div_pi(const IntElem& v) const {
  IntElem t = f_->mul(v, pi_conj_);
  return {t.x / p_, t.y / p_};
}

IntElem PrimeSplit::div_pi_conj(const IntElem& v) const {
  IntElem t = f_->mul(v, pi_);
  return {t.x / p_, t.y / p_};
}

long PrimeSplit::pi_valuation(const IntElem& v) const {
  if (v.x == 0 && v.y == 0) throw DomainError("pi_valuation: infinite valuation of 0");
  long e = 0;
  IntElem w = v;
  while (pi_divides(w)) {
    w = div_pi(w);
    ++e;
  }
  return e;
}

long PrimeSplit::pi_conj_valuation(const IntElem& v) const {
  if (v.x == 0 && v.y == 0) throw DomainError("pi_valuation: infinite valuation of 0");
  long e = 0;
  IntElem w = v;
  while (pi_conj_divides(w)) {
    w = div_pi_conj(w);
    ++e;
  }
  return e;
}

long pi_valuation(const QuadElem& v, const PrimeSplit& s) {
  if (v.is_zero()) throw DomainError("pi_valuation: infinite valuation of 0");
  return s.pi_valuation(v.to_int());
}

// ---- Embedder -------------------------------------------------------------

Embedder::Embedder(SplitPtr s, long rel_prec, long max_extra_valuation)
    : s_(std::move(s)), rel_(rel_prec), digits_(rel_prec + max_extra_valuation) {
  w_ = s_->omega_mod(digits_);
  wc_ = s_->omega_conj_mod(digits_);
}

PadicNum Embedder::image(const IntElem& v, const mpz_class& w, long val) const {
  const long n = rel_ + val;
  mpz_class r = mpz_class(v.x) + mpz_class(v.y) * w;
  return PadicNum::from_residue(s_->p(), r, n);
}

PadicNum Embedder::embed(const IntElem& v) const {
  if (v.x == 0 && v.y == 0) return PadicNum::zero(s_->p());
  long e = s_->pi_valuation(v);
  if (rel_ + e > digits_) return image(v, s_->omega_mod(rel_ + e), e);
  return image(v, w_, e);
}

PadicNum Embedder::embed_conj(const IntElem& v) const {
  if (v.x == 0 && v.y == 0) return PadicNum::zero(s_->p());
  long e = s_->pi_conj_valuation(v);
  if (rel_ + e > digits_) return image(v, s_->omega_conj_mod(rel_ + e), e);
  return image(v, wc_, e);
}

namespace {

PadicNum embed_rational(const QuadElem& v, const PrimeSplit& s, long precision, bool conj) {
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), v.x().get_den_mpz_t(), v.y().get_den_mpz_t());
  if (den % s.p() == 0) throw DomainError("embed: denominator divisible by p");
  mpq_class nx = v.x() * den, ny = v.y() * den;
  IntElem num{to_long(nx.get_num()), to_long(ny.get_num())};
  // Shared ownership is not needed for a one-off embedding.
  SplitPtr alias(std::shared_ptr<const PrimeSplit>{}, &s);
  Embedder em(alias, precision);
  PadicNum r = conj ? em.embed_conj(num) : em.embed(num);
  if (r.is_zero()) return r;
  return r / PadicNum::from_integer(s.p(), den, precision);
}

}  // namespace

PadicNum embed(const QuadElem& v, const PrimeSplit& s, long precision) { return embed_rational(v, s, precision, false); }

PadicNum embed_conj(const QuadElem& v, const PrimeSplit& s, long precision) {
  return embed_rational(v, s, precision, true);
}

}  // namespace hqx
