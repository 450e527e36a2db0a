#include "hqx/padic.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace hqx {

namespace {

long sat_add(long a, long b) {
  if (a >= kInfinitePrecision || b >= kInfinitePrecision) return kInfinitePrecision;
  return std::min(a + b, kInfinitePrecision);
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw DomainError("inverse_mod: not invertible");
  }
  return r;
}

}  // namespace

const mpz_class& prime_power(long p, long n) {
  thread_local std::unordered_map<long, std::deque<mpz_class>> cache;
  if (n < 0) throw DomainError("prime_power: negative exponent");
  auto& powers = cache[p];
  if (powers.empty()) powers.emplace_back(1);
  while (static_cast<long>(powers.size()) <= n) powers.push_back(powers.back() * p);
  return powers[static_cast<size_t>(n)];
}

long valuation_of(const mpz_class& n, long p) {
  if (n == 0) throw DomainError("valuation_of: zero has infinite valuation");
  mpz_class m = abs(n);
  long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

PadicNum PadicNum::zero(long p, long abs_prec) {
  PadicNum z;
  z.p_ = p;
  z.zero_ = true;
  z.val_ = std::min(abs_prec, kInfinitePrecision);
  z.prec_ = 0;
  z.mantissa_ = 0;
  return z;
}

PadicNum PadicNum::from_unit(long p, long val, const mpz_class& unit, long rel_prec) {
  if (rel_prec <= 0) return zero(p, val);
  PadicNum x;
  x.p_ = p;
  x.zero_ = false;
  x.val_ = val;
  x.prec_ = rel_prec;
  x.mantissa_ = mod_pos(unit, prime_power(p, rel_prec));
  if (mpz_divisible_ui_p(x.mantissa_.get_mpz_t(), static_cast<unsigned long>(p))) {
    throw DomainError("PadicNum::from_unit: mantissa is not a unit");
  }
  return x;
}

PadicNum PadicNum::from_integer(long p, const mpz_class& n, long rel_prec) {
  if (n == 0) return zero(p);
  long v = valuation_of(n, p);
  mpz_class u = n / prime_power(p, v);
  return from_unit(p, v, u, rel_prec);
}

PadicNum PadicNum::from_rational(long p, const mpq_class& r, long rel_prec) {
  if (r == 0) return zero(p);
  long vn = valuation_of(r.get_num(), p);
  long vd = valuation_of(r.get_den(), p);
  mpz_class un = r.get_num() / prime_power(p, vn);
  mpz_class ud = r.get_den() / prime_power(p, vd);
  const mpz_class& mod = prime_power(p, rel_prec);
  mpz_class u = mod_pos(un * inverse_mod(ud, mod), mod);
  return from_unit(p, vn - vd, u, rel_prec);
}

PadicNum PadicNum::from_residue(long p, const mpz_class& r, long abs_prec) {
  mpz_class m = mod_pos(r, prime_power(p, abs_prec));
  if (m == 0) return zero(p, abs_prec);
  long v = valuation_of(m, p);
  return from_unit(p, v, m / prime_power(p, v), abs_prec - v);
}

PadicNum PadicNum::operator-() const {
  if (zero_) return *this;
  PadicNum r = *this;
  r.mantissa_ = mod_pos(-mantissa_, prime_power(p_, prec_));
  return r;
}

PadicNum operator+(const PadicNum& a, const PadicNum& b) {
  if (a.p_ != b.p_) throw DomainError("PadicNum: mismatched primes");
  if (a.zero_) return b.truncated_abs(a.val_);
  if (b.zero_) return a.truncated_abs(b.val_);
  const long p = a.p_;
  const long v = std::min(a.val_, b.val_);
  const long A = std::min(a.absolute_precision(), b.absolute_precision());
  const long n = A - v;
  const mpz_class& mod = prime_power(p, n);
  mpz_class s = 0;
  if (a.val_ - v < n) s += a.mantissa_ * prime_power(p, a.val_ - v);
  if (b.val_ - v < n) s += b.mantissa_ * prime_power(p, b.val_ - v);
  s = mod_pos(s, mod);
  if (s == 0) return PadicNum::zero(p, A);
  long w = valuation_of(s, p);
  return PadicNum::from_unit(p, v + w, s / prime_power(p, w), n - w);
}

PadicNum operator*(const PadicNum& a, const PadicNum& b) {
  if (a.p_ != b.p_) throw DomainError("PadicNum: mismatched primes");
  if (a.zero_ && b.zero_) return PadicNum::zero(a.p_, sat_add(a.val_, b.val_));
  if (a.zero_) return PadicNum::zero(a.p_, sat_add(a.val_, b.val_));
  if (b.zero_) return PadicNum::zero(a.p_, sat_add(a.val_, b.val_));
  const long prec = std::min(a.prec_, b.prec_);
  PadicNum r;
  r.p_ = a.p_;
  r.zero_ = false;
  r.val_ = a.val_ + b.val_;
  r.prec_ = prec;
  r.mantissa_ = mod_pos(a.mantissa_ * b.mantissa_, prime_power(a.p_, prec));
  return r;
}

PadicNum PadicNum::inverse() const {
  if (zero_) {
    throw PrecisionError("PadicNum: division by a value that is zero to precision " + std::to_string(val_), val_);
  }
  PadicNum r = *this;
  r.val_ = -val_;
  r.mantissa_ = inverse_mod(mantissa_, prime_power(p_, prec_));
  return r;
}

PadicNum PadicNum::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  if (n == 0) return one_like(*this);
  if (zero_) return zero(p_, val_ >= kInfinitePrecision ? kInfinitePrecision : std::min(kInfinitePrecision, val_ * n));
  PadicNum r = *this;
  r.val_ = val_ * n;
  mpz_powm_ui(r.mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<unsigned long>(n),
              prime_power(p_, prec_).get_mpz_t());
  return r;
}

PadicNum PadicNum::shifted(long n) const {
  PadicNum r = *this;
  if (zero_) {
    r.val_ = val_ >= kInfinitePrecision ? kInfinitePrecision : val_ + n;
  } else {
    r.val_ += n;
  }
  return r;
}

PadicNum PadicNum::scaled(const mpq_class& q) const {
  if (q == 0) return zero(p_);
  if (zero_) {
    long v = valuation_of(q.get_num(), p_) - valuation_of(q.get_den(), p_);
    return shifted(v);
  }
  PadicNum s = from_rational(p_, q, prec_);
  return *this * s;
}

PadicNum PadicNum::plus_rational(const mpq_class& q) const {
  if (q == 0) return *this;
  long vq = valuation_of(q.get_num(), p_) - valuation_of(q.get_den(), p_);
  long a = absolute_precision();
  if (a >= kInfinitePrecision) throw DomainError("plus_rational: exact zero has no finite precision");
  // Represent q with enough digits that the sum is limited by this value only.
  long rel = std::max<long>(1, a - vq);
  return from_rational(p_, q, rel) + *this;
}

PadicNum PadicNum::truncated_abs(long abs_prec) const {
  if (zero_) return zero(p_, std::min(val_, abs_prec));
  if (abs_prec >= absolute_precision()) return *this;
  long rel = abs_prec - val_;
  if (rel <= 0) return zero(p_, abs_prec);
  PadicNum r = *this;
  r.prec_ = rel;
  r.mantissa_ = mod_pos(mantissa_, prime_power(p_, rel));
  return r;
}

PadicNum PadicNum::truncated_rel(long rel_prec) const {
  if (zero_ || rel_prec >= prec_) return *this;
  return truncated_abs(val_ + rel_prec);
}

PadicNum PadicNum::truncated_like(const PadicNum& like) const {
  if (like.zero_) return truncated_abs(like.val_);
  return truncated_abs(like.absolute_precision());
}

mpz_class PadicNum::residue(long digits) const {
  if (val_ < 0 && !zero_) throw DomainError("PadicNum::residue: value is not integral");
  const mpz_class& mod = prime_power(p_, digits);
  if (zero_) return 0;
  if (val_ >= digits) return 0;
  return mod_pos(mantissa_ * prime_power(p_, val_), mod);
}

bool operator==(const PadicNum& a, const PadicNum& b) {
  if (a.p_ != b.p_ || a.zero_ != b.zero_) return false;
  if (a.zero_) return a.val_ == b.val_;
  return a.val_ == b.val_ && a.prec_ == b.prec_ && a.mantissa_ == b.mantissa_;
}

bool agrees(const PadicNum& a, const PadicNum& b) { return (a - b).is_zero(); }

std::string PadicNum::to_string() const {
  std::ostringstream os;
  if (zero_) {
    if (is_exact_zero()) {
      os << "0";
    } else {
      os << "O(" << p_ << "^" << val_ << ")";
    }
    return os.str();
  }
  os << mantissa_.get_str();
  if (val_ != 0) os << "*" << p_ << "^" << val_;
  os << " + O(" << p_ << "^" << absolute_precision() << ")";
  return os.str();
}

mpq_class ext_valuation(const QuadExtNum& x) {
  PadicNum n = x.norm();
  if (n.is_zero()) throw PrecisionError("ext_valuation: norm is zero to precision", n.valuation());
  return mpq_class(n.valuation(), 2);
}

QuadExtNum RootPair::root_ext(int i) const {
  if (split()) return QuadExtNum(i == 0 ? first : second);
  return i == 0 ? ext_root : ext_root.conj();
}

PadicNum poly_eval(std::span<const PadicNum> coeffs, const PadicNum& x) {
  if (coeffs.empty()) return PadicNum::zero(x.prime());
  PadicNum acc = coeffs.back();
  for (size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

namespace {

std::vector<PadicNum> derivative(std::span<const PadicNum> coeffs) {
  std::vector<PadicNum> d;
  for (size_t i = 1; i < coeffs.size(); ++i) d.push_back(coeffs[i].scaled(mpq_class(static_cast<long>(i))));
  return d;
}

}  // namespace

PadicNum hensel_root(std::span<const PadicNum> coeffs, const mpz_class& seed, long precision) {
  if (coeffs.size() < 2) throw DomainError("hensel_root: polynomial must have degree >= 1");
  const long p = coeffs.front().prime();
  for (const auto& c : coeffs) {
    if (!c.is_zero() && c.valuation() < 0) throw DomainError("hensel_root: coefficients must be p-integral");
  }
  // Digits beyond the coefficients' own precision would be invented.
  for (const auto& c : coeffs) precision = std::min(precision, c.absolute_precision());
  if (precision < 1) throw PrecisionError("hensel_root: coefficients known to fewer than one digit", 1);
  const std::vector<PadicNum> dcoeffs = derivative(coeffs);
  PadicNum x = PadicNum::from_residue(p, seed, 1);
  if (!poly_eval(coeffs, x).truncated_abs(1).is_zero()) {
    throw DomainError("hensel_root: seed " + seed.get_str() + " is not a root mod " + std::to_string(p));
  }
  if (poly_eval(dcoeffs, x).truncated_abs(1).is_zero()) {
    throw DomainError("hensel_root: not a simple root (derivative vanishes mod p)");
  }
  // Work with integer residues; each step doubles the number of correct digits.
  mpz_class r = mod_pos(seed, prime_power(p, 1));
  long digits = 1;
  while (digits < precision) {
    long next = std::min(2 * digits, precision);
    PadicNum xv = PadicNum::from_residue(p, r, next);
    PadicNum fx = poly_eval(coeffs, xv);
    PadicNum dfx = poly_eval(dcoeffs, xv);
    if (!dfx.is_unit()) throw DomainError("hensel_root: derivative lost unit status during lifting");
    PadicNum step = fx / dfx;
    PadicNum nx = xv - step;
    r = nx.residue(next);
    digits = next;
  }
  return PadicNum::from_residue(p, r, precision);
}

bool is_square_residue(const mpz_class& unit, long p) {
  mpz_class pm(p);
  mpz_class u = mod_pos(unit, pm);
  if (u == 0) throw DomainError("is_square_residue: not a unit");
  return mpz_legendre(u.get_mpz_t(), pm.get_mpz_t()) == 1;
}

std::optional<PadicNum> padic_sqrt(const PadicNum& a) {
  if (a.is_zero()) throw PrecisionError("padic_sqrt: argument is zero to precision", a.valuation());
  const long p = a.prime();
  if (p == 2) throw DomainError("padic_sqrt: p = 2 is not supported");
  if (a.valuation() % 2 != 0) return std::nullopt;
  if (!is_square_residue(a.mantissa(), p)) return std::nullopt;
  const long prec = a.relative_precision();
  // Root of y^2 - u with u the unit part.
  mpz_class u0 = a.mantissa() % p;
  mpz_class seed = 0;
  for (long s = 1; s < p; ++s) {
    if ((mpz_class(s) * s - u0) % p == 0) {
      seed = s;
      break;
    }
  }
  std::vector<PadicNum> poly{-PadicNum::from_unit(p, 0, a.mantissa(), prec), PadicNum::zero(p), PadicNum::one(p, prec)};
  PadicNum r = hensel_root(poly, seed, prec);
  return r.shifted(a.valuation() / 2);
}

RootPair hecke_roots(const PadicNum& a, int k, long p, long precision) {
  if (k < 2) throw DomainError("hecke_roots: weight must be >= 2");
  if (a.prime() != p) throw DomainError("hecke_roots: prime mismatch");
  const long e = k - 1;  // valuation of the constant term p^{k-1}
  RootPair rp;
  rp.trace = a;
  rp.norm = PadicNum::one(p, precision).shifted(e);
  // Distinct slopes iff 2 val(a) < k-1.
  if (a.is_zero() && 2 * a.valuation() <= e) {
    throw PrecisionError("hecke_roots: precision of a_pi is too low to separate slopes; need a known beyond p^" +
                             std::to_string(e / 2 + 1),
                         e / 2 + 1);
  }
  if (!a.is_zero() && 2 * a.valuation() < e) {
    const long sigma = a.valuation();
    // Root y = p^sigma u with u^2 - a0 u + p^{k-1-2 sigma} = 0, u = a0 mod p.
    PadicNum a0 = a.shifted(-sigma);
    long prec = std::min(precision, a0.relative_precision());
    std::vector<PadicNum> poly{rp.norm.shifted(-2 * sigma).truncated_rel(prec), -a0, PadicNum::one(p, prec)};
    PadicNum u = hensel_root(poly, a0.mantissa() % p, prec);
    PadicNum big = u.shifted(sigma);
    rp.kind = RootPair::Kind::kSplit;
    rp.first = big;
    rp.second = rp.norm.truncated_rel(prec) / big;
    rp.slope_first = sigma;
    rp.slope_second = e - sigma;
    return rp;
  }
  // Single slope (k-1)/2: split iff the discriminant is a square.
  PadicNum disc = a * a - rp.norm.scaled(4);
  if (disc.is_zero()) {
    throw PrecisionError("hecke_roots: discriminant is zero to precision; raise the precision of a_pi",
                         disc.valuation() + 1);
  }
  rp.slope_first = mpq_class(e, 2);
  rp.slope_second = mpq_class(e, 2);
  auto s = padic_sqrt(disc);
  if (s) {
    PadicNum r0 = (a + *s).scaled(mpq_class(1, 2));
    PadicNum r1 = (a - *s).scaled(mpq_class(1, 2));
    // Order by mantissa residue mod p as a tie-break.
    if ((r1.mantissa() % p) < (r0.mantissa() % p)) std::swap(r0, r1);
    rp.kind = RootPair::Kind::kSplit;
    rp.first = r0;
    rp.second = rp.norm.truncated_rel(r0.relative_precision()) / r0;
    return rp;
  }
  rp.kind = RootPair::Kind::kNonsplit;
  auto mod = std::make_shared<const QuadExtNum::Modulus>(QuadExtNum::Modulus{a, rp.norm});
  rp.ext_root = QuadExtNum::generator(mod, PadicNum::one(p, precision));
  return rp;
}

Teichmuller teichmuller(const PadicNum& z) {
  if (!z.is_unit()) throw DomainError("teichmuller: argument must be a p-adic unit");
  const long p = z.prime();
  const long m = z.relative_precision();
  PadicNum mu = z;
  for (long i = 0; i < m; ++i) mu = mu.pow(p);
  return {mu, z / mu};
}

}  // namespace hqx
