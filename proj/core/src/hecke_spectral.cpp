#include "hqx/hecke_spectral.hpp"

#include <cmath>

namespace hqx {

namespace {

PadicNum one_minus(const PadicNum& x, long prec) {
  if (x.is_exact_zero()) return PadicNum::one(x.prime(), prec);
  return (-x).plus_rational(1);
}

template <class B>
QuadExt<B> one_minus(const QuadExt<B>& x, long prec) {
  return QuadExt<B>(one_minus(x.c0(), prec), -x.c1(), x.modulus());
}

long ceil_half(long v) { return v >= 0 ? (v + 1) / 2 : -((-v) / 2); }

}  // namespace

PadicNum to_base(const QuadExtNum& x, const char* what) {
  if (!x.c1().is_zero()) {
    throw InternalCheckError(std::string(what) + ": value did not land in the base ring (" + x.c1().to_string() +
                             ")");
  }
  return x.c0();
}

PadicNum to_base(const BiquadNum& x, const char* what) {
  if (!coeff_is_zero(x.c1())) throw InternalCheckError(std::string(what) + ": value did not land in the base ring");
  return to_base(x.c0(), what);
}

SpectralData spectral_data(const PadicNum& a_pi, const PadicNum& a_pi_prime, int k, long precision) {
  SpectralData sd;
  sd.p = a_pi.prime();
  sd.prec = precision;
  sd.k = k;
  sd.a_pi = a_pi;
  sd.a_pi_prime = a_pi_prime;
  sd.roots_pi = hecke_roots(a_pi, k, sd.p, precision);
  sd.roots_pi_prime = hecke_roots(a_pi_prime, k, sd.p, precision);
  // val(a); an exactly vanishing eigenvalue is given the common root slope.
  sd.sigma = a_pi.is_exact_zero() ? sd.roots_pi.slope_first : mpq_class(a_pi.valuation());
  sd.sigma_prime = a_pi_prime.is_exact_zero() ? sd.roots_pi_prime.slope_first : mpq_class(a_pi_prime.valuation());
  return sd;
}

std::pair<mpq_class, mpq_class> slope_of(const SpectralData& sd) {
  return {sd.sigma, sd.sigma_prime};
}

OrdinaryData ordinary_data(const PadicNum& b_p, int k0, long precision) {
  if (!b_p.is_unit()) throw DomainError("ordinary_data: b_p must be a p-adic unit");
  if (k0 < 2) throw DomainError("ordinary_data: weight must be >= 2");
  RootPair r = hecke_roots(b_p, k0, b_p.prime(), precision);
  OrdinaryData od;
  od.p = b_p.prime();
  od.k0 = k0;
  od.b_p = b_p;
  od.beta0 = r.first;
  od.beta1 = r.second;
  if (od.beta0.valuation() != 0 || od.beta1.valuation() != k0 - 1) {
    throw InternalCheckError("ordinary_data: root valuations are not (0, k0 - 1)");
  }
  return od;
}

HilbertRoots hilbert_roots(const SpectralData& sd, bool swap, bool swap_prime) {
  HilbertRoots h;
  const RootPair& r = sd.roots_pi;
  const RootPair& rp = sd.roots_pi_prime;
  QuadExtNum a0 = r.split() ? QuadExtNum(r.first) : r.ext_root;
  QuadExtNum a1 = r.split() ? QuadExtNum(r.second) : r.ext_root.conj();
  if (swap) std::swap(a0, a1);
  h.alpha = {BiquadNum(a0), BiquadNum(a1)};
  if (rp.split()) {
    h.alpha_prime = {BiquadNum(QuadExtNum(rp.first)), BiquadNum(QuadExtNum(rp.second))};
  } else {
    auto mod = std::make_shared<const BiquadNum::Modulus>(BiquadNum::Modulus{QuadExtNum(rp.trace), QuadExtNum(rp.norm)});
    BiquadNum g = BiquadNum::generator(mod, QuadExtNum(PadicNum::one(sd.p, sd.prec)));
    h.alpha_prime = {g, g.conj()};
  }
  if (swap_prime) std::swap(h.alpha_prime[0], h.alpha_prime[1]);
  return h;
}

ModularQExp stabilize_modular(const ModularQExp& g, const PadicNum& beta_other) {
  return sub(g, scale(modular_v_p(g), beta_other));
}

TwoTermRecombination two_term_recombination(const ModularQExp& g, const OrdinaryData& od) {
  TwoTermRecombination r;
  r.g0 = stabilize_modular(g, od.beta1);
  r.g1 = stabilize_modular(g, od.beta0);
  PadicNum delta = od.beta0 - od.beta1;
  r.budget = delta.valuation();
  PadicNum c0 = od.beta0 / delta;
  PadicNum c1 = od.beta1 / delta;
  ModularQExp raw = sub(scale(r.g0, c0), scale(r.g1, c1));
  r.recombined = raw.like();
  for (const auto& [n, c] : raw.coeffs) {
    long a = std::min(r.g0.coeff(n).absolute_precision(), r.g1.coeff(n).absolute_precision());
    r.recombined.coeffs.emplace(n, a >= kInfinitePrecision ? c : c.truncated_abs(a - r.budget));
  }
  return r;
}

FourTermRecombination four_term_recombination(const HilbertQExp& f, const SpectralData& sd) {
  FourTermRecombination r;
  HilbertRoots h = hilbert_roots(sd);
  auto F = promote<BiquadNum>(f);
  for (int i = 0; i < 2; ++i) {
    // f_ii' has U_pi-eigenvalue alpha_i: remove the other root.
    for (int ip = 0; ip < 2; ++ip) {
      r.stabilized[2 * i + ip] = stabilize_hilbert(F, h.alpha[1 - i], h.alpha_prime[1 - ip]);
    }
  }
  BiquadNum delta = h.alpha[0] - h.alpha[1];
  BiquadNum delta_p = h.alpha_prime[0] - h.alpha_prime[1];
  BiquadNum inv = (delta * delta_p).inverse();
  // delta^2 and delta'^2 are the discriminants, which live in the base ring.
  PadicNum disc = sd.a_pi * sd.a_pi - sd.roots_pi.norm.scaled(4);
  PadicNum disc_p = sd.a_pi_prime * sd.a_pi_prime - sd.roots_pi_prime.norm.scaled(4);
  r.budget = ceil_half(disc.valuation()) + ceil_half(disc_p.valuation());
  BasicHilbertQExp<BiquadNum> acc;
  for (int i = 0; i < 2; ++i) {
    for (int ip = 0; ip < 2; ++ip) {
      BiquadNum c = h.alpha[i] * h.alpha_prime[ip] * inv;
      if ((i + ip) % 2) c = -c;
      auto term = scale(r.stabilized[2 * i + ip], c);
      acc = (i == 0 && ip == 0) ? term : add(acc, term);
    }
  }
  r.recombined = acc.like();
  for (const auto& [key, c] : acc.coeffs) {
    long a = kInfinitePrecision;
    for (const auto& s : r.stabilized) a = std::min(a, absolute_precision_of(s.coeff(key)));
    r.recombined.coeffs.emplace(key, a >= kInfinitePrecision ? c : truncated_abs_of(c, a - r.budget));
  }
  return r;
}

// ---- Q_f, P_f -----------------------------------------------------------------

PadicPoly q_f_symmetric(const SpectralData& sd) {
  const long p = sd.p;
  const PadicNum P = PadicNum::one(p, sd.prec).shifted(sd.k - 1);
  const PadicNum c = PadicNum::one(p, sd.prec).shifted(2 - 2 * sd.k);
  const PadicNum& a = sd.a_pi;
  const PadicNum& ap = sd.a_pi_prime;
  PadicNum aa = a * ap;
  PadicPoly q(5);
  q[0] = PadicNum::one(p, sd.prec);
  q[1] = -(aa * c);
  q[2] = (P * ap * ap + P * a * a - (P * P).scaled(2)) * c.pow(2);
  q[3] = -(aa * P * P * c.pow(3));
  q[4] = P.pow(4) * c.pow(4);
  return q;
}

PadicPoly q_f_root_product(const SpectralData& sd) {
  HilbertRoots h = hilbert_roots(sd);
  const PadicNum c = PadicNum::one(sd.p, sd.prec).shifted(2 - 2 * sd.k);
  std::vector<BiquadNum> poly{BiquadNum(QuadExtNum(PadicNum::one(sd.p, sd.prec)))};
  for (int i = 0; i < 2; ++i) {
    for (int ip = 0; ip < 2; ++ip) {
      BiquadNum r = h.alpha[i] * h.alpha_prime[ip] * BiquadNum(QuadExtNum(c));
      std::vector<BiquadNum> next(poly.size() + 1, coeff_zero<BiquadNum>(sd.p));
      for (size_t d = 0; d < poly.size(); ++d) {
        next[d] = next[d] + poly[d];
        next[d + 1] = next[d + 1] - r * poly[d];
      }
      poly = std::move(next);
    }
  }
  PadicPoly out;
  for (const auto& x : poly) out.push_back(to_base(x, "q_f_root_product"));
  return out;
}

PadicPoly q_f_polynomial(const SpectralData& sd) {
  PadicPoly sym = q_f_symmetric(sd);
  PadicPoly prod = q_f_root_product(sd);
  for (size_t i = 0; i < sym.size(); ++i) {
    if (!agrees(sym[i], prod[i])) {
      throw InternalCheckError("q_f_polynomial: coefficient " + std::to_string(i) + " differs: " + sym[i].to_string() +
                               " vs " + prod[i].to_string());
    }
  }
  return sym;
}

PadicPoly p_f_polynomial(const SpectralData& sd) {
  PadicPoly q = q_f_polynomial(sd);
  const PadicNum lin = PadicNum::one(sd.p, sd.prec).shifted(1 - sd.k);
  PadicPoly out(q.size() + 1, PadicNum::zero(sd.p));
  for (size_t i = 0; i < q.size(); ++i) {
    out[i] = out[i] + q[i];
    out[i + 1] = out[i + 1] - lin * q[i];
  }
  return out;
}

// ---- Euler factors ------------------------------------------------------------

PadicNum euler_E0_via_inverse(const OrdinaryData& od) {
  return one_minus(od.beta1 / od.beta0, od.beta0.relative_precision());
}

PadicNum euler_E0_via_power(const OrdinaryData& od) {
  return one_minus(od.beta1.pow(2).shifted(1 - od.k0), od.beta0.relative_precision());
}

PadicNum euler_E0(const OrdinaryData& od) {
  PadicNum a = euler_E0_via_inverse(od);
  PadicNum b = euler_E0_via_power(od);
  if (!agrees(a, b)) throw InternalCheckError("euler_E0: the two formulas disagree");
  return a.absolute_precision() <= b.absolute_precision() ? a : b;
}

PadicNum euler_E1(const OrdinaryData& od) {
  return one_minus(od.beta1.pow(2).shifted(-od.k0), od.beta0.relative_precision());
}

PadicNum euler_E_from_roots(const SpectralData& sd, const HilbertRoots& roots, const PadicNum& beta1, int t) {
  if (t < 0) throw DomainError("euler_E: t must be >= 0");
  if (beta1.is_exact_zero()) return PadicNum::one(sd.p, sd.prec);
  BiquadNum s(QuadExtNum(beta1.shifted(2 - 2 * sd.k + t)));
  BiquadNum acc(QuadExtNum(PadicNum::one(sd.p, sd.prec)));
  for (int i = 0; i < 2; ++i) {
    for (int ip = 0; ip < 2; ++ip) acc = acc * one_minus(roots.alpha[i] * roots.alpha_prime[ip] * s, sd.prec);
  }
  return to_base(acc, "euler_E");
}

PadicNum euler_E(const SpectralData& sd, const PadicNum& beta1, int t) {
  return euler_E_from_roots(sd, hilbert_roots(sd), beta1, t);
}

int admissible_t(int k, int k0) {
  if (k0 % 2 != 0) throw DomainError("aj_scalar: k0 must be even");
  int t = k - 1 - k0 / 2;
  if (t < 0) throw DomainError("aj_scalar: t = k - 1 - k0/2 is negative");
  if (t == 0 && !(k == 2 && k0 == 2)) throw DomainError("aj_scalar: t = 0 is only admissible for k = k0 = 2");
  return t;
}

AjScalar aj_scalar(const SpectralData& sd, const OrdinaryData& od, int t) {
  int expected = admissible_t(sd.k, od.k0);
  if (t != expected) {
    throw DomainError("aj_scalar: t must be k - 1 - k0/2 = " + std::to_string(expected) + ", got " + std::to_string(t));
  }
  AjScalar r;
  r.t = t;
  r.sign = (t % 2) ? -1 : 1;
  r.t_factorial = factorial(t);
  r.E0 = euler_E0(od);
  r.E1 = euler_E1(od);
  r.E = euler_E(sd, od.beta1, t);
  if (r.E.is_zero()) {
    throw PrecisionError("aj_scalar: E(f,g) vanishes to precision " + std::to_string(r.E.valuation()) +
                             "; raise the precision",
                         r.E.valuation() + 1);
  }
  mpq_class scalar(static_cast<long>(r.sign) * r.t_factorial);
  r.aj_side = (r.E1 / r.E).scaled(scalar);
  r.l_side = (r.E0 * r.E1 / r.E).scaled(scalar);
  return r;
}

bool ramanujan_check(const mpz_class& b_p, int k0, long p) {
  return b_p * b_p <= 4 * prime_power(p, k0 - 1);
}

}  // namespace hqx
