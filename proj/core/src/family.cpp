#include "hqx/family.hpp"

namespace hqx {

long theta_bound(const mpq_class& sigma, long h_plus, long p) {
  if (p < 3) throw DomainError("theta_bound: p must be >= 3");
  if (sigma < 0 || h_plus < 1) throw DomainError("theta_bound: need sigma >= 0 and h+ >= 1");
  mpq_class inner = mpq_class(18 * (p - 1), 2 * (p - 2)) * sigma + 2;
  mpq_class v = 2 * sigma * h_plus * inner;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return f.get_si();
}

// ---- LambdaCoeff ------------------------------------------------------------------

LambdaCoeff LambdaCoeff::constant(const PadicNum& c, long center, long theta) {
  LambdaCoeff l;
  l.p = c.prime();
  l.center = center;
  l.theta = theta;
  l.series.push_back(c);
  return l;
}

bool LambdaCoeff::in_ball(const mpz_class& w) const {
  mpz_class d = w - center;
  return d == 0 || valuation_of(d, p) >= theta;
}

PadicNum LambdaCoeff::evaluate(const mpz_class& w) const {
  if (!in_ball(w)) {
    throw DomainError("LambdaCoeff: weight " + w.get_str() + " is outside the ball around " +
                      std::to_string(center) + " of radius p^-" + std::to_string(theta));
  }
  const mpz_class Z = mpz_class(w - center) / prime_power(p, theta);
  PadicNum s = PadicNum::zero(p);
  mpz_class zm = 1;
  for (std::size_t m = 0; m < series.size(); ++m) {
    if (m > 0) zm *= Z;
    if (zm == 0) break;
    s = s + series[m].scaled(mpq_class(zm));
  }
  return s;
}

bool LambdaCoeff::tate_condition() const {
  for (const PadicNum& c : series) {
    if (!c.is_zero() && c.valuation() < 0) return false;
  }
  return true;
}

bool LambdaCoeff::is_zero() const {
  for (const PadicNum& c : series) {
    if (!c.is_exact_zero()) return false;
  }
  return true;
}

// ---- families --------------------------------------------------------------------

HilbertQExp specialize_family(const HilbertFamily& F, long n, long prec) {
  if (n + 2 < 2) throw DomainError("specialize_family: weight point must be >= 0");
  HilbertQExp f;
  f.split = F.split;
  f.prec = prec;
  f.k = static_cast<int>(n + 2);
  f.kp = f.k;
  f.bound = F.trace_bound;
  for (const auto& [key, a] : F.coeffs) {
    if (key.trace > F.trace_bound) continue;
    PadicNum c = a.evaluate(n);
    if (!c.is_exact_zero()) f.coeffs.emplace(key, c);
  }
  return f;
}

HilbertFamily family_v_p(const HilbertFamily& F) {
  HilbertFamily G = F;
  const long p = F.split->p();
  G.coeffs.clear();
  G.trace_bound = F.trace_bound * p;
  for (const auto& [key, a] : F.coeffs) G.coeffs.emplace(TraceKey{key.trace * p, key.y * p}, a);
  return G;
}

LambdaH build_lambda_h(const HilbertFamily& F, long prec) {
  LambdaH H;
  H.split = F.split;
  H.prec = prec;
  H.bound = F.trace_bound;
  H.n0 = F.n0;
  Embedder em(F.split, prec);
  const QuadField& K = *F.split->field();
  auto record = [&](const IntElem& nu, const PadicNum& z, const LambdaCoeff& a) {
    if (!z.is_unit()) {
      throw DomainError("build_lambda_h: embedding of (" + std::to_string(nu.x) + ", " + std::to_string(nu.y) +
                        ") is not a unit on the depleted support");
    }
    Teichmuller tz = teichmuller(z);
    return HRecord{nu, tz.mu.inverse(), tz.one_unit, a};
  };
  for (const auto& [key, a] : F.coeffs) {
    if (key.trace > F.trace_bound || a.is_zero()) continue;
    IntElem nu = K.from_key(key);
    auto& slot = H.terms[key.trace];
    if (!F.split->pi_conj_divides(nu)) slot.first.push_back(record(nu, em.embed_conj(nu), a));
    if (!F.split->pi_divides(nu)) slot.second.push_back(record(nu, em.embed(nu), a));
  }
  return H;
}

ModularQExp specialize_h_raw(const LambdaH& H, long j, long s) {
  const long p = H.split->p();
  if (j < -1 || (j + 1) % (p - 1) != 0) {
    throw DomainError("specialize_h: j must be -1 + (p-1)m >= -1, got " + std::to_string(j));
  }
  ModularQExp g;
  g.p = p;
  g.prec = H.prec;
  g.weight = static_cast<int>(2 * (s + 2) + 2 * j);
  g.bound = H.bound;
  auto side = [&](const std::vector<HRecord>& recs) {
    PadicNum acc = PadicNum::zero(p);
    for (const HRecord& r : recs) acc = acc + r.teich_inv * r.one_unit.pow(j) * r.a.evaluate(s);
    return acc;
  };
  for (const auto& [n, pr] : H.terms) {
    PadicNum c = side(pr.first).scaled(mpq_class(1, 2)) - side(pr.second).scaled(mpq_class(1, 2));
    if (!c.is_exact_zero()) g.coeffs.emplace(n, c);
  }
  return g;
}

ModularQExp specialize_h(const LambdaH& H, long j, long s, int depth) {
  return e_ord_approx(specialize_h_raw(H, j, s), depth);
}

// ---- scalar assembly ----------------------------------------------------------------

ModularQExp hida_rhs(const ModularQExp& h, const PadicNum& beta1) {
  if (beta1.is_exact_zero()) return h;
  return sub(h, scale(modular_v_p(h), beta1));
}

HidaIdentity hida_stabilization_identity(const ModularQExp& stabilized, const ModularQExp& h,
                                         const PadicNum& beta1) {
  HidaIdentity r;
  r.rhs = hida_rhs(h, beta1);
  r.lhs = stabilized;
  r.matches = agrees_within(r.lhs, r.rhs, std::min(r.lhs.bound, r.rhs.bound));
  return r;
}

PadicNum lp_scalar_assembly(const PadicNum& pairing_value, const OrdinaryData& od) {
  PadicNum e0 = euler_E0(od);
  if (e0.is_zero()) {
    throw PrecisionError("lp_scalar_assembly: E0 vanishes to precision " + std::to_string(e0.valuation()),
                         e0.valuation() + 1);
  }
  return pairing_value / e0;
}

GrossZagierAssembly gross_zagier_assembly(const PadicNum& pairing_value, const SpectralData& sd,
                                          const OrdinaryData& od, int t) {
  GrossZagierAssembly g;
  g.scalar = aj_scalar(sd, od, t);
  g.l_p = lp_scalar_assembly(pairing_value, od);
  g.aj = g.scalar.l_side * g.l_p;
  return g;
}

}  // namespace hqx
