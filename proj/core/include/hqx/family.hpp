#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hqx/hecke_spectral.hpp"
#include "hqx/qexpansion.hpp"

namespace hqx {

// floor(2 x h+ (18 (p-1) / (2 (p-2)) x + 2)).
long theta_bound(const mpq_class& sigma, long h_plus, long p);

/// sum_m c_m Z^m with Z = (w - center) / p^theta, c_m p-integral.
struct LambdaCoeff {
  long p = 0;
  long center = 0;
  long theta = 0;
  std::vector<PadicNum> series;

  static LambdaCoeff constant(const PadicNum& c, long center = 0, long theta = 0);
  bool in_ball(const mpz_class& w) const;
  // Exact in the coefficients: the result is known to the smallest absolute
  // precision among the c_m Z^m. DomainError outside the ball.
  PadicNum evaluate(const mpz_class& w) const;
  // Every c_m is p-integral.
  bool tate_condition() const;
  bool is_zero() const;
};

struct HilbertFamily {
  SplitPtr split;
  mpq_class sigma = 0;
  mpq_class sigma_prime = 0;
  long n0 = 0;
  long trace_bound = 0;
  bool monodim_asserted = false;
  std::map<TraceKey, LambdaCoeff> coeffs;
};

// The classical form at weight point n, of weight (n + 2, n + 2).
HilbertQExp specialize_family(const HilbertFamily& F, long n, long prec);
// Index shift nu -> p nu on the family level.
HilbertFamily family_v_p(const HilbertFamily& F);

struct HRecord {
  IntElem nu;
  PadicNum teich_inv;  // mu(z)^{-1}
  PadicNum one_unit;   // <z>
  LambdaCoeff a;
};

struct LambdaH {
  SplitPtr split;
  long prec = 0;
  long bound = 0;
  long n0 = 0;
  // By trace n: records with z = embed_conj(nu) (pi' not dividing nu), then
  // records with z = embed(nu) (pi not dividing nu).
  std::map<long, std::pair<std::vector<HRecord>, std::vector<HRecord>>> terms;
};

LambdaH build_lambda_h(const HilbertFamily& F, long prec);

// Coefficients before the ordinary projection; weight 2(s + 2) + 2j.
ModularQExp specialize_h_raw(const LambdaH& H, long j, long s);
// e_ord_approx(raw, depth).
ModularQExp specialize_h(const LambdaH& H, long j, long s, int depth);

// h - beta1 V_p h.
ModularQExp hida_rhs(const ModularQExp& h, const PadicNum& beta1);
struct HidaIdentity {
  ModularQExp lhs;
  ModularQExp rhs;
  bool matches = false;
};
// `stabilized` is the caller's e_g h^(p); compared with h - beta1 V_p h.
HidaIdentity hida_stabilization_identity(const ModularQExp& stabilized, const ModularQExp& h, const PadicNum& beta1);

// E0^{-1} times the pairing value.
PadicNum lp_scalar_assembly(const PadicNum& pairing_value, const OrdinaryData& od);

struct GrossZagierAssembly {
  AjScalar scalar;
  PadicNum l_p;
  PadicNum aj;  // (-1)^t t! (E0 E1 / E) L_p
};
GrossZagierAssembly gross_zagier_assembly(const PadicNum& pairing_value, const SpectralData& sd,
                                          const OrdinaryData& od, int t);

}  // namespace hqx
