#pragma once

#include <array>
#include <utility>
#include <vector>

#include "hqx/padic.hpp"
#include "hqx/qexpansion.hpp"

namespace hqx {

struct SpectralData {
  long p = 0;
  long prec = 0;
  int k = 2;
  PadicNum a_pi;
  PadicNum a_pi_prime;
  RootPair roots_pi;
  RootPair roots_pi_prime;
  mpq_class sigma;
  mpq_class sigma_prime;
  // Recorded, not checked: one-dimensionality of the slope-(sigma, sigma')
  // eigenspace cannot be read off q-expansions.
  bool monodim_asserted = false;

  bool ordinary_pi() const { return sigma == 0; }
  bool ordinary_pi_prime() const { return sigma_prime == 0; }
  bool nonordinary() const { return sigma > 0 && sigma_prime > 0; }
};

SpectralData spectral_data(const PadicNum& a_pi, const PadicNum& a_pi_prime, int k, long precision);
std::pair<mpq_class, mpq_class> slope_of(const SpectralData& sd);

struct OrdinaryData {
  long p = 0;
  int k0 = 2;
  PadicNum b_p;
  PadicNum beta0;  // unit root
  PadicNum beta1;  // root of valuation k0 - 1
};

OrdinaryData ordinary_data(const PadicNum& b_p, int k0, long precision);

// Hecke roots as elements of one common ring: the unprimed pair generates the
// inner extension, the primed pair the outer one.
struct HilbertRoots {
  std::array<BiquadNum, 2> alpha;
  std::array<BiquadNum, 2> alpha_prime;
};
HilbertRoots hilbert_roots(const SpectralData& sd, bool swap = false, bool swap_prime = false);

// g - beta_other V_p g.
ModularQExp stabilize_modular(const ModularQExp& g, const PadicNum& beta_other);

template <class C>
BasicHilbertQExp<C> stabilize_hilbert(const BasicHilbertQExp<C>& f, const C& alpha_i, const C& alpha_i_prime) {
  BasicHilbertQExp<C> a = sub(f, scale(v_pi(f), alpha_i));
  return sub(a, scale(v_pi_prime(a), alpha_i_prime));
}

struct TwoTermRecombination {
  ModularQExp g0;
  ModularQExp g1;
  ModularQExp recombined;
  long budget = 0;  // val(beta0 - beta1)
};
TwoTermRecombination two_term_recombination(const ModularQExp& g, const OrdinaryData& od);

struct FourTermRecombination {
  // Index 2*i + i'; entry 2*i + i' has U_pi-eigenvalue alpha_i, U_pi'-eigenvalue alpha_i'.
  std::array<BasicHilbertQExp<BiquadNum>, 4> stabilized;
  BasicHilbertQExp<BiquadNum> recombined;
  long budget = 0;  // val(alpha0 - alpha1) + val(alpha0' - alpha1'), rounded up
};
FourTermRecombination four_term_recombination(const HilbertQExp& f, const SpectralData& sd);

using PadicPoly = std::vector<PadicNum>;  // constant term first

// Q_f by symmetric functions of the roots; cross-checked against the product
// over the roots (InternalCheckError on disagreement).
PadicPoly q_f_polynomial(const SpectralData& sd);
PadicPoly q_f_symmetric(const SpectralData& sd);
PadicPoly q_f_root_product(const SpectralData& sd);
PadicPoly p_f_polynomial(const SpectralData& sd);

PadicNum euler_E0(const OrdinaryData& od);
PadicNum euler_E0_via_inverse(const OrdinaryData& od);
PadicNum euler_E0_via_power(const OrdinaryData& od);
PadicNum euler_E1(const OrdinaryData& od);
PadicNum euler_E(const SpectralData& sd, const PadicNum& beta1, int t);
PadicNum euler_E_from_roots(const SpectralData& sd, const HilbertRoots& roots, const PadicNum& beta1, int t);

struct AjScalar {
  int t = 0;
  int sign = 1;
  long t_factorial = 1;
  PadicNum E0;
  PadicNum E1;
  PadicNum E;
  PadicNum aj_side;  // (-1)^t t! E1 / E
  PadicNum l_side;   // (-1)^t t! E0 E1 / E
};
AjScalar aj_scalar(const SpectralData& sd, const OrdinaryData& od, int t);
// t = k - 1 - k0/2 after checking admissibility.
int admissible_t(int k, int k0);

bool ramanujan_check(const mpz_class& b_p, int k0, long p);

// Base-ring value of an extension element whose extension parts vanish to
// precision; InternalCheckError otherwise.
PadicNum to_base(const QuadExtNum& x, const char* what);
PadicNum to_base(const BiquadNum& x, const char* what);

}  // namespace hqx
