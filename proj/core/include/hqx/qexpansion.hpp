#pragma once

#include <map>
#include <string>
#include <vector>

#include "hqx/padic.hpp"
#include "hqx/quad_field.hpp"

namespace hqx {

// Coefficient rings: PadicNum, and one or two quadratic extensions of it for
// stabilizations at non-split Hecke roots.
template <class C>
C coeff_zero(long p);
template <>
inline PadicNum coeff_zero<PadicNum>(long p) {
  return PadicNum::zero(p);
}
template <>
inline QuadExtNum coeff_zero<QuadExtNum>(long p) {
  return QuadExtNum(PadicNum::zero(p));
}
template <>
inline BiquadNum coeff_zero<BiquadNum>(long p) {
  return BiquadNum(QuadExtNum(PadicNum::zero(p)));
}

template <class C>
C lift_coeff(const PadicNum& x);
template <>
inline PadicNum lift_coeff<PadicNum>(const PadicNum& x) {
  return x;
}
template <>
inline QuadExtNum lift_coeff<QuadExtNum>(const PadicNum& x) {
  return QuadExtNum(x);
}
template <>
inline BiquadNum lift_coeff<BiquadNum>(const PadicNum& x) {
  return BiquadNum(QuadExtNum(x));
}

inline bool coeff_is_zero(const PadicNum& x) { return x.is_zero(); }
template <class B>
bool coeff_is_zero(const QuadExt<B>& x) {
  return coeff_is_zero(x.c0()) && coeff_is_zero(x.c1());
}

/// Truncated Hilbert q-expansion at the standard cusp.
///
/// Every totally positive index with trace <= bound is known: an absent key
/// means an exactly zero coefficient. Indices above the bound are unknown.
template <class C>
struct BasicHilbertQExp {
  SplitPtr split;
  long prec = 0;  // nominal relative precision of the coefficients
  int k = 2;
  int kp = 2;
  long bound = 0;
  bool cuspidal = true;
  std::map<TraceKey, C> coeffs;

  long p() const { return split->p(); }
  const QuadField& field() const { return *split->field(); }
  C coeff(const TraceKey& key) const {
    auto it = coeffs.find(key);
    return it == coeffs.end() ? coeff_zero<C>(p()) : it->second;
  }
  C coeff(const IntElem& v) const { return coeff(field().key(v)); }
  IntElem index(const TraceKey& key) const { return field().from_key(key); }
  void set(const IntElem& v, C c) { coeffs.insert_or_assign(field().key(v), std::move(c)); }
  // Same metadata, no coefficients.
  BasicHilbertQExp like() const {
    BasicHilbertQExp r;
    r.split = split;
    r.prec = prec;
    r.k = k;
    r.kp = kp;
    r.bound = bound;
    r.cuspidal = cuspidal;
    return r;
  }
};

using HilbertQExp = BasicHilbertQExp<PadicNum>;

/// Truncated classical q-expansion, sum over 0 <= n <= bound.
template <class C>
struct BasicModularQExp {
  long p = 0;
  long prec = 0;
  int weight = 2;
  long bound = 0;
  std::map<long, C> coeffs;

  C coeff(long n) const {
    auto it = coeffs.find(n);
    return it == coeffs.end() ? coeff_zero<C>(p) : it->second;
  }
  BasicModularQExp like() const {
    BasicModularQExp r;
    r.p = p;
    r.prec = prec;
    r.weight = weight;
    r.bound = bound;
    return r;
  }
};

using ModularQExp = BasicModularQExp<PadicNum>;

// Smallest trace of a nonzero totally positive integer is 2 (the index 1).
inline constexpr long kMinHilbertBound = 2;

// ---- bound rules ------------------------------------------------------------

long bound_after_v_pi(const PrimeSplit& s, long bound);
long bound_after_u_pi(const PrimeSplit& s, long bound);
void require_hilbert_bound(long bound, const std::string& op);
void require_modular_bound(long bound, const std::string& op);

// ---- generic (coefficient-ring agnostic) operators --------------------------

template <class C>
BasicHilbertQExp<C> truncate(const BasicHilbertQExp<C>& f, long bound) {
  BasicHilbertQExp<C> r = f.like();
  r.bound = std::min(bound, f.bound);
  for (const auto& [key, c] : f.coeffs) {
    if (key.trace <= r.bound) r.coeffs.emplace(key, c);
  }
  return r;
}

template <class C>
BasicHilbertQExp<C> add(const BasicHilbertQExp<C>& a, const BasicHilbertQExp<C>& b) {
  BasicHilbertQExp<C> r = a.like();
  r.bound = std::min(a.bound, b.bound);
  r.cuspidal = a.cuspidal && b.cuspidal;
  for (const auto& [key, c] : a.coeffs) {
    if (key.trace <= r.bound) r.coeffs.emplace(key, c);
  }
  for (const auto& [key, c] : b.coeffs) {
    if (key.trace > r.bound) continue;
    auto it = r.coeffs.find(key);
    if (it == r.coeffs.end()) {
      r.coeffs.emplace(key, c);
    } else {
      it->second = it->second + c;
    }
  }
  return r;
}

template <class C>
BasicHilbertQExp<C> scale(const BasicHilbertQExp<C>& f, const C& s) {
  BasicHilbertQExp<C> r = f.like();
  for (const auto& [key, c] : f.coeffs) r.coeffs.emplace(key, s * c);
  return r;
}

template <class C>
BasicHilbertQExp<C> negate(const BasicHilbertQExp<C>& f) {
  BasicHilbertQExp<C> r = f.like();
  for (const auto& [key, c] : f.coeffs) r.coeffs.emplace(key, -c);
  return r;
}

template <class C>
BasicHilbertQExp<C> sub(const BasicHilbertQExp<C>& a, const BasicHilbertQExp<C>& b) {
  return add(a, negate(b));
}

// Index multiplication by pi, pi' or p.
template <class C>
BasicHilbertQExp<C> v_pi(const BasicHilbertQExp<C>& f) {
  BasicHilbertQExp<C> r = f.like();
  r.bound = bound_after_v_pi(*f.split, f.bound);
  require_hilbert_bound(r.bound, "v_pi");
  for (const auto& [key, c] : f.coeffs) {
    IntElem mu = f.split->times_pi(f.index(key));
    if (f.field().trace(mu) <= r.bound) r.set(mu, c);
  }
  return r;
}

template <class C>
BasicHilbertQExp<C> v_pi_prime(const BasicHilbertQExp<C>& f) {
  BasicHilbertQExp<C> r = f.like();
  r.bound = bound_after_v_pi(*f.split, f.bound);
  require_hilbert_bound(r.bound, "v_pi_prime");
  for (const auto& [key, c] : f.coeffs) {
    IntElem mu = f.split->times_pi_conj(f.index(key));
    if (f.field().trace(mu) <= r.bound) r.set(mu, c);
  }
  return r;
}

template <class C>
BasicHilbertQExp<C> v_p(const BasicHilbertQExp<C>& f) {
  BasicHilbertQExp<C> r = f.like();
  r.bound = f.bound * f.p();
  for (const auto& [key, c] : f.coeffs) r.coeffs.emplace(TraceKey{key.trace * f.p(), key.y * f.p()}, c);
  return r;
}

// Index division: coefficient at nu is a_{pi nu}.
template <class C>
BasicHilbertQExp<C> u_pi(const BasicHilbertQExp<C>& f) {
  BasicHilbertQExp<C> r = f.like();
  r.bound = bound_after_u_pi(*f.split, f.bound);
  require_hilbert_bound(r.bound, "u_pi");
  for (const auto& [key, c] : f.coeffs) {
    IntElem mu = f.index(key);
    if (!f.split->pi_divides(mu)) continue;
    IntElem nu = f.split->div_pi(mu);
    if (f.field().trace(nu) <= r.bound) r.set(nu, c);
  }
  return r;
}

template <class C>
BasicHilbertQExp<C> u_pi_prime(const BasicHilbertQExp<C>& f) {
  BasicHilbertQExp<C> r = f.like();
  r.bound = bound_after_u_pi(*f.split, f.bound);
  require_hilbert_bound(r.bound, "u_pi_prime");
  for (const auto& [key, c] : f.coeffs) {
    IntElem mu = f.index(key);
    if (!f.split->pi_conj_divides(mu)) continue;
    IntElem nu = f.split->div_pi_conj(mu);
    if (f.field().trace(nu) <= r.bound) r.set(nu, c);
  }
  return r;
}

template <class C>
BasicHilbertQExp<C> u_p(const BasicHilbertQExp<C>& f) {
  BasicHilbertQExp<C> r = f.like();
  const long p = f.p();
  r.bound = f.bound / p;
  require_hilbert_bound(r.bound, "u_p");
  for (const auto& [key, c] : f.coeffs) {
    IntElem mu = f.index(key);
    if (mu.x % p != 0 || mu.y % p != 0) continue;
    TraceKey nk{key.trace / p, key.y / p};
    if (nk.trace <= r.bound) r.coeffs.emplace(nk, c);
  }
  return r;
}

template <class C>
BasicHilbertQExp<C> deplete_pi(const BasicHilbertQExp<C>& f) {
  BasicHilbertQExp<C> r = f.like();
  for (const auto& [key, c] : f.coeffs) {
    if (!f.split->pi_divides(f.index(key))) r.coeffs.emplace(key, c);
  }
  return r;
}

template <class C>
BasicHilbertQExp<C> deplete_pi_prime(const BasicHilbertQExp<C>& f) {
  BasicHilbertQExp<C> r = f.like();
  for (const auto& [key, c] : f.coeffs) {
    if (!f.split->pi_conj_divides(f.index(key))) r.coeffs.emplace(key, c);
  }
  return r;
}

template <class C>
BasicHilbertQExp<C> deplete_p(const BasicHilbertQExp<C>& f) {
  BasicHilbertQExp<C> r = f.like();
  const long p = f.p();
  for (const auto& [key, c] : f.coeffs) {
    IntElem v = f.index(key);
    if (v.x % p != 0 || v.y % p != 0) r.coeffs.emplace(key, c);
  }
  return r;
}

// Equality of coefficients to known precision, over all indices of trace <= bound.
template <class C>
bool agrees_within(const BasicHilbertQExp<C>& a, const BasicHilbertQExp<C>& b, long bound,
                   std::string* first_mismatch = nullptr) {
  auto check = [&](const TraceKey& key) {
    if (key.trace > bound) return true;
    if (agrees(a.coeff(key), b.coeff(key))) return true;
    if (first_mismatch) *first_mismatch = "trace " + std::to_string(key.trace) + " y " + std::to_string(key.y);
    return false;
  };
  for (const auto& kv : a.coeffs) {
    if (!check(kv.first)) return false;
  }
  for (const auto& kv : b.coeffs) {
    if (!check(kv.first)) return false;
  }
  return true;
}

// Structural equality (values and precisions) over indices of trace <= bound.
template <class C>
bool identical_within(const BasicHilbertQExp<C>& a, const BasicHilbertQExp<C>& b, long bound) {
  for (const auto& kv : a.coeffs) {
    if (kv.first.trace <= bound && !(b.coeff(kv.first) == kv.second)) return false;
  }
  for (const auto& kv : b.coeffs) {
    if (kv.first.trace <= bound && !(a.coeff(kv.first) == kv.second)) return false;
  }
  return true;
}

template <class C>
bool agrees_within(const BasicModularQExp<C>& a, const BasicModularQExp<C>& b, long bound) {
  for (const auto& kv : a.coeffs) {
    if (kv.first <= bound && !agrees(kv.second, b.coeff(kv.first))) return false;
  }
  for (const auto& kv : b.coeffs) {
    if (kv.first <= bound && !agrees(kv.second, a.coeff(kv.first))) return false;
  }
  return true;
}

template <class C>
bool identical_within(const BasicModularQExp<C>& a, const BasicModularQExp<C>& b, long bound) {
  for (const auto& kv : a.coeffs) {
    if (kv.first <= bound && !(b.coeff(kv.first) == kv.second)) return false;
  }
  for (const auto& kv : b.coeffs) {
    if (kv.first <= bound && !(a.coeff(kv.first) == kv.second)) return false;
  }
  return true;
}

template <class C>
BasicHilbertQExp<C> promote(const HilbertQExp& f) {
  BasicHilbertQExp<C> r;
  r.split = f.split;
  r.prec = f.prec;
  r.k = f.k;
  r.kp = f.kp;
  r.bound = f.bound;
  r.cuspidal = f.cuspidal;
  for (const auto& [key, c] : f.coeffs) r.coeffs.emplace(key, lift_coeff<C>(c));
  return r;
}

// ---- modular expansions -----------------------------------------------------

template <class C>
BasicModularQExp<C> add(const BasicModularQExp<C>& a, const BasicModularQExp<C>& b) {
  BasicModularQExp<C> r = a.like();
  r.bound = std::min(a.bound, b.bound);
  for (const auto& [n, c] : a.coeffs) {
    if (n <= r.bound) r.coeffs.emplace(n, c);
  }
  for (const auto& [n, c] : b.coeffs) {
    if (n > r.bound) continue;
    auto it = r.coeffs.find(n);
    if (it == r.coeffs.end()) {
      r.coeffs.emplace(n, c);
    } else {
      it->second = it->second + c;
    }
  }
  return r;
}

template <class C>
BasicModularQExp<C> scale(const BasicModularQExp<C>& g, const C& s) {
  BasicModularQExp<C> r = g.like();
  for (const auto& [n, c] : g.coeffs) r.coeffs.emplace(n, s * c);
  return r;
}

template <class C>
BasicModularQExp<C> sub(const BasicModularQExp<C>& a, const BasicModularQExp<C>& b) {
  BasicModularQExp<C> nb = b.like();
  for (const auto& [n, c] : b.coeffs) nb.coeffs.emplace(n, -c);
  return add(a, nb);
}

ModularQExp truncate(const ModularQExp& g, long bound);
ModularQExp modular_v_p(const ModularQExp& g);
ModularQExp modular_u_p(const ModularQExp& g);
ModularQExp modular_deplete_p(const ModularQExp& g);
// T_p = U_p + p^{k0-1} V_p with k0 = g.weight.
ModularQExp hecke_t_p(const ModularQExp& g);

/// U_p^{depth!} g: finite stand-in for the ordinary projector.
ModularQExp e_ord_approx(const ModularQExp& g, int depth);
long factorial(int n);

// ---- operators needing the p-adic embeddings (PadicNum coefficients) --------

HilbertQExp hecke_t_pi(const HilbertQExp& f, int k);
HilbertQExp hecke_t_pi_prime(const HilbertQExp& f, int k);

HilbertQExp theta(const HilbertQExp& f);
HilbertQExp theta_prime(const HilbertQExp& f);
// Division by embed(nu)^power (resp. embed_conj); input must be pi-depleted
// (resp. pi'-depleted).
HilbertQExp theta_inverse(const HilbertQExp& f, int power);
HilbertQExp theta_prime_inverse(const HilbertQExp& f, int power);

ModularQExp restrict_to_diagonal(const HilbertQExp& f);

/// Formal eigenform of T_pi, T_pi' with the given eigenvalues, extended from a
/// seed on indices prime to pi and pi' by the Hecke recursions.
HilbertQExp make_formal_eigenform(const SplitPtr& s, long prec, const std::map<TraceKey, PadicNum>& seed,
                                  const PadicNum& a_pi, const PadicNum& a_pi_prime, int k, long bound);

// Exponents (i, j) and the cofactor of nu = pi^i pi'^j nu0.
struct PiDecomposition {
  long i = 0;
  long j = 0;
  IntElem rest;
};
PiDecomposition decompose_index(const PrimeSplit& s, const IntElem& nu);

struct PrimitiveVector {
  int n_prime = 0;
  std::vector<HilbertQExp> components;  // component j multiplies omega^n omega'^{n'-j} eta'^j
};
PrimitiveVector primitive_vector(const HilbertQExp& f_depleted, int n_prime);
// theta' along the eta' ladder; for a primitive of f this is (f, 0, ..., 0).
PrimitiveVector ladder_derivative(const PrimitiveVector& v);

ModularQExp aj_integrand(const HilbertQExp& f, int t);
bool kernel_lemma_check(const HilbertQExp& f, int t);

}  // namespace hqx
