#include "hqx/qexpansion.hpp"

#include <cmath>

namespace hqx {

long bound_after_v_pi(const PrimeSplit& s, long bound) {
  mpq_class b = s.pi_min_lower() * bound;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  return f.get_si();
}

long bound_after_u_pi(const PrimeSplit& s, long bound) {
  mpq_class b = mpq_class(bound) / s.pi_max_upper();
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  return f.get_si();
}

void require_hilbert_bound(long bound, const std::string& op) {
  if (bound < kMinHilbertBound) {
    throw BoundError(op + ": trace bound exhausted (output bound " + std::to_string(bound) + ")", kMinHilbertBound);
  }
}

void require_modular_bound(long bound, const std::string& op) {
  if (bound < 1) throw BoundError(op + ": index bound exhausted (output bound " + std::to_string(bound) + ")", 1);
}

// ---- modular --------------------------------------------------------------

ModularQExp truncate(const ModularQExp& g, long bound) {
  ModularQExp r = g.like();
  r.bound = std::min(bound, g.bound);
  for (const auto& [n, c] : g.coeffs) {
    if (n <= r.bound) r.coeffs.emplace(n, c);
  }
  return r;
}

ModularQExp modular_v_p(const ModularQExp& g) {
  ModularQExp r = g.like();
  r.bound = g.bound * g.p;
  for (const auto& [n, c] : g.coeffs) r.coeffs.emplace(n * g.p, c);
  return r;
}

ModularQExp modular_u_p(const ModularQExp& g) {
  ModularQExp r = g.like();
  r.bound = g.bound / g.p;
  require_modular_bound(r.bound, "u_p");
  for (const auto& [n, c] : g.coeffs) {
    if (n % g.p == 0 && n / g.p <= r.bound) r.coeffs.emplace(n / g.p, c);
  }
  return r;
}

ModularQExp modular_deplete_p(const ModularQExp& g) {
  ModularQExp r = g.like();
  for (const auto& [n, c] : g.coeffs) {
    if (n % g.p != 0) r.coeffs.emplace(n, c);
  }
  return r;
}

ModularQExp hecke_t_p(const ModularQExp& g) {
  PadicNum P = PadicNum::one(g.p, g.prec).shifted(g.weight - 1);
  return add(modular_u_p(g), scale(modular_v_p(g), P));
}

long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

ModularQExp e_ord_approx(const ModularQExp& g, int depth) {
  if (depth < 0) throw DomainError("e_ord_approx: depth must be >= 0");
  const long reps = factorial(depth);
  // Bound needed for at least the index 1 to survive: p^{reps}.
  mpz_class need = prime_power(g.p, reps);
  if (need > g.bound) {
    throw BoundError("e_ord_approx: depth " + std::to_string(depth) + " needs bound >= " + need.get_str() +
                         ", have " + std::to_string(g.bound),
                     need.fits_slong_p() ? need.get_si() : -1);
  }
  ModularQExp r = g;
  for (long i = 0; i < reps; ++i) r = modular_u_p(r);
  return r;
}

// ---- Hecke ------------------------------------------------------------------

HilbertQExp hecke_t_pi(const HilbertQExp& f, int k) {
  PadicNum P = PadicNum::one(f.p(), f.prec).shifted(k - 1);
  return add(u_pi(f), scale(v_pi(f), P));
}

HilbertQExp hecke_t_pi_prime(const HilbertQExp& f, int k) {
  PadicNum P = PadicNum::one(f.p(), f.prec).shifted(k - 1);
  return add(u_pi_prime(f), scale(v_pi_prime(f), P));
}

// ---- theta operators ------------------------------------------------------

namespace {

template <class Fn>
HilbertQExp map_coeffs(const HilbertQExp& f, Fn&& fn) {
  HilbertQExp r = f.like();
  for (const auto& [key, c] : f.coeffs) r.coeffs.emplace(key, fn(f.index(key), c));
  return r;
}

}  // namespace

HilbertQExp theta(const HilbertQExp& f) {
  Embedder em(f.split, f.prec);
  HilbertQExp r = map_coeffs(f, [&](const IntElem& v, const PadicNum& c) { return em.embed(v) * c; });
  r.k += 2;
  return r;
}

HilbertQExp theta_prime(const HilbertQExp& f) {
  Embedder em(f.split, f.prec);
  HilbertQExp r = map_coeffs(f, [&](const IntElem& v, const PadicNum& c) { return em.embed_conj(v) * c; });
  r.kp += 2;
  return r;
}

namespace {

HilbertQExp theta_inverse_impl(const HilbertQExp& f, int power, bool conj) {
  if (power < 1) throw DomainError("theta inverse: power must be >= 1");
  Embedder em(f.split, f.prec);
  HilbertQExp r = f.like();
  for (const auto& [key, c] : f.coeffs) {
    IntElem v = f.index(key);
    bool divisible = conj ? f.split->pi_conj_divides(v) : f.split->pi_divides(v);
    if (divisible) {
      if (!c.is_zero()) {
        throw DomainError(std::string("theta") + (conj ? "_prime" : "") + "_inverse: input is not " +
                          (conj ? "pi'" : "pi") + "-depleted at index (" + std::to_string(v.x) + ", " +
                          std::to_string(v.y) + ")");
      }
      continue;
    }
    PadicNum e = conj ? em.embed_conj(v) : em.embed(v);
    r.coeffs.emplace(key, c * e.pow(-power));
  }
  if (conj) {
    r.kp -= 2 * power;
  } else {
    r.k -= 2 * power;
  }
  return r;
}

}  // namespace

HilbertQExp theta_inverse(const HilbertQExp& f, int power) { return theta_inverse_impl(f, power, false); }
HilbertQExp theta_prime_inverse(const HilbertQExp& f, int power) { return theta_inverse_impl(f, power, true); }

ModularQExp restrict_to_diagonal(const HilbertQExp& f) {
  ModularQExp g;
  g.p = f.p();
  g.prec = f.prec;
  g.weight = f.k + f.kp;
  g.bound = f.bound;
  for (const auto& [key, c] : f.coeffs) {
    auto it = g.coeffs.find(key.trace);
    if (it == g.coeffs.end()) {
      g.coeffs.emplace(key.trace, c);
    } else {
      it->second = it->second + c;
    }
  }
  return g;
}

// ---- eigenforms -------------------------------------------------------------

PiDecomposition decompose_index(const PrimeSplit& s, const IntElem& nu) {
  PiDecomposition d;
  d.rest = nu;
  while (s.pi_divides(d.rest)) {
    d.rest = s.div_pi(d.rest);
    ++d.i;
  }
  while (s.pi_conj_divides(d.rest)) {
    d.rest = s.div_pi_conj(d.rest);
    ++d.j;
  }
  return d;
}

namespace {

// A_0 = 1, A_1 = a, A_{i+1} = a A_i - P A_{i-1}.
std::vector<PadicNum> hecke_sequence(const PadicNum& a, const PadicNum& P, long one_prec, long n) {
  std::vector<PadicNum> A{PadicNum::one(a.prime(), one_prec)};
  if (n >= 1) A.push_back(a);
  for (long i = 2; i <= n; ++i) A.push_back(a * A[i - 1] - P * A[i - 2]);
  return A;
}

}  // namespace

HilbertQExp make_formal_eigenform(const SplitPtr& s, long prec, const std::map<TraceKey, PadicNum>& seed,
                                  const PadicNum& a_pi, const PadicNum& a_pi_prime, int k, long bound) {
  const QuadField& F = *s->field();
  HilbertQExp f;
  f.split = s;
  f.prec = prec;
  f.k = k;
  f.kp = k;
  f.bound = bound;
  f.cuspidal = true;
  for (const auto& [key, c] : seed) {
    IntElem v = F.from_key(key);
    if (s->pi_divides(v) || s->pi_conj_divides(v)) {
      throw DomainError("make_formal_eigenform: seed index (" + std::to_string(v.x) + ", " + std::to_string(v.y) +
                        ") is divisible by pi or pi'");
    }
  }
  const PadicNum P = PadicNum::one(s->p(), prec).shifted(k - 1);
  // Exponents are bounded by log_p of the largest norm, itself <= (bound/2)^2.
  long emax = 1;
  for (double n = static_cast<double>(bound) * bound / 4; n >= s->p(); n /= s->p()) ++emax;
  const auto A = hecke_sequence(a_pi, P, prec, emax);
  const auto Ap = hecke_sequence(a_pi_prime, P, prec, emax);
  for (const IntElem& nu : F.enumerate(bound, false)) {
    PiDecomposition d = decompose_index(*s, nu);
    auto it = seed.find(F.key(d.rest));
    if (it == seed.end()) continue;
    PadicNum c = A[d.i] * Ap[d.j] * it->second;
    if (c.is_exact_zero()) continue;
    f.set(nu, c);
  }
  return f;
}

// ---- primitive vector -------------------------------------------------------

PrimitiveVector primitive_vector(const HilbertQExp& f_depleted, int n_prime) {
  if (n_prime < 0) throw DomainError("primitive_vector: n' must be >= 0");
  PrimitiveVector v;
  v.n_prime = n_prime;
  mpz_class binom = 1, fact = 1;
  for (int j = 0; j <= n_prime; ++j) {
    if (j > 0) {
      binom = binom * (n_prime - j + 1) / j;
      fact *= j;
    }
    mpz_class c = fact * binom;
    if (j % 2) c = -c;
    HilbertQExp comp = theta_prime_inverse(f_depleted, j + 1);
    // c may be divisible by p; scaling by the exact integer keeps precision.
    HilbertQExp scaled = comp.like();
    for (const auto& [key, x] : comp.coeffs) scaled.coeffs.emplace(key, x.scaled(mpq_class(c)));
    v.components.push_back(std::move(scaled));
  }
  return v;
}

PrimitiveVector ladder_derivative(const PrimitiveVector& v) {
  PrimitiveVector d;
  d.n_prime = v.n_prime;
  for (int j = 0; j <= v.n_prime; ++j) {
    HilbertQExp t = theta_prime(v.components[j]);
    if (j > 0) {
      HilbertQExp prev = v.components[j - 1];
      HilbertQExp sc = prev.like();
      for (const auto& [key, x] : prev.coeffs) sc.coeffs.emplace(key, x.scaled(mpq_class(v.n_prime - j + 1)));
      t = add(t, sc);
    }
    d.components.push_back(std::move(t));
  }
  return d;
}

// ---- Abel-Jacobi integrand and the kernel lemma --------------------------------

ModularQExp aj_integrand(const HilbertQExp& f, int t) {
  if (t < 0) throw DomainError("aj_integrand: t must be >= 0");
  ModularQExp a = restrict_to_diagonal(theta_prime_inverse(deplete_pi_prime(f), t + 1));
  ModularQExp b = restrict_to_diagonal(theta_inverse(deplete_pi(f), t + 1));
  ModularQExp d = sub(a, b);
  ModularQExp r = d.like();
  for (const auto& [n, c] : d.coeffs) r.coeffs.emplace(n, c.scaled(mpq_class(1, 2)));
  return r;
}

bool kernel_lemma_check(const HilbertQExp& f, int t) {
  HilbertQExp g = deplete_pi(v_pi_prime(f));
  ModularQExp h = restrict_to_diagonal(theta_inverse(g, t + 1));
  for (const auto& [n, c] : h.coeffs) {
    if (n % f.p() == 0 && !c.is_zero()) return false;
  }
  return true;
}

}  // namespace hqx
