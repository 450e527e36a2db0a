#include "hqx/random_forms.hpp"

namespace hqx {

const std::vector<FieldPrime>& admissible_pairs() {
  static const std::vector<FieldPrime> pairs{{5, 11}, {5, 19}, {13, 17}, {5, 29}, {13, 23}, {2, 7}, {2, 17}};
  return pairs;
}

mpz_class random_residue(long p, long digits, Rng& rng) {
  // Digit by digit so that no modulo bias depends on p^digits.
  std::uniform_int_distribution<long> d(0, p - 1);
  mpz_class r = 0;
  for (long i = 0; i < digits; ++i) r = r * p + d(rng);
  return r;
}

PadicNum random_padic_integer(long p, long prec, Rng& rng) {
  return PadicNum::from_integer(p, random_residue(p, prec, rng), prec);
}

PadicNum random_padic_unit(long p, long prec, Rng& rng) {
  std::uniform_int_distribution<long> d(1, p - 1);
  mpz_class r = random_residue(p, prec - 1, rng) * p + d(rng);
  return PadicNum::from_integer(p, r, prec);
}

HilbertQExp random_hilbert_form(const SplitPtr& s, long prec, int k, long bound, Rng& rng, double density) {
  HilbertQExp f;
  f.split = s;
  f.prec = prec;
  f.k = k;
  f.kp = k;
  f.bound = bound;
  std::bernoulli_distribution keep(density);
  for (const IntElem& v : s->field()->enumerate(bound, false)) {
    if (!keep(rng)) continue;
    PadicNum c = random_padic_integer(s->p(), prec, rng);
    if (!c.is_exact_zero()) f.set(v, c);
  }
  return f;
}

std::map<TraceKey, PadicNum> random_seed(const SplitPtr& s, long prec, long bound, Rng& rng, double density) {
  std::map<TraceKey, PadicNum> seed;
  std::bernoulli_distribution keep(density);
  const QuadField& F = *s->field();
  for (const IntElem& v : F.enumerate(bound, false)) {
    if (s->pi_divides(v) || s->pi_conj_divides(v)) continue;
    if (!keep(rng)) continue;
    seed.emplace(F.key(v), random_padic_unit(s->p(), prec, rng));
  }
  // Always seed the index 1.
  seed.insert_or_assign(F.key(IntElem{1, 0}), PadicNum::one(s->p(), prec));
  return seed;
}

ModularQExp random_modular_form(long p, long prec, int weight, long bound, Rng& rng) {
  ModularQExp g;
  g.p = p;
  g.prec = prec;
  g.weight = weight;
  g.bound = bound;
  for (long n = 1; n <= bound; ++n) {
    PadicNum c = random_padic_integer(p, prec, rng);
    if (!c.is_exact_zero()) g.coeffs.emplace(n, c);
  }
  return g;
}

SpectralData random_spectral_data(long p, int k, long prec, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    try {
      return spectral_data(random_padic_integer(p, prec, rng), random_padic_integer(p, prec, rng), k, prec);
    } catch (const PrecisionError&) {
      // Slopes not separated at this precision; draw again.
    }
  }
  throw InternalCheckError("random_spectral_data: no admissible eigenvalues drawn");
}

SplitEigenvalue random_ordinary_eigenvalue(long p, int k, long prec, Rng& rng) {
  SplitEigenvalue e;
  e.alpha0 = random_padic_unit(p, prec, rng);
  e.alpha1 = PadicNum::one(p, prec).shifted(k - 1) / e.alpha0;
  e.a = e.alpha0 + e.alpha1;
  return e;
}

}  // namespace hqx
