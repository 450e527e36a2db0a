#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "hqx/hecke_spectral.hpp"
#include "hqx/qexpansion.hpp"

namespace hqx {

// Small (D, p) with p split in Q(sqrt D) and a fundamental unit of norm -1.
struct FieldPrime {
  long D = 5;
  long p = 11;
};
const std::vector<FieldPrime>& admissible_pairs();

using Rng = std::mt19937_64;

mpz_class random_residue(long p, long digits, Rng& rng);
PadicNum random_padic_integer(long p, long prec, Rng& rng);  // may be an exact zero
PadicNum random_padic_unit(long p, long prec, Rng& rng);

// Coefficients drawn independently at every index of trace <= bound;
// `density` is the chance an index is populated at all.
HilbertQExp random_hilbert_form(const SplitPtr& s, long prec, int k, long bound, Rng& rng, double density = 1.0);

// Random seed on pi- and pi'-coprime indices, for make_formal_eigenform.
std::map<TraceKey, PadicNum> random_seed(const SplitPtr& s, long prec, long bound, Rng& rng, double density = 0.5);

ModularQExp random_modular_form(long p, long prec, int weight, long bound, Rng& rng);

// Eigenvalues drawn until hecke_roots succeeds.
SpectralData random_spectral_data(long p, int k, long prec, Rng& rng);

// Roots chosen in Z_p first (alpha0 a unit, alpha1 = p^{k-1}/alpha0), so the
// eigenvalue a = alpha0 + alpha1 is ordinary with split roots.
struct SplitEigenvalue {
  PadicNum a;
  PadicNum alpha0;
  PadicNum alpha1;
};
SplitEigenvalue random_ordinary_eigenvalue(long p, int k, long prec, Rng& rng);

}  // namespace hqx
