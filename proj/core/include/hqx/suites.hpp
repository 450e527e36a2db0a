#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hqx/pipeline.hpp"
#include "hqx/random_forms.hpp"
#include "hqx/symbolic.hpp"

namespace hqx {

// Kernel lemma on random forms: restrict(theta^{-(t+1)} deplete_pi(V_pi' f))
// vanishes at every n divisible by p.
IdentityResult kernel_lemma_suite(int trials, long D, long p, long prec, long bound, std::uint64_t seed);

// Two-term (modular) and four-term (Hilbert) recombination: the form is
// reproduced, the stabilizations are U-eigenvectors where they should be, and
// precision drops by exactly the budget.
std::vector<IdentityResult> recombination_suite(int trials, long D, long p, long prec, long bound,
                                                std::uint64_t seed);

// A random operator chain that only applies theta inverses to depleted input.
std::vector<PipelineOp> random_pipeline(Rng& rng, int length);

struct MetamorphicOutcome {
  bool ran = false;  // false: the low-precision run exhausted its bound
  bool exact = false;
  std::string detail;
};
// Runs `ops` on f_hi (precision prec + 2, bound 2 * bound) and on its
// truncation to (prec, bound), then truncates the first output back and
// compares structurally.
MetamorphicOutcome metamorphic_compare(const HilbertQExp& f_hi, long prec, long bound,
                                       const std::vector<PipelineOp>& ops);
IdentityResult precision_soundness_suite(int trials, long D, long p, long prec, long bound, std::uint64_t seed);

// Truncation of every coefficient to absolute precision `prec`, and of the
// index range to `bound`.
HilbertQExp truncate_precision(const HilbertQExp& f, long prec, long bound);

}  // namespace hqx
