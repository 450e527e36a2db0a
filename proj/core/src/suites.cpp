#include "hqx/suites.hpp"

#include "hqx/random_forms.hpp"

namespace hqx {

IdentityResult kernel_lemma_suite(int trials, long D, long p, long prec, long bound, std::uint64_t seed) {
  IdentityResult r;
  r.name = "kernel_lemma";
  r.params = "D " + std::to_string(D) + " p " + std::to_string(p) + " prec " + std::to_string(prec) + " bound " +
             std::to_string(bound);
  Rng rng(seed);
  SplitPtr s = split_prime(make_field(D), p, prec);
  std::uniform_int_distribution<int> pick_t(0, 2);
  for (int i = 0; i < trials; ++i) {
    HilbertQExp f = random_hilbert_form(s, prec, 2, bound, rng);
    const int t = pick_t(rng);
    ++r.trials;
    if (kernel_lemma_check(f, t)) {
      ++r.passes;
    } else {
      ++r.certificate_terms;
      if (r.first_failure.empty()) r.first_failure = "trial " + std::to_string(i) + " t " + std::to_string(t);
    }
  }
  return r;
}

namespace {

template <class C>
long least_precision(const BasicHilbertQExp<C>& f) {
  long m = kInfinitePrecision;
  for (const auto& kv : f.coeffs) m = std::min(m, absolute_precision_of(kv.second));
  return m;
}

long least_precision(const ModularQExp& g) {
  long m = kInfinitePrecision;
  for (const auto& kv : g.coeffs) m = std::min(m, kv.second.absolute_precision());
  return m;
}

}  // namespace

std::vector<IdentityResult> recombination_suite(int trials, long D, long p, long prec, long bound,
                                                std::uint64_t seed) {
  IdentityResult two, four, eig;
  two.name = "two_term_recombination";
  two.params = "p " + std::to_string(p) + " prec " + std::to_string(prec);
  four.name = "four_term_recombination";
  four.params = "D " + std::to_string(D) + " p " + std::to_string(p) + " prec " + std::to_string(prec) + " bound " +
                std::to_string(bound);
  eig.name = "stabilized_eigenvectors";
  eig.params = four.params;
  Rng rng(seed);
  SplitPtr s = split_prime(make_field(D), p, prec);
  auto fail = [](IdentityResult& r, const std::string& why) {
    ++r.certificate_terms;
    if (r.first_failure.empty()) r.first_failure = why;
  };
  for (int i = 0; i < trials; ++i) {
    const std::string ctx = "trial " + std::to_string(i);
    {
      ++two.trials;
      OrdinaryData od = ordinary_data(random_padic_unit(p, prec, rng), 2, prec);
      ModularQExp g = random_modular_form(p, prec, 2, bound, rng);
      TwoTermRecombination rc = two_term_recombination(g, od);
      const long expect = std::min(least_precision(rc.g0), least_precision(rc.g1)) - rc.budget;
      if (!agrees_within(rc.recombined, g, rc.recombined.bound)) {
        fail(two, ctx + ": form not reproduced");
      } else if (!rc.recombined.coeffs.empty() && least_precision(rc.recombined) != expect) {
        fail(two, ctx + ": precision " + std::to_string(least_precision(rc.recombined)) + ", expected " +
                      std::to_string(expect));
      } else {
        ++two.passes;
      }
    }
    {
      ++four.trials;
      ++eig.trials;
      // Ordinary split roots make f_ii' genuine U_pi-eigenvectors.
      SplitEigenvalue e = random_ordinary_eigenvalue(p, 2, prec, rng);
      SplitEigenvalue ep = random_ordinary_eigenvalue(p, 2, prec, rng);
      SpectralData sd = spectral_data(e.a, ep.a, 2, prec);
      HilbertQExp f = make_formal_eigenform(s, prec, random_seed(s, prec, bound, rng), e.a, ep.a, 2, bound);
      FourTermRecombination rc = four_term_recombination(f, sd);
      long least = kInfinitePrecision;
      for (const auto& st : rc.stabilized) least = std::min(least, least_precision(st));
      if (!agrees_within(rc.recombined, promote<BiquadNum>(f), rc.recombined.bound)) {
        fail(four, ctx + ": form not reproduced");
      } else if (!rc.recombined.coeffs.empty() && least_precision(rc.recombined) != least - rc.budget) {
        fail(four, ctx + ": precision " + std::to_string(least_precision(rc.recombined)) + ", expected " +
                       std::to_string(least - rc.budget));
      } else {
        ++four.passes;
      }
      HilbertRoots h = hilbert_roots(sd);
      bool ok = true;
      for (int ii = 0; ii < 4 && ok; ++ii) {
        const auto& st = rc.stabilized[ii];
        auto u = u_pi(st);
        ok = agrees_within(u, scale(st, h.alpha[ii / 2]), u.bound);
        auto up = u_pi_prime(st);
        ok = ok && agrees_within(up, scale(st, h.alpha_prime[ii % 2]), up.bound);
      }
      if (ok) {
        ++eig.passes;
      } else {
        fail(eig, ctx + ": a stabilization is not an eigenvector");
      }
    }
  }
  return {two, four, eig};
}

std::vector<PipelineOp> random_pipeline(Rng& rng, int length) {
  static const char* simple[] = {"v_pi",       "v_pi_prime", "u_pi",        "u_pi_prime",       "deplete_p",
                                 "theta",      "theta_prime", "hecke_t_pi", "hecke_t_pi_prime", "v_p"};
  std::uniform_int_distribution<int> choice(0, static_cast<int>(std::size(simple)) + 1);
  std::uniform_int_distribution<int> power(1, 2);
  std::vector<PipelineOp> ops;
  for (int i = 0; i < length; ++i) {
    int c = choice(rng);
    if (c < static_cast<int>(std::size(simple))) {
      ops.push_back({simple[c]});
    } else if (c == static_cast<int>(std::size(simple))) {
      ops.push_back({"deplete_pi"});
      ops.push_back({"theta_inverse", true, power(rng)});
    } else {
      ops.push_back({"deplete_pi_prime"});
      ops.push_back({"theta_prime_inverse", true, power(rng)});
    }
  }
  if (std::bernoulli_distribution(0.5)(rng)) {
    ops.push_back({"restrict"});
    if (std::bernoulli_distribution(0.5)(rng)) ops.push_back({"deplete_p"});
  }
  return ops;
}

HilbertQExp truncate_precision(const HilbertQExp& f, long prec, long bound) {
  HilbertQExp r = f.like();
  r.prec = prec;
  r.bound = std::min(bound, f.bound);
  for (const auto& [key, c] : f.coeffs) {
    if (key.trace <= r.bound) r.coeffs.emplace(key, c.truncated_abs(std::min(prec, c.absolute_precision())));
  }
  return r;
}

namespace {

bool key_below(const TraceKey& k, long b) { return k.trace <= b; }
bool key_below(long n, long b) { return n <= b; }

template <class Q>
bool structurally_below(const Q& lo, const Q& hi, std::string& detail) {
  const long b = lo.bound;
  if (hi.bound < b) {
    detail = "high-precision output bound " + std::to_string(hi.bound) + " below " + std::to_string(b);
    return false;
  }
  for (const auto& [key, c] : hi.coeffs) {
    if (!key_below(key, b)) continue;
    auto it = lo.coeffs.find(key);
    if (it == lo.coeffs.end()) {
      detail = "coefficient present only at high precision";
      return false;
    }
    if (c.absolute_precision() < it->second.absolute_precision() || !(c.truncated_like(it->second) == it->second)) {
      detail = "coefficient differs: " + c.to_string() + " vs " + it->second.to_string();
      return false;
    }
  }
  for (const auto& kv : lo.coeffs) {
    if (!hi.coeffs.count(kv.first)) {
      detail = "coefficient present only at low precision";
      return false;
    }
  }
  return true;
}

}  // namespace

MetamorphicOutcome metamorphic_compare(const HilbertQExp& f_hi, long prec, long bound,
                                       const std::vector<PipelineOp>& ops) {
  MetamorphicOutcome out;
  HilbertQExp f_lo = truncate_precision(f_hi, prec, bound);
  PipelineResult lo;
  try {
    lo = run_ops(f_lo, ops);
  } catch (const BoundError&) {
    return out;
  }
  out.ran = true;
  PipelineResult hi = run_ops(f_hi, ops);
  if (lo.value.index() != hi.value.index()) {
    out.detail = "output kinds differ";
    return out;
  }
  if (auto* l = std::get_if<HilbertQExp>(&lo.value)) {
    out.exact = structurally_below(*l, std::get<HilbertQExp>(hi.value), out.detail);
  } else {
    out.exact = structurally_below(std::get<ModularQExp>(lo.value), std::get<ModularQExp>(hi.value), out.detail);
  }
  return out;
}

IdentityResult precision_soundness_suite(int trials, long D, long p, long prec, long bound, std::uint64_t seed) {
  IdentityResult r;
  r.name = "precision_soundness";
  r.params = "D " + std::to_string(D) + " p " + std::to_string(p) + " prec " + std::to_string(prec) + "+2 bound " +
             std::to_string(bound) + "x2";
  Rng rng(seed);
  SplitPtr s = split_prime(make_field(D), p, prec + 2);
  std::uniform_int_distribution<int> len(1, 4);
  int attempts = 0;
  while (r.trials < trials) {
    if (++attempts > 50 * trials) break;
    HilbertQExp f = random_hilbert_form(s, prec + 2, 2, 2 * bound, rng);
    std::vector<PipelineOp> ops = random_pipeline(rng, len(rng));
    MetamorphicOutcome m = metamorphic_compare(f, prec, bound, ops);
    if (!m.ran) continue;
    ++r.trials;
    if (m.exact) {
      ++r.passes;
    } else {
      ++r.certificate_terms;
      if (r.first_failure.empty()) {
        std::string chain;
        for (const auto& op : ops) chain += op.name + (op.has_arg ? ":" + std::to_string(op.arg) : "") + " ";
        r.first_failure = chain + "-> " + m.detail;
      }
    }
  }
  return r;
}

}  // namespace hqx
