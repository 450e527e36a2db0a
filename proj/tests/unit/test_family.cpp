#include <gtest/gtest.h>

#include "hqx/family.hpp"
#include "hqx/random_forms.hpp"

using namespace hqx;

namespace {

PadicNum I(long p, long n, long prec = 4) { return PadicNum::from_integer(p, n, prec); }

HilbertFamily constant_family(const SplitPtr& s, long prec, long bound, Rng& rng) {
  HilbertFamily F;
  F.split = s;
  F.trace_bound = bound;
  for (const IntElem& nu : s->field()->enumerate(bound, false)) {
    F.coeffs.emplace(s->field()->key(nu), LambdaCoeff::constant(random_padic_integer(s->p(), prec, rng)));
  }
  return F;
}

// Families whose coefficients are integer polynomials in Z = (w - n0) / p^theta.
HilbertFamily polynomial_family(const SplitPtr& s, long prec, long bound, long n0, long theta, Rng& rng,
                                std::map<TraceKey, std::vector<long>>* ints) {
  HilbertFamily F;
  F.split = s;
  F.trace_bound = bound;
  F.n0 = n0;
  for (const IntElem& nu : s->field()->enumerate(bound, false)) {
    LambdaCoeff a;
    a.p = s->p();
    a.center = n0;
    a.theta = theta;
    std::vector<long> cs;
    for (int m = 0; m < 3; ++m) {
      long c = static_cast<long>(rng() % 200) - 100;
      cs.push_back(c);
      a.series.push_back(c == 0 ? PadicNum::zero(s->p()) : I(s->p(), c, prec));
    }
    (*ints)[s->field()->key(nu)] = cs;
    F.coeffs.emplace(s->field()->key(nu), a);
  }
  return F;
}

}  // namespace

TEST(ThetaBound, Examples) {
  EXPECT_EQ(theta_bound(0, 1, 11), 0);
  EXPECT_EQ(theta_bound(1, 1, 11), 24);
  EXPECT_EQ(theta_bound(mpq_class(1, 2), 1, 11), 7);
  // p = 7, sigma = 2, h = 2: floor(8 * (54/5 * 2 + 2)) = floor(188.8).
  EXPECT_EQ(theta_bound(2, 2, 7), 188);
  EXPECT_THROW(theta_bound(-1, 1, 11), DomainError);
}

TEST(LambdaCoeff, EvaluateAgainstIntegers) {
  auto s = split_prime(make_field(5), 11, 4);
  Rng rng(1);
  std::map<TraceKey, std::vector<long>> ints;
  HilbertFamily F = polynomial_family(s, 4, 10, 3, 1, rng, &ints);
  for (long w : {3L, 14L, 25L, -8L, 3L + 121L}) {
    mpz_class Z = mpz_class(w - 3) / 11;
    for (const auto& [key, a] : F.coeffs) {
      EXPECT_TRUE(a.tate_condition());
      const auto& cs = ints.at(key);
      mpz_class expect = cs[0] + cs[1] * Z + cs[2] * Z * Z;
      PadicNum got = a.evaluate(w);
      PadicNum want = expect == 0 ? PadicNum::zero(11) : PadicNum::from_integer(11, expect, 4);
      EXPECT_TRUE(agrees(got, want));
      // No precision lost beyond the coefficients' own.
      if (!got.is_zero()) EXPECT_GE(got.absolute_precision(), 4);
    }
  }
}

TEST(LambdaCoeff, Ball) {
  LambdaCoeff a = LambdaCoeff::constant(I(11, 5), 0, 2);
  EXPECT_TRUE(a.in_ball(0));
  EXPECT_TRUE(a.in_ball(121));
  EXPECT_FALSE(a.in_ball(11));
  EXPECT_THROW(a.evaluate(11), DomainError);
  EXPECT_TRUE(agrees(a.evaluate(242), I(11, 5)));
  LambdaCoeff b = LambdaCoeff::constant(PadicNum::from_rational(11, mpq_class(1, 11), 3));
  EXPECT_FALSE(b.tate_condition());
  EXPECT_TRUE(LambdaCoeff::constant(PadicNum::zero(11)).is_zero());
}

TEST(Family, SpecializationCommutesWithVP) {
  auto s = split_prime(make_field(5), 11, 4);
  Rng rng(2);
  std::map<TraceKey, std::vector<long>> ints;
  HilbertFamily F = polynomial_family(s, 4, 12, 2, 1, rng, &ints);
  for (long n : {2L, 13L}) {
    HilbertQExp a = specialize_family(family_v_p(F), n, 4);
    HilbertQExp b = v_p(specialize_family(F, n, 4));
    EXPECT_EQ(a.bound, b.bound);
    EXPECT_TRUE(identical_within(a, b, a.bound));
    EXPECT_EQ(a.k, n + 2);
  }
}

TEST(LambdaH, SupportSplitsBySide) {
  auto s = split_prime(make_field(5), 11, 3);
  HilbertFamily F;
  F.split = s;
  F.trace_bound = 20;
  F.coeffs.emplace(s->field()->key({1, 0}), LambdaCoeff::constant(I(11, 7, 3)));
  F.coeffs.emplace(s->field()->key(s->pi()), LambdaCoeff::constant(I(11, 5, 3)));
  LambdaH H = build_lambda_h(F, 3);
  // Index 1: one record on each side, cancelling at n = 2.
  ASSERT_EQ(H.terms.at(2).first.size(), 1u);
  ASSERT_EQ(H.terms.at(2).second.size(), 1u);
  // pi divides 4 + sqrt5, pi' does not: only the conjugate-embedding side.
  const auto& t8 = H.terms.at(8);
  EXPECT_EQ(t8.first.size(), 1u);
  EXPECT_EQ(t8.second.size(), 0u);
  ModularQExp g = specialize_h_raw(H, -1, 0);
  EXPECT_TRUE(g.coeff(2).is_zero());
  EXPECT_FALSE(g.coeff(8).is_zero());
}

TEST(LambdaH, TeichmullerCollapse) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    PadicNum z = random_padic_unit(11, 5, rng);
    Teichmuller t = teichmuller(z);
    for (long j : {-1L, 9L, 19L, 29L}) {
      EXPECT_TRUE(agrees(t.mu.inverse() * t.one_unit.pow(j), z.pow(j))) << j;
    }
  }
}

TEST(LambdaH, PathEqualityWithIntegrand) {
  auto s = split_prime(make_field(5), 11, 3);
  Rng rng(4);
  HilbertFamily F = constant_family(s, 3, 30, rng);
  LambdaH H = build_lambda_h(F, 3);
  HilbertQExp fs = specialize_family(F, 0, 3);
  ModularQExp raw = specialize_h_raw(H, -1, 0);
  ModularQExp aj = aj_integrand(fs, 0);
  EXPECT_TRUE(agrees_within(raw, aj, 30));
  EXPECT_EQ(raw.weight, 2);
}

TEST(LambdaH, PositiveJAgainstPowers) {
  auto s = split_prime(make_field(5), 11, 3);
  Rng rng(5);
  HilbertFamily F = constant_family(s, 3, 20, rng);
  LambdaH H = build_lambda_h(F, 3);
  ModularQExp g = specialize_h_raw(H, 9, 1);
  EXPECT_EQ(g.weight, 2 * 3 + 18);
  Embedder em(s, 3);
  for (long n = 2; n <= 20; ++n) {
    PadicNum acc = PadicNum::zero(11);
    for (const IntElem& nu : s->field()->enumerate(n, false)) {
      if (s->field()->trace(nu) != n) continue;
      PadicNum a = F.coeffs.at(s->field()->key(nu)).evaluate(1);
      if (!s->pi_conj_divides(nu)) acc = acc + em.embed_conj(nu).pow(9) * a;
      if (!s->pi_divides(nu)) acc = acc - em.embed(nu).pow(9) * a;
    }
    EXPECT_TRUE(agrees(g.coeff(n), acc.scaled(mpq_class(1, 2)))) << n;
  }
  EXPECT_THROW(specialize_h_raw(H, 0, 0), DomainError);
  EXPECT_THROW(specialize_h_raw(H, -11, 0), DomainError);
}

TEST(LambdaH, ZeroFamily) {
  auto s = split_prime(make_field(5), 11, 3);
  HilbertFamily F;
  F.split = s;
  F.trace_bound = 40;
  F.coeffs.emplace(s->field()->key({1, 0}), LambdaCoeff::constant(PadicNum::zero(11)));
  LambdaH H = build_lambda_h(F, 3);
  EXPECT_TRUE(specialize_h(H, -1, 0, 1).coeffs.empty());
}

TEST(LambdaH, OrdinaryProjectionIsIterate) {
  auto s = split_prime(make_field(5), 11, 3);
  Rng rng(6);
  HilbertFamily F = constant_family(s, 3, 130, rng);
  LambdaH H = build_lambda_h(F, 3);
  ModularQExp raw = specialize_h_raw(H, -1, 0);
  EXPECT_TRUE(identical_within(specialize_h(H, -1, 0, 2), modular_u_p(modular_u_p(raw)), 1));
  EXPECT_THROW(specialize_h(H, -1, 0, 3), BoundError);
}

TEST(Hida, Identity) {
  Rng rng(7);
  ModularQExp h = random_modular_form(11, 3, 2, 300, rng);
  HidaIdentity zero = hida_stabilization_identity(h, h, PadicNum::zero(11));
  EXPECT_TRUE(zero.matches);
  PadicNum b1 = I(11, 44, 3);
  ModularQExp st = h.like();
  for (long n = 1; n <= 300; ++n) {
    PadicNum c = h.coeff(n);
    if (n % 11 == 0) c = c - b1 * h.coeff(n / 11);
    if (!c.is_exact_zero()) st.coeffs.emplace(n, c);
  }
  EXPECT_TRUE(hida_stabilization_identity(st, h, b1).matches);
  st.coeffs[22] = st.coeff(22) + I(11, 1, 3);
  EXPECT_FALSE(hida_stabilization_identity(st, h, b1).matches);
}

TEST(Assembly, LpScalar) {
  OrdinaryData od = ordinary_data(I(11, 3, 3), 2, 3);
  PadicNum e0 = euler_E0(od);
  EXPECT_TRUE(agrees(lp_scalar_assembly(e0, od), I(11, 1, 3)));
  EXPECT_TRUE(lp_scalar_assembly(PadicNum::zero(11), od).is_zero());
  SpectralData sd = spectral_data(I(11, 4, 3), I(11, 6, 3), 3, 3);
  PadicNum pairing = I(11, 17, 3);
  GrossZagierAssembly g = gross_zagier_assembly(pairing, sd, od, 1);
  EXPECT_TRUE(agrees(g.aj / g.l_p, g.scalar.l_side));
  EXPECT_TRUE(agrees(g.aj, g.scalar.aj_side * pairing));
}
