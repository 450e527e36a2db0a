#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "hqx/padic.hpp"

using namespace hqx;

namespace {

// Oracle: exhaustive residue search for roots of a monic integer polynomial
// modulo m.
std::vector<long> roots_mod(const std::vector<long>& coeffs, long m) {
  std::vector<long> r;
  for (long x = 0; x < m; ++x) {
    __int128 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc * x + *it) % m;
    if ((acc % m + m) % m == 0) r.push_back(x);
  }
  return r;
}

long powmod(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

PadicNum I(long p, long n, long prec = 3) { return PadicNum::from_integer(p, n, prec); }

}  // namespace

TEST(Padic, CarryIntoValuation) {
  PadicNum s = I(11, 1) + I(11, 10);
  EXPECT_FALSE(s.is_zero());
  EXPECT_EQ(s.valuation(), 1);
  EXPECT_EQ(s.mantissa(), 1);
}

TEST(Padic, NegativeValuation) {
  PadicNum x = PadicNum::from_rational(11, mpq_class(1, 121), 3);
  EXPECT_EQ(x.valuation(), -2);
  EXPECT_EQ(x.mantissa(), 1);
}

TEST(Padic, ProductMatchesIntegerOracle) {
  PadicNum x = I(11, 80, 2) * I(11, 80, 2);
  EXPECT_EQ(x.valuation(), 0);
  EXPECT_EQ(x.residue(2), 6400 % 121);
  EXPECT_EQ(x.residue(2), 108);
}

TEST(Padic, RandomArithmeticAgainstIntegers) {
  std::mt19937_64 rng(7);
  const long p = 7, M = 4, m = 2401;
  for (int i = 0; i < 300; ++i) {
    long a = rng() % 100000, b = rng() % 100000;
    if (a % p == 0) ++a;
    if (b % p == 0) ++b;
    PadicNum x = I(p, a, M), y = I(p, b, M);
    EXPECT_EQ((x * y).residue(M), (a * b) % m);
    PadicNum s = x + y;
    if (!s.is_zero()) {
      long d = std::min(M, s.absolute_precision());
      mpz_class expect = mpz_class(a + b) % prime_power(p, d);
      EXPECT_EQ(s.residue(d), expect);
    }
    // b * b^{-1} = 1 modulo p^M.
    EXPECT_EQ((y * y.inverse()).residue(M), 1);
  }
}

TEST(Padic, PrecisionDropsOnCancellation) {
  // 1 + 10 at relative precision 3 leaves two digits after the carry.
  PadicNum s = I(11, 1, 3) + I(11, 10, 3);
  EXPECT_EQ(s.absolute_precision(), 3);
  PadicNum z = I(11, 5, 3) - I(11, 5, 3);
  EXPECT_TRUE(z.is_zero());
  EXPECT_FALSE(z.is_exact_zero());
  EXPECT_EQ(z.absolute_precision(), 3);
}

TEST(Padic, InverseOfZeroThrows) {
  EXPECT_THROW(PadicNum::zero(11, 3).inverse(), PrecisionError);
}

TEST(Padic, ExactZeroIsIdentity) {
  PadicNum x = I(11, 42, 3);
  EXPECT_EQ(x + PadicNum::zero(11), x);
}

TEST(Hensel, QuadraticRootAgainstSearch) {
  std::vector<PadicNum> f{I(11, 11), I(11, -3), I(11, 1)};
  PadicNum r = hensel_root(f, 3, 2);
  EXPECT_EQ(r.residue(2), 80);
  auto oracle = roots_mod({11, -3, 1}, 121);
  EXPECT_NE(std::find(oracle.begin(), oracle.end(), 80), oracle.end());
  EXPECT_EQ(6171 % 121, 0);
}

TEST(Hensel, SquareRootOfFive) {
  std::vector<PadicNum> f{I(11, -5), I(11, 0), I(11, 1)};
  PadicNum r = hensel_root(f, 4, 2);
  // 15^2 = 104 mod 121, so the lift of 4 is not 15; search decides.
  long expect = -1;
  for (long x : roots_mod({-5, 0, 1}, 121)) {
    if (x % 11 == 4) expect = x;
  }
  EXPECT_EQ(expect, 48);
  EXPECT_EQ(r.residue(2), expect);
}

TEST(Hensel, Linear) {
  std::vector<PadicNum> f{I(11, -7), I(11, 1)};
  EXPECT_EQ(hensel_root(f, 7, 3).residue(3), 7);
}

TEST(Hensel, NonRootSeedRejected) {
  std::vector<PadicNum> f{I(11, -5), I(11, 0), I(11, 1)};
  EXPECT_THROW(hensel_root(f, 3, 2), DomainError);
}

TEST(HeckeRoots, OrdinaryWeightTwo) {
  RootPair r = hecke_roots(I(11, 3), 2, 11, 2);
  ASSERT_TRUE(r.split());
  EXPECT_EQ(r.slope_first, 0);
  EXPECT_EQ(r.slope_second, 1);
  EXPECT_EQ(r.first.residue(2), 80);
  EXPECT_EQ(r.second.residue(2), 44);
  // Root laws against the integer oracle.
  EXPECT_EQ((r.first + r.second).residue(2), 3);
  EXPECT_EQ((r.first * r.second).residue(2), 11);
}

TEST(HeckeRoots, SlopesOneTwo) {
  RootPair r = hecke_roots(I(11, 11), 4, 11, 3);
  ASSERT_TRUE(r.split());
  EXPECT_EQ(r.slope_first, 1);
  EXPECT_EQ(r.slope_second, 2);
  EXPECT_EQ(r.first.valuation() + r.second.valuation(), 3);
}

TEST(HeckeRoots, NonsplitHalfSlopes) {
  RootPair r = hecke_roots(PadicNum::zero(11), 2, 11, 3);
  EXPECT_FALSE(r.split());
  EXPECT_EQ(r.slope_first, mpq_class(1, 2));
  EXPECT_EQ(r.slope_second, mpq_class(1, 2));
  QuadExtNum y = r.root_ext(0);
  // y^2 = -11.
  QuadExtNum sq = y * y;
  EXPECT_TRUE(sq.in_base());
  EXPECT_TRUE(agrees(sq.c0(), I(11, -11)));
}

TEST(HeckeRoots, ElevenWeightThreeNonsplit) {
  // disc = 121 - 4 * 11^2 = -363, odd valuation.
  RootPair r = hecke_roots(I(11, 11), 3, 11, 3);
  EXPECT_FALSE(r.split());
}

TEST(Teichmuller, One) {
  Teichmuller t = teichmuller(I(11, 1, 3));
  EXPECT_EQ(t.mu.residue(3), 1);
  EXPECT_EQ(t.one_unit.residue(3), 1);
}

TEST(Teichmuller, MinusOne) {
  Teichmuller t = teichmuller(I(11, 10, 2));
  EXPECT_EQ(t.mu.residue(2), 120);
  EXPECT_EQ(t.one_unit.residue(2), 111);
  EXPECT_EQ(t.one_unit.residue(1), 1);
}

TEST(Teichmuller, AgainstFrobeniusPowers) {
  // mu(z) = lim z^{p^n}; p^{M-1} steps suffice modulo p^M.
  const long p = 11, M = 3, m = 1331;
  for (long z = 1; z < 40; ++z) {
    if (z % p == 0) continue;
    Teichmuller t = teichmuller(I(p, z, M));
    long oracle = powmod(z, p * p, m);
    EXPECT_EQ(t.mu.residue(M), oracle) << z;
    EXPECT_EQ(powmod(oracle, p - 1, m), 1);
    EXPECT_EQ((t.mu * t.one_unit).residue(M), z % m);
  }
  EXPECT_EQ(teichmuller(I(11, 3, 2)).mu.residue(2), powmod(3, 11, 121));
}

TEST(Sqrt, MatchesResidueSearch) {
  for (long a = 1; a < 11; ++a) {
    bool square = !roots_mod({-a, 0, 1}, 11).empty();
    EXPECT_EQ(is_square_residue(a, 11), square) << a;
    auto r = padic_sqrt(I(11, a, 3));
    EXPECT_EQ(r.has_value(), square);
    if (r) EXPECT_EQ((*r * *r).residue(3), a);
  }
  EXPECT_FALSE(padic_sqrt(I(11, 11, 3)).has_value());
  auto s = padic_sqrt(I(11, 5 * 121, 3));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->valuation(), 1);
}

TEST(PolyEval, Horner) {
  std::vector<PadicNum> f{I(11, 1), I(11, 2), I(11, 3)};
  EXPECT_EQ(poly_eval(f, I(11, 2)).residue(3), 17);
}
