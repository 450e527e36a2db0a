#include "hqx/symbolic.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <sstream>

#include "hqx/errors.hpp"
#include "hqx/qexpansion.hpp"
#include "hqx/random_forms.hpp"

namespace hqx {

// ---- LaurentPoly ----------------------------------------------------------------

LaurentPoly::LaurentPoly(const mpq_class& c) {
  if (c != 0) terms_.emplace(Exponent{0, 0, 0, 0}, c);
}

LaurentPoly LaurentPoly::monomial(const Exponent& e, const mpq_class& c) {
  LaurentPoly r;
  if (c != 0) r.terms_.emplace(e, c);
  return r;
}

LaurentPoly LaurentPoly::var(Var v, int power) {
  Exponent e{0, 0, 0, 0};
  e[v] = power;
  return monomial(e);
}

void LaurentPoly::add_term(const Exponent& e, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      LaurentPoly::Exponent e;
      for (int i = 0; i < 4; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly r(1), b = *this;
  while (n) {
    if (n & 1u) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

namespace {

mpq_class qpow(const mpq_class& x, int e) {
  mpq_class r = 1;
  mpq_class b = e < 0 ? mpq_class(1) / x : x;
  for (int i = 0; i < std::abs(e); ++i) r *= b;
  return r;
}

}  // namespace

mpq_class LaurentPoly::evaluate(const Point& x) const {
  mpq_class s = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class m = c;
    for (int i = 0; i < 4; ++i) m *= qpow(x[i], e[i]);
    s += m;
  }
  return s;
}

LaurentPoly::Exponent LaurentPoly::min_exponents() const {
  Exponent lo{0, 0, 0, 0};
  for (const auto& kv : terms_) {
    for (int i = 0; i < 4; ++i) lo[i] = std::min(lo[i], kv.first[i]);
  }
  return lo;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[4] = {"A", "A'", "B", "P"};
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (int i = 0; i < 4; ++i) {
      if (e[i] == 0) continue;
      os << "*" << names[i];
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

// ---- Euler-factor summation -----------------------------------------------------------

namespace {

// The identity written once over any commutative ring with the four roots
// and x supplied; shared shape, but instantiated separately for the
// polynomial proof and the numeric pre-pass.
template <class R>
std::pair<R, R> euler_sides(const R (&alpha)[2], const R (&alpha_p)[2], const R& x, const R& one, const R& b2x,
                            EulerMutation mutation) {
  R lhs = one - one;
  for (int i = 0; i < 2; ++i) {
    for (int ip = 0; ip < 2; ++ip) {
      R term = alpha[i] * alpha_p[ip];
      if ((i + ip) % 2) term = -term;
      bool dropped = false;
      for (int j = 0; j < 2; ++j) {
        for (int jp = 0; jp < 2; ++jp) {
          if (j == i && jp == ip) continue;
          if (mutation == EulerMutation::kDropFactor && i == 0 && ip == 0 && !dropped) {
            dropped = true;
            continue;
          }
          term = term * (one - alpha[j] * alpha_p[jp] * x);
        }
      }
      lhs = lhs + term;
    }
  }
  R rhs = (alpha[0] - alpha[1]) * (alpha_p[0] - alpha_p[1]) * (one - b2x);
  return {lhs, rhs};
}

}  // namespace

EulerSummationCertificate verify_euler_summation(int k, int t, EulerMutation mutation, std::uint64_t seed,
                                                 int prepass_points) {
  if (k < 2 || t < 0) throw DomainError("verify_euler_summation: need k >= 2 and t >= 0");
  EulerSummationCertificate cert;
  cert.k = k;
  cert.t = t;

  // Random-point pre-pass in exact rationals.
  Rng rng(seed);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 12);
  auto nonzero = [&] {
    int n = 0;
    while (n == 0) n = num(rng);
    return mpq_class(n, den(rng));
  };
  bool all_hold = true;
  for (int i = 0; i < prepass_points; ++i) {
    mpq_class A = nonzero(), Ap = nonzero(), B = nonzero(), P = nonzero();
    A.canonicalize();
    Ap.canonicalize();
    B.canonicalize();
    P.canonicalize();
    const mpq_class pk = qpow(P, k - 1);
    const mpq_class alpha[2] = {A, pk / A};
    const mpq_class alpha_p[2] = {Ap, pk / Ap};
    const mpq_class x = B * qpow(P, 2 - 2 * k + t);
    const mpq_class b2x = B * B * qpow(P, 2 - 2 * k + 2 * t);
    auto [l, r] = euler_sides<mpq_class>(alpha, alpha_p, x, mpq_class(1), b2x, mutation);
    if (l != r) all_hold = false;
  }
  cert.prepass_points = prepass_points;
  cert.prepass_holds = all_hold;

  using LP = LaurentPoly;
  const LP A = LP::var(LP::kA), Ap = LP::var(LP::kAp), B = LP::var(LP::kB);
  const LP pk = LP::var(LP::kP, k - 1);
  const LP alpha[2] = {A, pk * LP::var(LP::kA, -1)};
  const LP alpha_p[2] = {Ap, pk * LP::var(LP::kAp, -1)};
  const LP x = B * LP::var(LP::kP, 2 - 2 * k + t);
  const LP b2x = B * B * LP::var(LP::kP, 2 - 2 * k + 2 * t);
  auto [lhs, rhs] = euler_sides<LP>(alpha, alpha_p, x, LP(1), b2x, mutation);
  cert.lhs = lhs;
  cert.rhs = rhs;
  LP diff = lhs - rhs;
  LaurentPoly::Exponent lo = diff.min_exponents();
  for (int& e : lo) e = -e;
  cert.difference = diff * LP::monomial(lo);
  cert.holds = cert.difference.is_zero();
  cert.prepass_consistent = (cert.prepass_holds == cert.holds);
  return cert;
}

std::vector<std::pair<int, int>> euler_summation_grid() {
  std::vector<std::pair<int, int>> g;
  for (int k = 2; k <= 5; ++k) {
    for (int t = 0; t <= 3; ++t) {
      if (t > 0 || k == 2) g.emplace_back(k, t);
    }
  }
  return g;
}

// ---- signed permutations ------------------------------------------------------------------

SignedPerm SignedPerm::identity(int n) {
  if (n < 1 || n > 4) throw DomainError("signed permutations: need 1 <= n <= 4");
  SignedPerm g;
  g.n = n;
  return g;
}

SignedPerm SignedPerm::sign_flip(int n, int i) {
  SignedPerm g = identity(n);
  g.signs = 1u << i;
  return g;
}

SignedPerm SignedPerm::transposition(int n, int i, int j) {
  SignedPerm g = identity(n);
  std::swap(g.perm[i], g.perm[j]);
  return g;
}

int SignedPerm::perm_sign() const {
  int inv = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
  }
  return inv % 2 ? -1 : 1;
}

int SignedPerm::sign_product() const { return std::popcount(signs) % 2 ? -1 : 1; }

int SignedPerm::character() const { return sign_product() * perm_sign(); }

// (s, sigma)(s', sigma') = (s . sigma(s'), sigma sigma'), sigma(s')_{sigma(i)} = s'_i.
SignedPerm operator*(const SignedPerm& a, const SignedPerm& b) {
  SignedPerm r;
  r.n = a.n;
  std::uint32_t moved = 0;
  for (int i = 0; i < a.n; ++i) {
    if (b.signs >> i & 1u) moved |= 1u << a.perm[i];
  }
  r.signs = a.signs ^ moved;
  for (int i = 0; i < 4; ++i) r.perm[i] = i < a.n ? a.perm[b.perm[i]] : static_cast<std::int8_t>(i);
  return r;
}

std::vector<SignedPerm> signed_perm_group(int n) {
  SignedPerm id = SignedPerm::identity(n);
  std::vector<SignedPerm> out;
  std::array<std::int8_t, 4> p = id.perm;
  do {
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      SignedPerm g = id;
      g.signs = s;
      g.perm = p;
      out.push_back(g);
    }
  } while (std::next_permutation(p.begin(), p.begin() + n));
  return out;
}

GroupAlgebraElem GroupAlgebraElem::unit(int n) { return basis(SignedPerm::identity(n)); }

GroupAlgebraElem GroupAlgebraElem::basis(const SignedPerm& g, const mpq_class& c) {
  GroupAlgebraElem r;
  r.n = g.n;
  r.add(g, c);
  return r;
}

void GroupAlgebraElem::add(const SignedPerm& g, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(g, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

GroupAlgebraElem operator+(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
  GroupAlgebraElem r = a;
  r.n = std::max(a.n, b.n);
  for (const auto& [g, c] : b.terms) r.add(g, c);
  return r;
}

GroupAlgebraElem operator*(const mpq_class& c, const GroupAlgebraElem& a) {
  GroupAlgebraElem r;
  r.n = a.n;
  if (c == 0) return r;
  for (const auto& [g, x] : a.terms) r.terms.emplace(g, c * x);
  return r;
}

GroupAlgebraElem operator-(const GroupAlgebraElem& a, const GroupAlgebraElem& b) { return a + mpq_class(-1) * b; }

GroupAlgebraElem operator*(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
  GroupAlgebraElem r;
  r.n = std::max(a.n, b.n);
  for (const auto& [g, x] : a.terms) {
    for (const auto& [h, y] : b.terms) r.add(g * h, x * y);
  }
  return r;
}

namespace {

mpz_class int_factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

GroupAlgebraElem scholl_epsilon(int n) {
  const std::vector<SignedPerm> G = signed_perm_group(n);
  const mpq_class w(1, mpz_class(G.size()));
  GroupAlgebraElem e;
  e.n = n;
  for (const SignedPerm& g : G) e.add(g, g.character() * w);
  return e;
}

GroupAlgebraElem scholl_epsilon_sym(int n) {
  GroupAlgebraElem e;
  e.n = n;
  const mpq_class w(1, int_factorial(n));
  for (const SignedPerm& g : signed_perm_group(n)) {
    if (g.signs == 0) e.add(g, g.perm_sign() * w);
  }
  return e;
}

GroupAlgebraElem scholl_epsilon_inv(int n) {
  GroupAlgebraElem e = GroupAlgebraElem::unit(n);
  for (int i = 0; i < n; ++i) {
    GroupAlgebraElem f = mpq_class(1, 2) * (GroupAlgebraElem::unit(n) - GroupAlgebraElem::basis(SignedPerm::sign_flip(n, i)));
    e = e * f;
  }
  return e;
}

SchollReport scholl_idempotent(int n) {
  SchollReport r;
  r.n = n;
  const std::vector<SignedPerm> G = signed_perm_group(n);
  r.group_order = G.size();
  r.epsilon = scholl_epsilon(n);
  const GroupAlgebraElem sym = scholl_epsilon_sym(n);
  const GroupAlgebraElem inv = scholl_epsilon_inv(n);
  r.idempotent = r.epsilon * r.epsilon == r.epsilon;
  r.factorization = sym * inv == r.epsilon;
  r.sym_idempotent = sym * sym == sym;
  r.inv_idempotent = inv * inv == inv;
  r.commute = sym * inv == inv * sym;
  r.character_law = std::all_of(G.begin(), G.end(), [&](const SignedPerm& g) {
    return r.epsilon * GroupAlgebraElem::basis(g) == mpq_class(g.character()) * r.epsilon;
  });
  return r;
}

// ---- operator identities ------------------------------------------------------------------

namespace {

long mismatches(const HilbertQExp& a, const HilbertQExp& b, long bound, std::string* where) {
  long bad = 0;
  auto check = [&](const TraceKey& key) {
    if (key.trace > bound) return;
    if (agrees(a.coeff(key), b.coeff(key))) return;
    if (bad == 0 && where) *where = "trace " + std::to_string(key.trace) + " y " + std::to_string(key.y);
    ++bad;
  };
  for (const auto& kv : a.coeffs) check(kv.first);
  for (const auto& kv : b.coeffs) {
    if (!a.coeffs.count(kv.first)) check(kv.first);
  }
  return bad;
}

HilbertQExp halve(const HilbertQExp& f) {
  HilbertQExp r = f.like();
  for (const auto& [key, c] : f.coeffs) r.coeffs.emplace(key, c.scaled(mpq_class(1, 2)));
  return r;
}

using Op = HilbertQExp (*)(const HilbertQExp&);

// (1 + c V) g
HilbertQExp one_plus(const HilbertQExp& g, const PadicNum& c, Op v) { return add(g, scale(v(g), c)); }

struct Tally {
  IdentityResult r;
  void record(long bad, const std::string& where, const std::string& ctx) {
    ++r.trials;
    if (bad == 0) {
      ++r.passes;
    } else {
      r.certificate_terms += bad;
      if (r.first_failure.empty()) r.first_failure = ctx + ": " + where;
    }
  }
};

}  // namespace

std::vector<IdentityResult> verify_operator_identities(int trials, std::uint64_t seed, int fixed_pair, long prec,
                                                       long bound) {
  const auto& pairs = admissible_pairs();
  if (fixed_pair >= static_cast<int>(pairs.size())) throw DomainError("verify_operator_identities: no such pair");
  Rng rng(seed);
  std::map<int, SplitPtr> splits;
  auto split_for = [&](int idx) {
    auto it = splits.find(idx);
    if (it != splits.end()) return it->second;
    SplitPtr s = split_prime(make_field(pairs[idx].D), pairs[idx].p, prec);
    splits.emplace(idx, s);
    return s;
  };

  const char* names[] = {"u_v_inverse", "v_then_deplete_vanishes", "deplete_is_one_minus_vu", "decompose",
                         "all_told", "ultima", "primitive_ladder"};
  std::vector<Tally> t(std::size(names));
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i].r.name = names[i];
    t[i].r.params = "prec " + std::to_string(prec) + " bound " + std::to_string(bound) +
                    (fixed_pair >= 0 ? " D " + std::to_string(pairs[fixed_pair].D) + " p " +
                                           std::to_string(pairs[fixed_pair].p)
                                     : " random (D, p)") +
                    ", raised per pair until every operator chain keeps bound 2";
  }
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pairs.size()) - 1), bit(0, 1), nprime(0, 3);

  for (int trial = 0; trial < trials; ++trial) {
    const int idx = fixed_pair >= 0 ? fixed_pair : pick(rng);
    SplitPtr s = split_for(idx);
    const long p = s->p();
    const std::string ctx = "trial " + std::to_string(trial) + " (D " + std::to_string(pairs[idx].D) + ", p " +
                            std::to_string(p) + ")";
    // Every operator chain below must keep a trace bound of at least 2.
    auto v = [&](long b) { return bound_after_v_pi(*s, b); };
    auto u = [&](long b) { return bound_after_u_pi(*s, b); };
    auto enough = [&](long b) {
      return b / p >= kMinHilbertBound && v(u(b)) >= kMinHilbertBound && v(u(v(b))) >= kMinHilbertBound &&
             v(v(b)) >= kMinHilbertBound && u(v(b)) >= kMinHilbertBound;
    };
    long trial_bound = bound;
    while (!enough(trial_bound)) ++trial_bound;
    HilbertQExp f = random_hilbert_form(s, prec, 2, trial_bound, rng);
    std::string where;

    {
      long bad = 0;
      for (const HilbertQExp& g : {u_pi(v_pi(f)), u_pi_prime(v_pi_prime(f)), u_p(v_p(f))}) {
        bad += mismatches(g, f, g.bound, &where);
      }
      t[0].record(bad, where, ctx);
    }
    {
      HilbertQExp g = v_pi(f);
      HilbertQExp d = sub(g, v_pi(u_pi(g)));
      HilbertQExp gp = v_pi_prime(f);
      HilbertQExp dp = sub(gp, v_pi_prime(u_pi_prime(gp)));
      long bad = mismatches(d, f.like(), d.bound, &where) + mismatches(dp, f.like(), dp.bound, &where);
      t[1].record(bad, where, ctx);
    }
    {
      HilbertQExp a = sub(f, v_pi(u_pi(f)));
      HilbertQExp b = sub(f, v_pi_prime(u_pi_prime(f)));
      long bad = mismatches(a, deplete_pi(f), a.bound, &where) + mismatches(b, deplete_pi_prime(f), b.bound, &where);
      t[2].record(bad, where, ctx);
    }
    {
      const PadicNum al = random_padic_integer(p, prec, rng);
      const PadicNum alp = random_padic_integer(p, prec, rng);
      HilbertQExp lhs = sub(f, scale(v_pi(v_pi_prime(f)), al * alp));
      HilbertQExp r1 = one_plus(one_plus(f, alp, v_pi_prime), -al, v_pi);
      HilbertQExp r2 = one_plus(one_plus(f, al, v_pi), -alp, v_pi_prime);
      HilbertQExp rhs = add(halve(r1), halve(r2));
      long b = std::min(lhs.bound, rhs.bound);
      t[3].record(mismatches(lhs, rhs, b, &where), where, ctx);
    }
    {
      // A stabilized eigenform f_ii' with U_pi f_ii' = alpha_i f_ii'.
      const SplitEigenvalue e = random_ordinary_eigenvalue(p, 2, prec, rng);
      const SplitEigenvalue ep = random_ordinary_eigenvalue(p, 2, prec, rng);
      HilbertQExp F = make_formal_eigenform(s, prec, random_seed(s, prec, trial_bound, rng), e.a, ep.a, 2, trial_bound);
      const int i = bit(rng), ip = bit(rng);
      const PadicNum& ai = i ? e.alpha1 : e.alpha0;
      const PadicNum& aj = i ? e.alpha0 : e.alpha1;
      const PadicNum& aip = ip ? ep.alpha1 : ep.alpha0;
      const PadicNum& ajp = ip ? ep.alpha0 : ep.alpha1;
      HilbertQExp fii = stabilize_hilbert(F, aj, ajp);

      HilbertQExp lhs = halve(one_plus(one_plus(fii, aip, v_pi_prime), -ai, v_pi));
      HilbertQExp rhs = halve(deplete_pi(F));
      rhs = sub(rhs, halve(scale(deplete_pi(v_pi_prime(F)), ajp)));
      rhs = add(rhs, halve(scale(deplete_pi(v_pi_prime(fii)), aip)));
      t[4].record(mismatches(lhs, rhs, std::min(lhs.bound, rhs.bound), &where), where, ctx);

      HilbertQExp lhs2 = halve(one_plus(one_plus(fii, ai, v_pi), -aip, v_pi_prime));
      HilbertQExp rhs2 = halve(deplete_pi_prime(F));
      rhs2 = sub(rhs2, halve(scale(deplete_pi_prime(v_pi(F)), aj)));
      rhs2 = add(rhs2, halve(scale(deplete_pi_prime(v_pi(fii)), ai)));
      t[5].record(mismatches(lhs2, rhs2, std::min(lhs2.bound, rhs2.bound), &where), where, ctx);
    }
    {
      const int np = nprime(rng);
      HilbertQExp g = deplete_pi_prime(f);
      PrimitiveVector d = ladder_derivative(primitive_vector(g, np));
      long bad = mismatches(d.components[0], g, g.bound, &where);
      for (int j = 1; j <= np; ++j) bad += mismatches(d.components[j], g.like(), g.bound, &where);
      t[6].record(bad, where, ctx + " n' " + std::to_string(np));
    }
  }
  std::vector<IdentityResult> out;
  for (auto& x : t) out.push_back(std::move(x.r));
  return out;
}

}  // namespace hqx
