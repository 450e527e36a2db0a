#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hqx {

/// Laurent polynomial in (A, A', B, P) with rational coefficients.
class LaurentPoly {
 public:
  enum Var { kA = 0, kAp = 1, kB = 2, kP = 3 };
  using Exponent = std::array<int, 4>;
  using Point = std::array<mpq_class, 4>;

  LaurentPoly() = default;
  LaurentPoly(const mpq_class& c);  // NOLINT
  static LaurentPoly monomial(const Exponent& e, const mpq_class& c = 1);
  static LaurentPoly var(Var v, int power = 1);

  const std::map<Exponent, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;
  LaurentPoly pow(unsigned n) const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  // All point coordinates must be nonzero when negative powers occur.
  mpq_class evaluate(const Point& x) const;
  // Lowest power of each variable (0 if nonnegative everywhere); multiplying
  // by the inverse monomial clears denominators.
  Exponent min_exponents() const;

  std::string to_string() const;

 private:
  void add_term(const Exponent& e, const mpq_class& c);
  std::map<Exponent, mpq_class> terms_;
};

// ---- Euler-factor summation ---------------------------------------------------

enum class EulerMutation {
  kNone,
  kDropFactor,  // one factor of the (0,0) product left out
};

struct EulerSummationCertificate {
  int k = 2;
  int t = 0;
  bool holds = false;
  LaurentPoly lhs;
  LaurentPoly rhs;
  LaurentPoly difference;  // lhs - rhs, times the monomial clearing denominators
  int prepass_points = 0;
  bool prepass_holds = false;  // every random point satisfied the identity
  bool prepass_consistent = false;  // pre-pass verdict equals the polynomial verdict
};

EulerSummationCertificate verify_euler_summation(int k, int t, EulerMutation mutation = EulerMutation::kNone,
                                                 std::uint64_t seed = 1, int prepass_points = 50);
// Grid k = 2..5, t = 0..3 with t > 0 or k = 2.
std::vector<std::pair<int, int>> euler_summation_grid();

// ---- signed permutations --------------------------------------------------------

/// (s, sigma) in (mu_2)^n x| S_n, n <= 4. Bit i of `signs` set means s_i = -1.
struct SignedPerm {
  int n = 0;
  std::uint32_t signs = 0;
  std::array<std::int8_t, 4> perm{0, 1, 2, 3};

  static SignedPerm identity(int n);
  static SignedPerm sign_flip(int n, int i);
  static SignedPerm transposition(int n, int i, int j);
  int perm_sign() const;
  int sign_product() const;
  // Product of the s_i times sign(sigma).
  int character() const;
  friend SignedPerm operator*(const SignedPerm& a, const SignedPerm& b);
  friend auto operator<=>(const SignedPerm&, const SignedPerm&) = default;
};

std::vector<SignedPerm> signed_perm_group(int n);

struct GroupAlgebraElem {
  int n = 0;
  std::map<SignedPerm, mpq_class> terms;

  static GroupAlgebraElem unit(int n);
  static GroupAlgebraElem basis(const SignedPerm& g, const mpq_class& c = 1);
  void add(const SignedPerm& g, const mpq_class& c);
  friend GroupAlgebraElem operator+(const GroupAlgebraElem& a, const GroupAlgebraElem& b);
  friend GroupAlgebraElem operator-(const GroupAlgebraElem& a, const GroupAlgebraElem& b);
  friend GroupAlgebraElem operator*(const GroupAlgebraElem& a, const GroupAlgebraElem& b);
  friend GroupAlgebraElem operator*(const mpq_class& c, const GroupAlgebraElem& a);
  friend bool operator==(const GroupAlgebraElem& a, const GroupAlgebraElem& b) { return a.terms == b.terms; }
};

GroupAlgebraElem scholl_epsilon(int n);
GroupAlgebraElem scholl_epsilon_sym(int n);
GroupAlgebraElem scholl_epsilon_inv(int n);

struct SchollReport {
  int n = 0;
  std::size_t group_order = 0;
  GroupAlgebraElem epsilon;
  bool idempotent = false;
  bool factorization = false;  // eps = eps_sym * eps_inv
  bool sym_idempotent = false;
  bool inv_idempotent = false;
  bool commute = false;
  bool character_law = false;  // eps * tau = j(tau) eps for every tau
  bool ok() const {
    return idempotent && factorization && sym_idempotent && inv_idempotent && commute && character_law;
  }
};

SchollReport scholl_idempotent(int n);

// ---- operator identities on random expansions --------------------------------------

struct IdentityResult {
  std::string name;
  std::string params;
  int trials = 0;
  int passes = 0;
  long certificate_terms = 0;  // mismatching coefficients over all trials
  std::string first_failure;
  bool ok() const { return trials > 0 && passes == trials; }
};

// Over random (D, p) from admissible_pairs(), or one fixed pair when
// `fixed_pair` >= 0 indexes that list.
std::vector<IdentityResult> verify_operator_identities(int trials, std::uint64_t seed, int fixed_pair = -1,
                                                       long prec = 3, long bound = 40);

}  // namespace hqx
