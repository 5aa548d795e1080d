#pragma once

// Exact coefficient arithmetic: sparse multivariate polynomials over
// arbitrary-precision integers and normalized rational functions built
// on them.  All values are immutable after construction and safe to
// share across threads.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace yang3d {

using Int = mpz_class;
using Rat = mpq_class;

// Global indeterminate registry.  Ids are stable for the lifetime of the
// process; registration is idempotent and thread-safe.
class Vars {
 public:
  static int id(const std::string& name);
  static const std::string& name(int id);
  static int count();
};

// Frequently used indeterminates.
namespace sym {
int h1();
int h2();
int psi0();
int sqrt_beta();
int n_tilde();
}  // namespace sym

// Exponent vector with trailing zeros trimmed; compared in graded
// lexicographic order so polynomial storage is canonical.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exps);
  static Monomial var(int id, int exp = 1);

  int degree() const;
  int exp(int var) const;
  bool is_one() const { return e_.empty(); }
  int max_var() const { return static_cast<int>(e_.size()) - 1; }

  Monomial operator*(const Monomial& o) const;
  // Componentwise min / exact quotient; divides() guards operator/.
  bool divides(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator<(const Monomial& o) const;  // graded lex, smaller first

  const std::vector<int>& exps() const { return e_; }

 private:
  std::vector<int> e_;
  void trim();
};

class Scalar;

// Sparse multivariate polynomial over Z.  No stored zero coefficients;
// term order is canonical so equal polynomials compare equal bitwise.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(const Int& c);
  explicit MPoly(long c) : MPoly(Int(c)) {}
  static MPoly var(int id, int exp = 1);
  static MPoly term(const Int& c, const Monomial& m);

  bool is_zero() const { return t_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  // Constant term as integer; requires is_constant().
  Int constant() const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator-() const;
  MPoly pow(int e) const;

  bool operator==(const MPoly& o) const { return t_ == o.t_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }
  // Arbitrary total order (for container keys).
  static int cmp(const MPoly& a, const MPoly& b);

  int total_degree() const;  // -1 for zero
  int degree_in(int var) const;
  int max_var() const;
  size_t n_terms() const { return t_.size(); }

  // Leading data w.r.t. the canonical graded-lex order.
  const Monomial& leading_monomial() const;
  const Int& leading_coeff() const;

  Int content() const;               // gcd of coefficients, >= 0
  Monomial monomial_content() const;  // componentwise min over terms
  MPoly divexact_int(const Int& c) const;
  MPoly divexact_mono(const Monomial& m) const;
  // Exact polynomial division; throws std::domain_error if not exact.
  MPoly divexact(const MPoly& d) const;
  static MPoly gcd(const MPoly& a, const MPoly& b);

  Rat eval(const std::vector<Rat>& point) const;
  // Substitute one indeterminate by a rational function.
  Scalar subst(int var, const Scalar& value) const;

  // Coefficients of this viewed as univariate in `var`, exponent ascending.
  std::vector<MPoly> coeffs_in(int var) const;
  static MPoly from_coeffs_in(int var, const std::vector<MPoly>& cs);

  std::string str() const;

  const std::map<Monomial, Int>& terms() const { return t_; }

  void add_term(const Int& c, const Monomial& m);  // builder use

 private:
  std::map<Monomial, Int> t_;
};

// Normalized rational function num/den: num and den share no content or
// common factor, den's leading coefficient is positive, den != 0.
class Scalar {
 public:
  Scalar() : num_(), den_(Int(1)) {}
  Scalar(const Int& c) : num_(c), den_(Int(1)) {}
  Scalar(long c) : num_(Int(c)), den_(Int(1)) {}
  Scalar(const Rat& q);
  explicit Scalar(const MPoly& p) : num_(p), den_(Int(1)) {}
  Scalar(const MPoly& num, const MPoly& den);
  static Scalar var(const std::string& name) { return Scalar(MPoly::var(Vars::id(name))); }
  static Scalar var(int id) { return Scalar(MPoly::var(id)); }
  static Scalar ratio(long num, long den) { return Scalar(Rat(num, den)); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws on zero divisor
  Scalar operator-() const;
  Scalar inv() const;
  Scalar pow(int e) const;

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  // Exact equality by cross-multiplication (no gcd required).
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  static int cmp(const Scalar& a, const Scalar& b);
  bool operator<(const Scalar& o) const { return cmp(*this, o) < 0; }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }

  Rat eval(const std::vector<Rat>& point) const;  // throws if den vanishes
  Scalar subst(int var, const Scalar& value) const;
  // Simultaneous substitution (needed for h-permutations).
  Scalar subst_all(const std::vector<std::pair<int, Scalar>>& map) const;

  std::string str() const;

 private:
  MPoly num_, den_;
  void normalize();
};

// sigma_2 = h1 h2 + h1 h3 + h2 h3 and friends with h3 := -h1 - h2.
struct ElementarySyms {
  Scalar h1, h2, h3, sigma2, sigma3;
};
ElementarySyms elementary_syms();

// Zero test.  Exact mode decides on the canonical form; randomized mode
// evaluates the numerator at uniform random integer points in
// [-10^6, 10^6] avoiding denominator zeros (Schwartz-Zippel style).
struct RandomizedZeroTest {
  int trials = 5;
  std::uint64_t seed = 0;
  int max_retries = 64;  // per trial, looking for a point off the pole set
};
bool is_zero_exact(const Scalar& x);
bool is_zero_randomized(const Scalar& x, const RandomizedZeroTest& cfg);

}  // namespace yang3d
