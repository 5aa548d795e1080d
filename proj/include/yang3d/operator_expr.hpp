#pragma once

// Normal-ordered mode-sum operators on the layered boson Fock space.
// An OperatorExpr is a sum of ModeTerms; each term is a coefficient
// polynomial in its summation variables times an ordered product of
// generators a_{layer, mode}, summed over layer variables in [1, N] and
// integer mode variables subject to linear constraints.
//
// Evaluation semantics per concrete index tuple: the factor list is put
// in normal order (creations left of annihilations; factors with equal
// concrete indices commute or are reordered without contraction terms,
// which is the definition of : ... :) and applied right-to-left with
//   a_{j,-n} = multiplication by p_{j,n},
//   a_{j,+n} = -(n/(h1 h2)) d/dp_{j,n},   a_{j,0} = 0.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "yang3d/ppoly.hpp"
#include "yang3d/scalars.hpp"

namespace yang3d {

struct IllFormedOperator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer-affine form over summation variables.
struct LinForm {
  int cst = 0;
  std::vector<std::pair<int, int>> coef;  // (var id, coefficient), sorted

  LinForm() = default;
  LinForm(int constant) : cst(constant) {}
  static LinForm var(int id, int c = 1);

  LinForm operator+(const LinForm& o) const;
  LinForm operator-(const LinForm& o) const;
  LinForm operator-() const;
  LinForm operator+(int c) const;
  LinForm operator-(int c) const;
  LinForm scaled(int k) const;

  int coeff_of(int id) const;
  bool is_constant() const { return coef.empty(); }
  long eval(const std::map<int, long>& assign) const;
  LinForm subst(int id, const LinForm& value) const;
};

enum class VarKind { layer, mode };

// Fresh summation-variable ids, unique process-wide so composed terms
// never collide.
int fresh_sum_var();

struct AFactor {
  LinForm layer, mode;
};

struct Constraint {
  LinForm f;
  bool eq;  // f == 0 when true, else f >= 0
};

// Polynomial in summation variables with Scalar coefficients.
class CoeffPoly {
 public:
  CoeffPoly() = default;
  static CoeffPoly scalar(const Scalar& s);
  static CoeffPoly linear(const LinForm& f);  // scalar-coefficient affine form

  bool is_zero() const { return t_.empty(); }
  CoeffPoly operator+(const CoeffPoly& o) const;
  CoeffPoly operator*(const CoeffPoly& o) const;
  CoeffPoly scaled(const Scalar& s) const;
  CoeffPoly subst(int id, const LinForm& value) const;
  Scalar eval(const std::map<int, long>& assign) const;
  CoeffPoly map_scalars(int var, const Scalar& value) const;
  const std::map<std::map<int, int>, Scalar>& terms() const;

 private:
  std::map<std::map<int, int>, Scalar> t_;  // monomial in var ids -> Scalar
};

struct ModeTerm {
  CoeffPoly coeff;
  std::vector<AFactor> factors;
  std::vector<std::pair<int, VarKind>> vars;  // summed in this term
  std::vector<Constraint> cons;
};

class OperatorExpr {
 public:
  OperatorExpr() = default;
  explicit OperatorExpr(ModeTerm t) { terms_.push_back(std::move(t)); }

  static OperatorExpr zero() { return {}; }
  // Single generator a_{layer, mode}.
  static OperatorExpr a(const LinForm& layer, const LinForm& mode);
  // Scalar multiple of the identity.
  static OperatorExpr identity(const Scalar& s);

  bool is_identically_zero() const { return terms_.empty(); }
  const std::vector<ModeTerm>& terms() const { return terms_; }

  OperatorExpr operator+(const OperatorExpr& o) const;
  OperatorExpr operator-(const OperatorExpr& o) const;
  OperatorExpr scaled(const Scalar& s) const;
  OperatorExpr scaled_poly(const CoeffPoly& c) const;

  // Operator product by factor-list concatenation.  Valid when the
  // concatenated list normal-orders without contractions, which holds
  // for the compositions used here (left group all-creation or right
  // group all-annihilation); the identity test suites pin this down.
  static OperatorExpr compose(const OperatorExpr& a, const OperatorExpr& b);

  // Add an outer summation variable (with constraints) to every term.
  OperatorExpr summed_over(int var, VarKind kind, const std::vector<Constraint>& cons) const;

  // Map all coefficient Scalars through a substitution.
  OperatorExpr substituted(int scalar_var, const Scalar& value) const;

  PPolynomial apply(const PPolynomial& p, int N) const;
  // Apply to many inputs at once; index-tuple enumeration is shared, so
  // this is the fast path for building matrices.
  std::vector<PPolynomial> apply_batch(const std::vector<PPolynomial>& ps, int N) const;

 private:
  std::vector<ModeTerm> terms_;
};

// Commutator [A, B] = AB - BA by double application.
PPolynomial apply_commutator(const OperatorExpr& a, const OperatorExpr& b, const PPolynomial& p,
                             int N);

// Images of every basis monomial; the working form of an operator
// matrix (rows are read off the image polynomials).
struct OpImages {
  std::vector<PMonomial> basis;
  std::vector<PPolynomial> images;
  bool operator==(const OpImages& o) const { return basis == o.basis && images == o.images; }
  bool all_zero() const;
};

OpImages op_images(const OperatorExpr& op, const std::vector<PMonomial>& basis, int N);
OpImages commutator_images(const OperatorExpr& a, const OperatorExpr& b,
                           const std::vector<PMonomial>& basis, int N);

// Dense Scalar matrix of [A, B] on the monomial basis of degree <= d:
// rows indexed by the output monomials encountered, columns by basis.
struct ScalarMatrix {
  std::vector<PMonomial> rows, cols;
  std::vector<std::vector<Scalar>> m;  // m[r][c]
};
ScalarMatrix commutator_matrix(const OperatorExpr& a, const OperatorExpr& b, int d, int N);

// Modes of the W_{1+infinity} fields V_1(z), V_2(z), V_3(z) on N layers,
// with alpha0 = -h3/(h1 h2).
OperatorExpr v_mode(int kind, int m, int N);

// a_{j,n} action on a polynomial (unit tests and the CLI use this).
PPolynomial apply_a(int layer, int mode, const PPolynomial& p, int N);

}  // namespace yang3d
