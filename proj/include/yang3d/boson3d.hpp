#pragma once

// The 3D bosons b_{n,1}, b_{n,2}, b_{n,3} as mode-sum operators on the
// layered Fock space, the canonically ordered word basis, and the graded
// dimension of the space they generate from the vacuum.

#include <string>
#include <vector>

#include "yang3d/operator_expr.hpp"

namespace yang3d {

// b_{-n_1,j_1} ... b_{-n_r,j_r} |0> with 0 < n_1 <= ... <= n_r and
// j_i <= n_i; for equal n the j's are nondecreasing.
struct BosonWord {
  std::vector<std::pair<int, int>> factors;  // (n_i, j_i)

  int degree() const;
  std::string str() const;
  bool operator==(const BosonWord& o) const { return factors == o.factors; }
  bool operator<(const BosonWord& o) const { return factors < o.factors; }
};

// The displayed expansion of b_{n,k} in layer bosons; the zero operator
// when k > N.  k > 3 is not constructed in the source material and is
// rejected.
OperatorExpr b_op(int n, int k, int N);

// Canonical words of degree d.  Beyond the paper's j_i <= n_i constraint
// the layer index is capped at min(N, 3) since only b_{n,k<=3} exist.
std::vector<BosonWord> fock_basis(int d, int N);

// Apply the word's operators right-to-left to the vacuum.
PPolynomial realize(const BosonWord& w, int N);
// Same for an arbitrary (not necessarily canonical) factor sequence.
PPolynomial realize_sequence(const std::vector<std::pair<int, int>>& factors, int N);

// Generic rational values for (h1, h2); ranks are computed in exact
// rational arithmetic at such a point (the rank at any point bounds the
// symbolic rank from below and agrees with it off a measure-zero set).
struct HSpec {
  Rat h1, h2;
  static HSpec seeded(std::uint64_t seed);
};

// Dimension of the degree-d component of the space generated from the
// vacuum by all available b_{n,k<=3}: a fixpoint closure over raising
// and lowering, so non-canonical products count too.
int graded_dimension(int d, int N);
int graded_dimension(int d, int N, const HSpec& at);

// Rank of the realization of the canonical words alone (answers whether
// the canonical basis spans the full component).
int fock_basis_rank(int d, int N);
int fock_basis_rank(int d, int N, const HSpec& at);

// Fully symbolic variant (slow; small d only), for cross-checking the
// specialized ranks.
int fock_basis_rank_symbolic(int d, int N);

// Incremental exact span (Gauss-reduced rows of PPolynomials).
class PSpan {
 public:
  // Returns true when v was independent of the span (and absorbs it).
  bool add(PPolynomial v);
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<PPolynomial>& rows() const { return rows_; }
  // Reduce v against the span; the remainder is zero iff v is in it.
  PPolynomial reduce(PPolynomial v) const;

 private:
  std::vector<PPolynomial> rows_;  // each with a unique leading monomial
  std::vector<PMonomial> pivots_;
};

}  // namespace yang3d
