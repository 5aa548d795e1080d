#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "yang3d/operator_expr.hpp"

using namespace yang3d;

namespace {

const ElementarySyms S = elementary_syms();

Scalar psi0_of(int N) { return Scalar(-N) / (S.h1 * S.h2); }

PPolynomial pv(int j, int k) { return PPolynomial::var({j, k}); }

OperatorExpr rhs_identity_times(const Scalar& s) { return OperatorExpr::identity(s); }

// sum_j a_{j,m} built by hand (same as v_mode(1, m)).
OperatorExpr b1(int m) {
  int j = fresh_sum_var();
  return OperatorExpr::a(LinForm::var(j), LinForm(m)).summed_over(j, VarKind::layer, {});
}

}  // namespace

TEST_CASE("apply_a basics") {
  CHECK(apply_a(1, -2, PPolynomial::one(), 2) == pv(1, 2));
  // Forced by [a_{1,2}, a_{1,-2}] = -2/(h1 h2).
  CHECK(apply_a(1, 2, pv(1, 2), 2) == PPolynomial(Scalar(-2) / (S.h1 * S.h2)));
  CHECK(apply_a(2, 1, pv(1, 1), 2).is_zero());
  CHECK_THROWS_AS(apply_a(1, 0, PPolynomial::one(), 1), std::invalid_argument);
}

TEST_CASE("apply_op on simple operators") {
  // sum_j a_{j,-1} on the vacuum, N = 2.
  PPolynomial r = b1(-1).apply(PPolynomial::one(), 2);
  CHECK(r == pv(1, 1) + pv(2, 1));

  // :a_{1,-1} a_{1,1}: on p_{1,1}^2.
  OperatorExpr number_op =
      OperatorExpr::compose(OperatorExpr::a(LinForm(1), LinForm(-1)),
                            OperatorExpr::a(LinForm(1), LinForm(1)));
  PPolynomial p11sq = pv(1, 1) * pv(1, 1);
  CHECK(number_op.apply(p11sq, 1) == p11sq.scaled(Scalar(-2) / (S.h1 * S.h2)));

  // Linearity: zero in, zero out.
  CHECK(number_op.apply(PPolynomial(), 1).is_zero());
}

TEST_CASE("apply_op respects the grading") {
  for (int m : {-2, -1, 1, 2}) {
    OperatorExpr v2 = v_mode(2, m, 2);
    for (const auto& mono : pmonomials_of_degree(3, 2)) {
      PPolynomial p;
      p.add_term(mono, Scalar(1));
      PPolynomial img = v2.apply(p, 2);
      if (!img.is_zero()) {
        CHECK(img == img.component(3 - m));
      }
    }
  }
}

TEST_CASE("ill-formed operators are rejected") {
  // sum_{n>0} a_{1,-n} alone: total mode depends on n.
  int n = fresh_sum_var();
  OperatorExpr bad = OperatorExpr::a(LinForm(1), LinForm::var(n, -1))
                         .summed_over(n, VarKind::mode, {{LinForm::var(n) - 1, false}});
  CHECK_THROWS_AS(bad.apply(PPolynomial::one(), 1), IllFormedOperator);
}

TEST_CASE("Heisenberg commutator matrix") {
  // [a_{1,1}, a_{1,-1}] = -(1/(h1 h2)) id on degree <= 2, N = 1.
  OperatorExpr up = OperatorExpr::a(LinForm(1), LinForm(-1));
  OperatorExpr dn = OperatorExpr::a(LinForm(1), LinForm(1));
  auto basis = pmonomials_up_to(2, 1);
  OpImages com = commutator_images(dn, up, basis, 1);
  OpImages id = op_images(rhs_identity_times(Scalar(-1) / (S.h1 * S.h2)), basis, 1);
  CHECK(com == id);

  // [A, A] = 0.
  CHECK(commutator_images(up, up, basis, 1).all_zero());

  ScalarMatrix m = commutator_matrix(dn, up, 2, 1);
  for (size_t r = 0; r < m.rows.size(); ++r)
    for (size_t c = 0; c < m.cols.size(); ++c) {
      Scalar expect = m.rows[r] == m.cols[c] ? Scalar(-1) / (S.h1 * S.h2) : Scalar();
      CHECK(m.m[r][c] == expect);
    }
}

TEST_CASE("canonical a-commutators, N <= 3, |n|,|m| <= 4, degree <= 4") {
  for (int N = 1; N <= 3; ++N) {
    auto basis = pmonomials_up_to(4, N);
    for (int j = 1; j <= N; ++j) {
      for (int k = j; k <= N; ++k) {
        for (int n = -4; n <= 4; ++n) {
          for (int m = -4; m <= 4; ++m) {
            if (n == 0 || m == 0) continue;
            if (j == k && n > m) continue;  // antisymmetry halves the work
            OperatorExpr an = OperatorExpr::a(LinForm(j), LinForm(n));
            OperatorExpr am = OperatorExpr::a(LinForm(k), LinForm(m));
            OpImages com = commutator_images(an, am, basis, N);
            Scalar expect = (j == k && n + m == 0)
                                ? Scalar(-n) / (S.h1 * S.h2)
                                : Scalar();
            OpImages rhs = op_images(rhs_identity_times(expect), basis, N);
            CHECK(com == rhs);
          }
        }
      }
    }
  }
}

TEST_CASE("v_mode(1, m) is the layer sum") {
  for (int N : {1, 2, 3}) {
    PPolynomial r = v_mode(1, -1, N).apply(PPolynomial::one(), N);
    PPolynomial expect;
    for (int j = 1; j <= N; ++j) expect = expect + pv(j, 1);
    CHECK(r == expect);
  }
}

TEST_CASE("W-algebra commutator table on N layers") {
  // psi0 = -N/(h1 h2) substituted throughout (the boson-side convention).
  const int d = 3;
  for (int N = 1; N <= 3; ++N) {
    Scalar p0 = psi0_of(N);
    auto basis = pmonomials_up_to(d, N);
    for (int m = -2; m <= 2; ++m) {
      for (int n = -2; n <= 2; ++n) {
        CAPTURE(N);
        CAPTURE(m);
        CAPTURE(n);
        // [V1m, V1n] = psi0 m delta_{m+n,0}
        {
          OpImages lhs = commutator_images(v_mode(1, m, N), v_mode(1, n, N), basis, N);
          Scalar c = m + n == 0 ? p0 * Scalar(m) : Scalar();
          CHECK(lhs == op_images(rhs_identity_times(c), basis, N));
        }
        // [V1m, V2n] = m V_{1,m+n}
        {
          OpImages lhs = commutator_images(v_mode(1, m, N), v_mode(2, n, N), basis, N);
          CHECK(lhs == op_images(v_mode(1, m + n, N).scaled(Scalar(m)), basis, N));
        }
        // [V2m, V2n] = (m-n) V_{2,m+n} - (psi0 s2 + psi0^3 s3^2)(m^3-m)/12 delta
        {
          OpImages lhs = commutator_images(v_mode(2, m, N), v_mode(2, n, N), basis, N);
          OperatorExpr rhs = v_mode(2, m + n, N).scaled(Scalar(m - n));
          if (m + n == 0) {
            Scalar central = -(p0 * S.sigma2 + p0.pow(3) * S.sigma3 * S.sigma3) *
                             Scalar(Rat(long(m) * m * m - m, 12));
            rhs = rhs + rhs_identity_times(central);
          }
          CHECK(lhs == op_images(rhs, basis, N));
        }
        // [V1m, V3n] = 2m V_{2,m+n}
        {
          OpImages lhs = commutator_images(v_mode(1, m, N), v_mode(3, n, N), basis, N);
          CHECK(lhs == op_images(v_mode(2, m + n, N).scaled(Scalar(2 * m)), basis, N));
        }
        // [V2m, V3n] = -(1/6)(s2 + s3^2 psi0^2)(m^3-m) V_{1,m+n} + (2m-n) V_{3,m+n}
        {
          OpImages lhs = commutator_images(v_mode(2, m, N), v_mode(3, n, N), basis, N);
          Scalar c1 = -(S.sigma2 + S.sigma3 * S.sigma3 * p0 * p0) *
                      Scalar(Rat(long(m) * m * m - m, 6));
          OperatorExpr rhs =
              v_mode(1, m + n, N).scaled(c1) + v_mode(3, m + n, N).scaled(Scalar(2 * m - n));
          CHECK(lhs == op_images(rhs, basis, N));
        }
      }
    }
  }
}
