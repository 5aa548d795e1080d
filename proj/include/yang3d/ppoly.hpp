#pragma once

// Polynomials in the layered power sums p_{j,k} (layer j >= 1, mode
// k >= 1) with Scalar coefficients.  The vacuum is the constant 1; the
// grading weights p_{j,k} by k.

#include <map>
#include <string>
#include <vector>

#include "yang3d/scalars.hpp"

namespace yang3d {

using PVar = std::pair<int, int>;  // (layer, mode)

class PMonomial {
 public:
  PMonomial() = default;
  static PMonomial var(PVar v, int exp = 1);

  int degree() const;  // sum of mode * exponent
  int exp(PVar v) const;
  int max_layer() const;
  bool is_one() const { return f_.empty(); }

  PMonomial times(PVar v, int exp = 1) const;
  // Lower the exponent of v by one; requires exp(v) >= 1.
  PMonomial lowered(PVar v) const;

  bool operator==(const PMonomial& o) const { return f_ == o.f_; }
  bool operator<(const PMonomial& o) const { return f_ < o.f_; }

  const std::vector<std::pair<PVar, int>>& factors() const { return f_; }
  std::string str() const;

 private:
  std::vector<std::pair<PVar, int>> f_;  // sorted by PVar, exponents > 0
};

class PPolynomial {
 public:
  PPolynomial() = default;
  explicit PPolynomial(const Scalar& c);
  static PPolynomial one() { return PPolynomial(Scalar(1)); }
  static PPolynomial var(PVar v);

  bool is_zero() const { return t_.empty(); }
  int degree() const;  // max monomial degree, -1 for zero
  int max_layer() const;

  void add_term(const PMonomial& m, const Scalar& c);
  PPolynomial operator+(const PPolynomial& o) const;
  PPolynomial operator-(const PPolynomial& o) const;
  PPolynomial operator*(const PPolynomial& o) const;
  PPolynomial scaled(const Scalar& c) const;

  // Multiply by p_v / differentiate by p_v.
  PPolynomial mul_var(PVar v) const;
  PPolynomial derivative(PVar v) const;

  // Terms of exact degree d.
  PPolynomial component(int d) const;
  // Truncate to degree <= d.
  PPolynomial truncated(int d) const;

  bool operator==(const PPolynomial& o) const { return t_ == o.t_; }
  bool operator!=(const PPolynomial& o) const { return !(*this == o); }

  const std::map<PMonomial, Scalar>& terms() const { return t_; }
  const Scalar& coeff(const PMonomial& m) const;
  std::string str() const;

  // Map every coefficient through a scalar substitution.
  PPolynomial subst_coeffs(int var, const Scalar& value) const;

 private:
  std::map<PMonomial, Scalar> t_;
};

// All monomials of exact degree d in layers 1..N (modes arbitrary).
std::vector<PMonomial> pmonomials_of_degree(int d, int N);
// All monomials of degree <= d.
std::vector<PMonomial> pmonomials_up_to(int d, int N);

}  // namespace yang3d
