#pragma once

// Rational functions of the spectral parameter u kept in factored form
// prefactor * prod(u - r) / prod(u - q), plus truncated expansions at
// u = infinity.

#include <vector>

#include "yang3d/scalars.hpp"

namespace yang3d {

// Truncated series c0 + c1 u^-1 + ... + cK u^-K.  Binary operations
// truncate to the smaller order.
class USeries {
 public:
  USeries() = default;
  explicit USeries(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {}
  static USeries constant(const Scalar& c, int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Scalar& coeff(int k) const;  // coefficient of u^-k

  USeries operator+(const USeries& o) const;
  USeries operator-(const USeries& o) const;
  USeries operator*(const USeries& o) const;
  USeries scaled(const Scalar& s) const;
  // exp of a series with zero constant term.
  USeries exp() const;

 private:
  std::vector<Scalar> c_;
};

class FactoredRationalU {
 public:
  // Equal roots shared by numerator and denominator cancel on construction.
  FactoredRationalU(Scalar prefactor, std::vector<Scalar> num_roots,
                    std::vector<Scalar> den_roots);

  const Scalar& prefactor() const { return pref_; }
  const std::vector<Scalar>& num_roots() const { return num_; }
  const std::vector<Scalar>& den_roots() const { return den_; }

  FactoredRationalU operator*(const FactoredRationalU& o) const;

  // Residue at a simple pole r; throws std::domain_error when the pole
  // order at r differs from one (degenerate diagram or parameters).
  Scalar residue_at(const Scalar& r) const;

  // Coefficients of u^0..u^-K; requires equally many numerator and
  // denominator roots (finite value at infinity), else std::domain_error.
  USeries series_at_infinity(int K) const;

 private:
  Scalar pref_;
  std::vector<Scalar> num_, den_;
};

Scalar residue_at(const FactoredRationalU& f, const Scalar& r);
USeries series_at_infinity(const FactoredRationalU& f, int K);

}  // namespace yang3d
