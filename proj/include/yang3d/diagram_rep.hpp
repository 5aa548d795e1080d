#pragma once

// The representation of the affine Yangian on plane partitions.  Exact
// side: psi_pi(u) in factored form, psi_j eigenvalues, squared edge
// amplitudes E^2.  Numeric side: a gauge of consistent square roots at a
// generic rational specialization, used to check the full set of
// defining relations.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "yang3d/partitions3d.hpp"
#include "yang3d/rational_u.hpp"
#include "yang3d/scalars.hpp"

namespace yang3d {

// psi_pi(u) = psi_0(u) prod_{box in pi} phi(u - h_box), factored over
// symbolic h1, h2, psi0.
FactoredRationalU psi_u(const PlanePartition& pi);

// Eigenvalue of psi_j on |pi>: u^{-j-1} series coefficient over sigma3.
Scalar psi_eigen(const PlanePartition& pi, int j);

// Closed forms for j <= 4 (independent of the series route).
Scalar psi_eigen_closed(const PlanePartition& pi, int j);

// E(pi -> pi+box)^2 = res_{u -> h_box} psi_pi(u) / sigma3.
Scalar e_squared(const PlanePartition& pi, const Box& b);

struct Specialization {
  Rat h1, h2, psi0;
  Rat h3() const { return -h1 - h2; }
  Rat eval(const Scalar& s) const;
  std::string str() const;
};

struct NonGenericSpecialization : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename C>
class DiagramVectorT {
 public:
  DiagramVectorT() = default;
  static DiagramVectorT basis(const PlanePartition& pi) {
    DiagramVectorT v;
    v.e_[pi] = C(1);
    return v;
  }
  void add(const PlanePartition& pi, const C& c) {
    auto it = e_.find(pi);
    if (it == e_.end())
      e_.emplace(pi, c);
    else
      it->second += c;
  }
  const std::map<PlanePartition, C>& entries() const { return e_; }
  DiagramVectorT operator+(const DiagramVectorT& o) const {
    DiagramVectorT r = *this;
    for (const auto& [p, c] : o.e_) r.add(p, c);
    return r;
  }
  DiagramVectorT operator-(const DiagramVectorT& o) const {
    DiagramVectorT r = *this;
    for (const auto& [p, c] : o.e_) r.add(p, -c);
    return r;
  }
  DiagramVectorT scaled(const C& s) const {
    DiagramVectorT r;
    for (const auto& [p, c] : e_) r.e_[p] = c * s;
    return r;
  }

 private:
  std::map<PlanePartition, C> e_;
};

using DiagramVector = DiagramVectorT<std::complex<double>>;
using DiagramVectorExact = DiagramVectorT<Scalar>;

// phi(x) = (x+h1)(x+h2)(x+h3) / ((x-h1)(x-h2)(x-h3)): the structure
// function of the algebra.  Residues obey the exact transport identity
//   E^2(rho+box', box) = phi(h_box - h_box') E^2(rho, box),
// so E^2 products around an elementary square differ by phi^2; plain
// products along two growth paths are NOT equal.
Scalar phi_factor(const Scalar& x);

// A consistent assignment of square roots of the specialized E^2, one
// amplitude per edge of the Young graph.  A reference edge per diagram
// takes the principal square root; the remaining incoming edges are
// transported around elementary squares with
//   A(rho,a) A(rho+a,b) = phi(h_b - h_a) A(rho,b) A(rho+b,a),
// the sign forced by [e_j, f_k] = psi_{j+k}.  Every edge still satisfies
// A^2 = E^2 at the specialization; no diagram-potential c(pi) can do
// this, which is why amplitudes live on edges.
class AmplitudeGauge {
 public:
  // Throws NonGenericSpecialization when some edge E^2 vanishes or the
  // specialized value cannot be evaluated.
  AmplitudeGauge(int level_bound, const Specialization& spec, std::uint64_t seed);

  // Retry wrapper: up to 5 random draws with small denominators.
  static AmplitudeGauge build_random(int level_bound, std::uint64_t seed);

  int level_bound() const { return L_; }
  const Specialization& spec() const { return spec_; }
  std::uint64_t seed() const { return seed_; }

  std::complex<double> amp(const PlanePartition& from, const Box& b) const;
  // Cumulative amplitude along the canonical growth path (c(empty) = 1).
  std::complex<double> c(const PlanePartition& pi) const;
  double e2_value(const PlanePartition& from, const Box& b) const;  // exact, evaluated

  // Max relative deviation of amp^2 from the specialized exact E^2 over
  // every stored edge.
  double max_edge_deviation() const;

 private:
  int L_;
  Specialization spec_;
  std::uint64_t seed_;
  std::map<std::string, std::complex<double>> amp_;
  std::map<std::string, double> e2_;  // edge key -> specialized exact E^2
  static std::string edge_key(const PlanePartition& from, const Box& b);
};

// Numeric actions; diagrams must stay within the gauge level bound
// (std::out_of_range otherwise).
DiagramVector apply_e(int j, const DiagramVector& v, const AmplitudeGauge& g);
DiagramVector apply_f(int j, const DiagramVector& v, const AmplitudeGauge& g);
DiagramVector apply_psi(int j, const DiagramVector& v, const AmplitudeGauge& g);

// Exact diagonal action.
DiagramVectorExact apply_psi_exact(int j, const DiagramVectorExact& v);

enum class Relation {
  yangian1,
  yangian2,
  yangian3,
  yangian4,
  yangian5,
  yangian6,
  yangian7,
  yangian8,
  yangian9,
  boundary,  // yangian6 and yangian7 together
};

const char* relation_name(Relation r);
Relation relation_from_name(const std::string& name);

struct RelationReport {
  std::string relation;
  std::vector<int> indices;
  int level = 0;
  Specialization spec;
  std::uint64_t seed = 0;
  double tol = 0;
  // Residual relative to the largest summand encountered (the summands
  // grow like powers of h, so the absolute number alone is not a
  // precision certificate); the raw value is kept alongside.
  double max_residual = 0;
  double max_abs_residual = 0;
  double scale = 0;
  std::string worst_input;   // basis diagram with the worst residual
  std::string worst_output;  // output diagram carrying it
  bool pass = false;
};

// Applies the relation's left-hand side to every basis diagram that
// keeps intermediate states within the gauge bound and reports the
// maximum coefficient residual.
RelationReport verify_relation(Relation rel, const std::vector<int>& indices, int level,
                               const AmplitudeGauge& g, double tol);

}  // namespace yang3d
