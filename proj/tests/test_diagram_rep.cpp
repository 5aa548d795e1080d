#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "yang3d/diagram_rep.hpp"

using namespace yang3d;

namespace {

const ElementarySyms S = elementary_syms();
const Scalar P0 = Scalar::var(sym::psi0());

// All growth paths of a diagram (every order of adding boxes that stays
// inside the target).
void all_paths_rec(const PlanePartition& cur, const PlanePartition& target,
                   std::vector<Box>& acc, std::vector<std::vector<Box>>& out) {
  if (cur == target) {
    out.push_back(acc);
    return;
  }
  for (const Box& b : cur.addable()) {
    if (!target.contains(b)) continue;
    acc.push_back(b);
    all_paths_rec(cur.with_box(b), target, acc, out);
    acc.pop_back();
  }
}

std::vector<std::vector<Box>> all_paths(const PlanePartition& target) {
  std::vector<std::vector<Box>> out;
  std::vector<Box> acc;
  all_paths_rec(PlanePartition(), target, acc, out);
  return out;
}

Scalar path_product(const std::vector<Box>& path) {
  Scalar acc(1);
  PlanePartition cur;
  for (const Box& b : path) {
    acc *= e_squared(cur, b);
    cur = cur.with_box(b);
  }
  return acc;
}

}  // namespace

TEST_CASE("psi_u of the empty diagram is (u + sigma3 psi0)/u") {
  FactoredRationalU f = psi_u(PlanePartition());
  REQUIRE(f.num_roots().size() == 1);
  REQUIRE(f.den_roots().size() == 1);
  CHECK(f.num_roots()[0] == -S.sigma3 * P0);
  CHECK(f.den_roots()[0] == Scalar(0));
  CHECK(f.prefactor() == Scalar(1));
}

TEST_CASE("psi_u of a single box") {
  FactoredRationalU f = psi_u(PlanePartition::parse("1"));
  REQUIRE(f.num_roots().size() == 4);
  REQUIRE(f.den_roots().size() == 4);
  for (const Scalar& r : {-S.sigma3 * P0, -S.h1, -S.h2, -S.h3})
    CHECK(std::count(f.num_roots().begin(), f.num_roots().end(), r) == 1);
  for (const Scalar& r : {Scalar(0), S.h1, S.h2, S.h3})
    CHECK(std::count(f.den_roots().begin(), f.den_roots().end(), r) == 1);
}

TEST_CASE("pole structure: simple poles sit exactly on addable/removable weights") {
  for (int n = 0; n <= 5; ++n) {
    for (const auto& pi : PlanePartition::enumerate(n)) {
      FactoredRationalU f = psi_u(pi);
      std::set<std::pair<int, int>> expect;
      for (const Box& b : pi.addable()) expect.insert(h_lattice(b));
      for (const Box& b : pi.removable()) expect.insert(h_lattice(b));
      REQUIRE(f.den_roots().size() == expect.size());
      for (const auto& [c1, c2] : expect) {
        Scalar w = S.h1 * Scalar(c1) + S.h2 * Scalar(c2);
        CHECK(std::count(f.den_roots().begin(), f.den_roots().end(), w) == 1);
      }
    }
  }
}

TEST_CASE("psi_1 vanishes and psi_2 counts boxes twice") {
  for (int n = 0; n <= 4; ++n) {
    for (const auto& pi : PlanePartition::enumerate(n)) {
      CHECK(psi_eigen(pi, 1) == Scalar(0));
      CHECK(psi_eigen(pi, 2) == Scalar(2 * n));
    }
  }
}

TEST_CASE("psi_3 on a single box is 2 psi0 sigma3") {
  CHECK(psi_eigen(PlanePartition::parse("1"), 3) == Scalar(2) * P0 * S.sigma3);
}

TEST_CASE("series route equals the closed forms up to psi_4, volumes <= 5") {
  for (int n = 0; n <= 5; ++n) {
    for (const auto& pi : PlanePartition::enumerate(n)) {
      for (int j = 0; j <= 4; ++j) CHECK(psi_eigen(pi, j) == psi_eigen_closed(pi, j));
    }
  }
}

TEST_CASE("E^2 of the first box is psi0") {
  CHECK(e_squared(PlanePartition(), {0, 0, 0}) == P0);
}

TEST_CASE("E^2 one box + x-neighbor, exact vs direct rational evaluation") {
  PlanePartition one = PlanePartition::parse("1");
  Scalar e2 = e_squared(one, {1, 0, 0});
  // Closed hand expansion: res_{u->h2} psi_box(u)/sigma3
  //   = 2 (h2 + sigma3 psi0) / (h2 (h2-h1)(h2-h3)).
  Scalar expect = Scalar(2) * (S.h2 + S.sigma3 * P0) / (S.h2 * (S.h2 - S.h1) * (S.h2 - S.h3));
  CHECK(e2 == expect);

  // Independent route: specialize the factored form first, then take the
  // residue over plain rationals.  h1=2,h2=-1 sits on the resonant locus
  // h2=h3, so a generic point is used.
  Specialization sp{Rat(3), Rat(-1), Rat(3)};
  FactoredRationalU f = psi_u(one);
  Rat hb = sp.eval(h_box({1, 0, 0}));
  Rat acc(1);
  for (const auto& r : f.num_roots()) acc *= (hb - sp.eval(r));
  int hits = 0;
  for (const auto& q : f.den_roots()) {
    Rat qv = sp.eval(q);
    if (qv == hb && hits == 0) {
      ++hits;
      continue;
    }
    acc /= (hb - qv);
  }
  REQUIRE(hits == 1);
  acc /= sp.eval(S.sigma3);
  CHECK(sp.eval(e2) == acc);
}

TEST_CASE("E^2 z-neighbor is the y-neighbor under the h1 <-> h3 exchange") {
  PlanePartition one = PlanePartition::parse("1");
  Scalar ey = e_squared(one, {0, 1, 0});
  Scalar ez = e_squared(one, {0, 0, 1});
  // h1 -> h3 = -h1-h2 (h2 fixed) swaps h1 and h3.
  Scalar swapped = ey.subst(sym::h1(), S.h3);
  CHECK(ez == swapped);
}

TEST_CASE("exact residue transport: E^2(rho+b', b) = phi(h_b - h_b') E^2(rho, b)") {
  for (int n = 0; n <= 4; ++n) {
    for (const auto& rho : PlanePartition::enumerate(n)) {
      auto add = rho.addable();
      for (const Box& a : add) {
        for (const Box& b : add) {
          if (a == b) continue;
          PlanePartition mid = rho.with_box(a);
          if (b.z != mid.height(b.x, b.y)) continue;  // not addable after a
          Scalar tw = phi_factor(h_box(b) - h_box(a));
          CHECK(e_squared(mid, b) == tw * e_squared(rho, b));
        }
      }
    }
  }
}

TEST_CASE("E^2 products around a square differ by exactly phi^2") {
  // Plain path products are NOT path independent; the accumulated twist
  // is the product of the square factors along the reordering.
  for (int n = 0; n <= 3; ++n) {
    for (const auto& rho : PlanePartition::enumerate(n)) {
      auto add = rho.addable();
      for (const Box& a : add) {
        for (const Box& b : add) {
          if (b < a || a == b) continue;
          PlanePartition via_a = rho.with_box(a);
          if (b.z != via_a.height(b.x, b.y)) continue;
          PlanePartition via_b = rho.with_box(b);
          Scalar p1 = e_squared(rho, a) * e_squared(via_a, b);
          Scalar p2 = e_squared(rho, b) * e_squared(via_b, a);
          Scalar tw = phi_factor(h_box(b) - h_box(a));
          CHECK(p1 == tw * tw * p2);
        }
      }
    }
  }
  // Concrete counterexample to plain equality: the first L-shape square.
  PlanePartition one = PlanePartition::parse("1");
  Scalar p1 = path_product({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  Scalar p2 = path_product({{0, 0, 0}, {0, 1, 0}, {1, 0, 0}});
  CHECK(p1 != p2);
  CHECK(one.volume() == 1);
}

TEST_CASE("[e0, f0] telescopes to psi0 exactly, volumes <= 4") {
  for (int n = 0; n <= 4; ++n) {
    for (const auto& pi : PlanePartition::enumerate(n)) {
      Scalar acc;
      for (const Box& b : pi.addable()) acc += e_squared(pi, b);
      for (const Box& b : pi.removable()) acc -= e_squared(pi.without_box(b), b);
      CHECK(acc == P0);
    }
  }
}

TEST_CASE("amplitude gauge invariant and basic actions") {
  // (3,-1) is generic for single-box residues but collides at deeper
  // levels; a spread of denominators keeps all lattice weights apart.
  Specialization sp{Rat(5, 2), Rat(-9, 7), Rat(3)};
  AmplitudeGauge g(4, sp, 7);
  CHECK(g.max_edge_deviation() < 1e-10);
  CHECK(std::abs(g.c(PlanePartition()) - std::complex<double>(1.0)) == 0.0);
  // c(single box) = sqrt(psi0) = sqrt(3).
  CHECK(std::abs(g.c(PlanePartition::parse("1")) - std::complex<double>(1.7320508075688772)) <
        1e-12);

  // Gauge amplitudes around the first square obey the phi-twisted
  // exchange relation to full precision.
  PlanePartition one = PlanePartition::parse("1");
  Box bx{1, 0, 0}, by{0, 1, 0};
  std::complex<double> p1 = g.amp(one, bx) * g.amp(one.with_box(bx), by);
  std::complex<double> p2 = g.amp(one, by) * g.amp(one.with_box(by), bx);
  double tw = sp.eval(phi_factor(h_box(by) - h_box(bx))).get_d();
  CHECK(std::abs(p1 - tw * p2) < 1e-12 * std::abs(p1));

  DiagramVector vac = DiagramVector::basis(PlanePartition());
  DiagramVector e0vac = apply_e(0, vac, g);
  REQUIRE(e0vac.entries().size() == 1);
  CHECK(std::abs(e0vac.entries().begin()->second - std::complex<double>(1.7320508075688772)) <
        1e-12);

  // psi_2 acts by 2|pi|.
  for (int n = 0; n <= 3; ++n) {
    for (const auto& pi : PlanePartition::enumerate(n)) {
      DiagramVector v = apply_psi(2, DiagramVector::basis(pi), g);
      CHECK(std::abs(v.entries().at(pi) - std::complex<double>(2.0 * n)) < 1e-12);
    }
  }

  // [e0, f0] |empty> = e0 f0 - f0 e0 = psi0 |empty>.
  DiagramVector ef = apply_e(0, apply_f(0, vac, g), g);
  DiagramVector fe = apply_f(0, apply_e(0, vac, g), g);
  DiagramVector lhs = ef - fe;
  CHECK(std::abs(lhs.entries().at(PlanePartition()) - std::complex<double>(3.0)) < 1e-12);
}

TEST_CASE("gauge retries non-generic draws") {
  CHECK_THROWS_AS(AmplitudeGauge(3, Specialization{Rat(2), Rat(-1), Rat(3)}, 1),
                  NonGenericSpecialization);
  AmplitudeGauge g = AmplitudeGauge::build_random(3, 2024);
  CHECK(g.max_edge_deviation() < 1e-10);
}

TEST_CASE("defining relations hold numerically at small levels") {
  AmplitudeGauge g = AmplitudeGauge::build_random(6, 11);
  auto run = [&](Relation r, std::vector<int> idx, int L) {
    RelationReport rep = verify_relation(r, idx, L, g, 1e-8);
    INFO(rep.relation, " residual ", rep.max_residual, " worst ", rep.worst_input);
    CHECK(rep.pass);
  };
  run(Relation::yangian3, {0, 0}, 3);
  run(Relation::yangian3, {1, 1}, 3);
  run(Relation::yangian6, {1}, 3);
  run(Relation::yangian7, {1}, 3);
  run(Relation::yangian1, {0, 0}, 4);
  run(Relation::yangian2, {0, 1}, 3);
  run(Relation::yangian4, {0, 1}, 3);
  run(Relation::yangian5, {1, 0}, 3);
  run(Relation::yangian8, {0, 0, 1}, 3);
  run(Relation::yangian9, {0, 0, 1}, 3);
  run(Relation::boundary, {0, 0}, 3);
}

TEST_CASE("verify_relation reports failures instead of throwing") {
  AmplitudeGauge g = AmplitudeGauge::build_random(4, 5);
  RelationReport rep = verify_relation(Relation::yangian3, {0, 0}, 3, g, 1e-300);
  CHECK_FALSE(rep.pass);  // impossible tolerance; report still carries data
  CHECK(rep.relation == "yangian3");
}
