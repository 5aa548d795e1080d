#include "yang3d/diagram_rep.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace yang3d {

namespace {

const ElementarySyms& syms() {
  static const ElementarySyms s = elementary_syms();
  return s;
}

Scalar psi0_sym() { return Scalar::var(sym::psi0()); }

std::vector<Rat> spec_point(const Specialization& s) {
  std::vector<Rat> pt(std::max(Vars::count(), sym::psi0() + 1), Rat(0));
  pt[sym::h1()] = s.h1;
  pt[sym::h2()] = s.h2;
  pt[sym::psi0()] = s.psi0;
  return pt;
}

std::complex<double> principal_sqrt(double x) {
  if (x >= 0) return {std::sqrt(x), 0.0};
  return {0.0, std::sqrt(-x)};
}

}  // namespace

Rat Specialization::eval(const Scalar& s) const { return s.eval(spec_point(*this)); }

std::string Specialization::str() const {
  std::ostringstream os;
  os << "h1=" << h1.get_str() << ",h2=" << h2.get_str() << ",psi0=" << psi0.get_str();
  return os.str();
}

FactoredRationalU psi_u(const PlanePartition& pi) {
  const auto& s = syms();
  std::vector<Scalar> num{-s.sigma3 * psi0_sym()};
  std::vector<Scalar> den{Scalar(0)};
  const Scalar hs[3] = {s.h1, s.h2, s.h3};
  for (const Box& b : pi.boxes()) {
    Scalar hb = h_box(b);
    for (const auto& h : hs) {
      num.push_back(hb - h);
      den.push_back(hb + h);
    }
  }
  return FactoredRationalU(Scalar(1), std::move(num), std::move(den));
}

Scalar psi_eigen(const PlanePartition& pi, int j) {
  if (j < 0) throw std::invalid_argument("negative mode");
  USeries ser = psi_u(pi).series_at_infinity(j + 1);
  return ser.coeff(j + 1) / syms().sigma3;
}

Scalar psi_eigen_closed(const PlanePartition& pi, int j) {
  const auto& s = syms();
  Scalar p0 = psi0_sym();
  switch (j) {
    case 0:
      return p0;
    case 1:
      return Scalar(0);
    case 2:
      return Scalar(2 * pi.volume());
    case 3: {
      Scalar acc;
      for (const Box& b : pi.boxes()) acc += Scalar(6) * h_box(b) + Scalar(2) * p0 * s.sigma3;
      return acc;
    }
    case 4: {
      Scalar acc;
      for (const Box& b : pi.boxes()) {
        Scalar hb = h_box(b);
        acc += Scalar(12) * hb * hb - Scalar(2) * s.sigma2 + Scalar(6) * hb * p0 * s.sigma3;
      }
      return acc;
    }
    default:
      throw std::invalid_argument("no closed form beyond psi_4");
  }
}

Scalar e_squared(const PlanePartition& pi, const Box& b) {
  return psi_u(pi).residue_at(h_box(b)) / syms().sigma3;
}

Scalar phi_factor(const Scalar& x) {
  const auto& s = syms();
  Scalar num = (x + s.h1) * (x + s.h2) * (x + s.h3);
  Scalar den = (x - s.h1) * (x - s.h2) * (x - s.h3);
  return num / den;
}

// ------------------------------------------------------- AmplitudeGauge

std::string AmplitudeGauge::edge_key(const PlanePartition& from, const Box& b) {
  std::ostringstream os;
  os << from.str() << "|" << b.x << "," << b.y << "," << b.z;
  return os.str();
}

AmplitudeGauge::AmplitudeGauge(int level_bound, const Specialization& spec, std::uint64_t seed)
    : L_(level_bound), spec_(spec), seed_(seed) {
  if (spec.h1 == 0 || spec.h2 == 0 || spec.h3() == 0 || spec.psi0 == 0)
    throw NonGenericSpecialization("vanishing h or psi0");
  auto h_val = [&](const Box& b) -> Rat {
    return spec.h1 * Rat(b.y) + spec.h2 * Rat(b.x) + spec.h3() * Rat(b.z);
  };
  auto phi_val = [&](const Rat& x) -> Rat {
    Rat num = (x + spec.h1) * (x + spec.h2) * (x + spec.h3());
    Rat den = (x - spec.h1) * (x - spec.h2) * (x - spec.h3());
    if (den == 0 || num == 0)
      throw NonGenericSpecialization("phi degenerate at " + spec_.str());
    return num / den;
  };
  auto e2_at = [&](const PlanePartition& pi, const Box& b) {
    Rat e2;
    try {
      e2 = spec_.eval(e_squared(pi, b));
    } catch (const std::domain_error&) {
      throw NonGenericSpecialization("edge amplitude undefined at " + spec_.str());
    }
    if (e2 == 0) throw NonGenericSpecialization("vanishing edge amplitude at " + spec_.str());
    e2_[edge_key(pi, b)] = e2.get_d();
    return e2;
  };
  for (int level = 1; level <= L_; ++level) {
    for (const auto& to : PlanePartition::enumerate(level)) {
      // Reference edge: the canonical-path predecessor takes the
      // principal square root.
      Box ref_box = to.canonical_growth_path().back();
      PlanePartition ref_from = to.without_box(ref_box);
      std::complex<double> a_ref = principal_sqrt(e2_at(ref_from, ref_box).get_d());
      amp_[edge_key(ref_from, ref_box)] = a_ref;
      for (const Box& b : to.removable()) {
        if (b == ref_box) continue;
        // Transport around the square with bottom rho = to - b - ref_box.
        PlanePartition from = to.without_box(b);
        PlanePartition rho = from.without_box(ref_box);
        e2_at(from, b);
        std::complex<double> a_rho_ref = amp_.at(edge_key(rho, ref_box));
        std::complex<double> a_rho_b = amp_.at(edge_key(rho, b));
        Rat tw = phi_val(h_val(b) - h_val(ref_box));
        amp_[edge_key(from, b)] = tw.get_d() * a_rho_b * a_ref / a_rho_ref;
      }
    }
  }
}

AmplitudeGauge AmplitudeGauge::build_random(int level_bound, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(1, 100), den(1, 10);
  for (int attempt = 0; attempt < 5; ++attempt) {
    Specialization s;
    s.h1 = Rat(num(rng), den(rng));
    s.h2 = Rat(-num(rng), den(rng));
    s.psi0 = Rat(num(rng), den(rng));
    s.h1.canonicalize();
    s.h2.canonicalize();
    s.psi0.canonicalize();
    try {
      return AmplitudeGauge(level_bound, s, seed);
    } catch (const NonGenericSpecialization&) {
      continue;
    }
  }
  throw NonGenericSpecialization("no generic specialization found in 5 draws");
}

std::complex<double> AmplitudeGauge::amp(const PlanePartition& from, const Box& b) const {
  auto it = amp_.find(edge_key(from, b));
  if (it == amp_.end()) throw std::out_of_range("edge outside gauge level bound");
  return it->second;
}

std::complex<double> AmplitudeGauge::c(const PlanePartition& pi) const {
  if (pi.volume() > L_) throw std::out_of_range("diagram outside gauge level bound");
  std::complex<double> acc = 1.0;
  PlanePartition cur;
  for (const Box& b : pi.canonical_growth_path()) {
    acc *= amp(cur, b);
    cur = cur.with_box(b);
  }
  return acc;
}

double AmplitudeGauge::e2_value(const PlanePartition& from, const Box& b) const {
  auto it = e2_.find(edge_key(from, b));
  if (it != e2_.end()) return it->second;
  return spec_.eval(e_squared(from, b)).get_d();
}

double AmplitudeGauge::max_edge_deviation() const {
  double worst = 0;
  for (const auto& [key, a] : amp_) {
    double e2 = e2_.at(key);
    double dev = std::abs(a * a - std::complex<double>(e2)) / std::max(1.0, std::abs(e2));
    worst = std::max(worst, dev);
  }
  return worst;
}

// ------------------------------------------------------ numeric actions

namespace {

double h_value(const Box& b, const Specialization& s) {
  Rat v = s.h1 * Rat(b.y) + s.h2 * Rat(b.x) + s.h3() * Rat(b.z);
  return v.get_d();
}

}  // namespace

DiagramVector apply_e(int j, const DiagramVector& v, const AmplitudeGauge& g) {
  DiagramVector out;
  for (const auto& [pi, coef] : v.entries()) {
    if (pi.volume() + 1 > g.level_bound()) throw std::out_of_range("level bound exceeded");
    for (const Box& b : pi.addable()) {
      double w = std::pow(h_value(b, g.spec()), j);
      out.add(pi.with_box(b), coef * w * g.amp(pi, b));
    }
  }
  return out;
}

DiagramVector apply_f(int j, const DiagramVector& v, const AmplitudeGauge& g) {
  DiagramVector out;
  for (const auto& [pi, coef] : v.entries()) {
    for (const Box& b : pi.removable()) {
      PlanePartition from = pi.without_box(b);
      double w = std::pow(h_value(b, g.spec()), j);
      out.add(from, coef * w * (-g.amp(from, b)));
    }
  }
  return out;
}

DiagramVector apply_psi(int j, const DiagramVector& v, const AmplitudeGauge& g) {
  DiagramVector out;
  for (const auto& [pi, coef] : v.entries()) {
    double val = g.spec().eval(psi_eigen(pi, j)).get_d();
    out.add(pi, coef * val);
  }
  return out;
}

DiagramVectorExact apply_psi_exact(int j, const DiagramVectorExact& v) {
  DiagramVectorExact out;
  for (const auto& [pi, coef] : v.entries()) out.add(pi, coef * psi_eigen(pi, j));
  return out;
}

// ----------------------------------------------------- relation checks

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::yangian1: return "yangian1";
    case Relation::yangian2: return "yangian2";
    case Relation::yangian3: return "yangian3";
    case Relation::yangian4: return "yangian4";
    case Relation::yangian5: return "yangian5";
    case Relation::yangian6: return "yangian6";
    case Relation::yangian7: return "yangian7";
    case Relation::yangian8: return "yangian8";
    case Relation::yangian9: return "yangian9";
    case Relation::boundary: return "boundary";
  }
  return "?";
}

Relation relation_from_name(const std::string& name) {
  for (Relation r : {Relation::yangian1, Relation::yangian2, Relation::yangian3,
                     Relation::yangian4, Relation::yangian5, Relation::yangian6,
                     Relation::yangian7, Relation::yangian8, Relation::yangian9,
                     Relation::boundary}) {
    if (name == relation_name(r)) return r;
  }
  throw std::invalid_argument("unknown relation: " + name);
}

namespace {

using Op = std::function<DiagramVector(const DiagramVector&)>;

double max_abs(const DiagramVector& v) {
  double m = 0;
  for (const auto& [p, c] : v.entries()) m = std::max(m, std::abs(c));
  return m;
}

// Sum of operator terms, tracking the largest summand for the relative
// residual.
struct Accum {
  DiagramVector v;
  double scale = 0;
  void add(const DiagramVector& w, double k = 1.0) {
    scale = std::max(scale, max_abs(w) * std::abs(k));
    v = v + w.scaled(k);
  }
};

DiagramVector comm(const Op& a, const Op& b, const DiagramVector& v) {
  return a(b(v)) - b(a(v));
}
DiagramVector acomm(const Op& a, const Op& b, const DiagramVector& v) {
  return a(b(v)) + b(a(v));
}

// The cubic (j,k) relation family shared by yangian1/2/4/5:
//   [A_{j+3}, B_k] - 3[A_{j+2}, B_{k+1}] + 3[A_{j+1}, B_{k+2}] - [A_j, B_{k+3}]
//   + s2 [A_{j+1}, B_k] - s2 [A_j, B_{k+1}] + anti_sign * s3 {A_j, B_k}
Accum cubic_family(const std::function<Op(int)>& A, const std::function<Op(int)>& B,
                   int j, int k, double s2, double s3, double anti_sign,
                   const DiagramVector& v) {
  Accum acc;
  acc.add(comm(A(j + 3), B(k), v));
  acc.add(comm(A(j + 2), B(k + 1), v), -3.0);
  acc.add(comm(A(j + 1), B(k + 2), v), 3.0);
  acc.add(comm(A(j), B(k + 3), v), -1.0);
  acc.add(comm(A(j + 1), B(k), v), s2);
  acc.add(comm(A(j), B(k + 1), v), -s2);
  acc.add(acomm(A(j), B(k), v), anti_sign * s3);
  return acc;
}

int relation_headroom(Relation rel) {
  switch (rel) {
    case Relation::yangian1: return 2;
    case Relation::yangian2: return 0;
    case Relation::yangian3: return 1;
    case Relation::yangian4: return 1;
    case Relation::yangian5: return 0;
    case Relation::yangian6: return 1;
    case Relation::yangian7: return 0;
    case Relation::yangian8: return 3;
    case Relation::yangian9: return 0;
    case Relation::boundary: return 1;
  }
  return 3;
}

}  // namespace

RelationReport verify_relation(Relation rel, const std::vector<int>& indices, int level,
                               const AmplitudeGauge& g, double tol) {
  RelationReport rep;
  rep.relation = relation_name(rel);
  rep.indices = indices;
  rep.level = level;
  rep.spec = g.spec();
  rep.seed = g.seed();
  rep.tol = tol;

  const auto& s = syms();
  double s2 = g.spec().eval(s.sigma2).get_d();
  double s3 = g.spec().eval(s.sigma3).get_d();
  auto E = [&g](int j) -> Op {
    return [j, &g](const DiagramVector& v) { return apply_e(j, v, g); };
  };
  auto F = [&g](int j) -> Op {
    return [j, &g](const DiagramVector& v) { return apply_f(j, v, g); };
  };
  auto P = [&g](int j) -> Op {
    return [j, &g](const DiagramVector& v) { return apply_psi(j, v, g); };
  };

  auto at = [&](size_t i) { return i < indices.size() ? indices[i] : 0; };
  int j = at(0), k = at(1);

  auto lhs = [&](const DiagramVector& v) -> Accum {
    switch (rel) {
      case Relation::yangian1:
        return cubic_family(E, E, j, k, s2, s3, -1.0, v);
      case Relation::yangian2:
        return cubic_family(F, F, j, k, s2, s3, +1.0, v);
      case Relation::yangian3: {
        Accum acc;
        acc.add(comm(E(j), F(k), v));
        acc.add(apply_psi(j + k, v, g), -1.0);
        return acc;
      }
      case Relation::yangian4:
        return cubic_family(P, E, j, k, s2, s3, -1.0, v);
      case Relation::yangian5:
        return cubic_family(P, F, j, k, s2, s3, +1.0, v);
      case Relation::yangian6: {
        Accum acc;
        acc.add(comm(P(0), E(j), v));
        acc.add(comm(P(1), E(j), v));
        acc.add(comm(P(2), E(j), v));
        acc.add(apply_e(j, v, g), -2.0);
        return acc;
      }
      case Relation::yangian7: {
        Accum acc;
        acc.add(comm(P(0), F(j), v));
        acc.add(comm(P(1), F(j), v));
        acc.add(comm(P(2), F(j), v));
        acc.add(apply_f(j, v, g), 2.0);
        return acc;
      }
      case Relation::yangian8:
      case Relation::yangian9: {
        int j1 = at(0), j2 = at(1), j3 = at(2);
        std::function<Op(int)> G;
        if (rel == Relation::yangian8)
          G = E;
        else
          G = F;
        Accum acc;
        const int perms[6][3] = {{j1, j2, j3}, {j1, j3, j2}, {j2, j1, j3},
                                 {j2, j3, j1}, {j3, j1, j2}, {j3, j2, j1}};
        for (const auto& p : perms) {
          auto inner = [&](const DiagramVector& w) { return comm(G(p[1]), G(p[2] + 1), w); };
          acc.add(G(p[0])(inner(v)));
          acc.add(inner(G(p[0])(v)), -1.0);
        }
        return acc;
      }
      case Relation::boundary: {
        Accum acc;
        acc.add(comm(P(0), E(j), v));
        acc.add(comm(P(1), E(j), v));
        acc.add(comm(P(2), E(j), v));
        acc.add(apply_e(j, v, g), -2.0);
        acc.add(comm(P(0), F(k), v));
        acc.add(comm(P(1), F(k), v));
        acc.add(comm(P(2), F(k), v));
        acc.add(apply_f(k, v, g), 2.0);
        return acc;
      }
    }
    return Accum{};
  };

  int max_vol = std::min(level, g.level_bound() - relation_headroom(rel));
  for (int n = 0; n <= max_vol; ++n) {
    for (const auto& pi : PlanePartition::enumerate(n)) {
      Accum r = lhs(DiagramVector::basis(pi));
      double denom = std::max(1.0, r.scale);
      for (const auto& [out, cval] : r.v.entries()) {
        double a = std::abs(cval);
        if (a / denom > rep.max_residual) {
          rep.max_residual = a / denom;
          rep.max_abs_residual = a;
          rep.scale = r.scale;
          rep.worst_input = pi.str();
          rep.worst_output = out.str();
        }
      }
    }
  }
  rep.pass = rep.max_residual < tol;
  return rep;
}

}  // namespace yang3d
