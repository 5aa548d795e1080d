#include "yang3d/operator_expr.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <set>

namespace yang3d {

// -------------------------------------------------------------- LinForm

LinForm LinForm::var(int id, int c) {
  LinForm f;
  if (c != 0) f.coef.emplace_back(id, c);
  return f;
}

namespace {
void add_coef(std::vector<std::pair<int, int>>& cs, int id, int c) {
  if (c == 0) return;
  auto it = std::lower_bound(cs.begin(), cs.end(), std::make_pair(id, 0),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it != cs.end() && it->first == id) {
    it->second += c;
    if (it->second == 0) cs.erase(it);
  } else {
    cs.insert(it, {id, c});
  }
}
}  // namespace

LinForm LinForm::operator+(const LinForm& o) const {
  LinForm r = *this;
  r.cst += o.cst;
  for (const auto& [id, c] : o.coef) add_coef(r.coef, id, c);
  return r;
}

LinForm LinForm::operator-(const LinForm& o) const { return *this + (-o); }

LinForm LinForm::operator-() const { return scaled(-1); }

LinForm LinForm::operator+(int c) const {
  LinForm r = *this;
  r.cst += c;
  return r;
}

LinForm LinForm::operator-(int c) const { return *this + (-c); }

LinForm LinForm::scaled(int k) const {
  LinForm r;
  if (k == 0) return r;
  r.cst = cst * k;
  for (const auto& [id, c] : coef) r.coef.emplace_back(id, c * k);
  return r;
}

int LinForm::coeff_of(int id) const {
  for (const auto& [v, c] : coef)
    if (v == id) return c;
  return 0;
}

long LinForm::eval(const std::map<int, long>& assign) const {
  long acc = cst;
  for (const auto& [id, c] : coef) acc += c * assign.at(id);
  return acc;
}

LinForm LinForm::subst(int id, const LinForm& value) const {
  int c = coeff_of(id);
  if (c == 0) return *this;
  LinForm rest = *this;
  add_coef(rest.coef, id, -c);
  return rest + value.scaled(c);
}

int fresh_sum_var() {
  static std::atomic<int> next{0};
  return next.fetch_add(1);
}

// ------------------------------------------------------------ CoeffPoly

CoeffPoly CoeffPoly::scalar(const Scalar& s) {
  CoeffPoly c;
  if (!s.is_zero()) c.t_.emplace(std::map<int, int>{}, s);
  return c;
}

CoeffPoly CoeffPoly::linear(const LinForm& f) {
  CoeffPoly c;
  if (f.cst != 0) c.t_.emplace(std::map<int, int>{}, Scalar(f.cst));
  for (const auto& [id, k] : f.coef)
    if (k != 0) c.t_.emplace(std::map<int, int>{{id, 1}}, Scalar(k));
  return c;
}

CoeffPoly CoeffPoly::operator+(const CoeffPoly& o) const {
  CoeffPoly r = *this;
  for (const auto& [m, s] : o.t_) {
    auto it = r.t_.find(m);
    if (it == r.t_.end()) {
      r.t_.emplace(m, s);
    } else {
      it->second += s;
      if (it->second.is_zero()) r.t_.erase(it);
    }
  }
  return r;
}

CoeffPoly CoeffPoly::operator*(const CoeffPoly& o) const {
  CoeffPoly r;
  for (const auto& [m1, s1] : t_) {
    for (const auto& [m2, s2] : o.t_) {
      std::map<int, int> m = m1;
      for (const auto& [id, e] : m2) m[id] += e;
      Scalar s = s1 * s2;
      auto it = r.t_.find(m);
      if (it == r.t_.end()) {
        r.t_.emplace(std::move(m), s);
      } else {
        it->second += s;
        if (it->second.is_zero()) r.t_.erase(it);
      }
    }
  }
  return r;
}

CoeffPoly CoeffPoly::scaled(const Scalar& s) const {
  CoeffPoly r;
  if (s.is_zero()) return r;
  for (const auto& [m, c] : t_) r.t_.emplace(m, c * s);
  return r;
}

CoeffPoly CoeffPoly::subst(int id, const LinForm& value) const {
  CoeffPoly r;
  for (const auto& [m, s] : t_) {
    CoeffPoly piece = CoeffPoly::scalar(s);
    for (const auto& [v, e] : m) {
      CoeffPoly factor =
          v == id ? CoeffPoly::linear(value) : CoeffPoly::linear(LinForm::var(v));
      for (int i = 0; i < e; ++i) piece = piece * factor;
    }
    r = r + piece;
  }
  return r;
}

Scalar CoeffPoly::eval(const std::map<int, long>& assign) const {
  Scalar acc;
  for (const auto& [m, s] : t_) {
    Int x(1);
    for (const auto& [id, e] : m) {
      long v = assign.at(id);
      for (int i = 0; i < e; ++i) x *= v;
    }
    acc += s * Scalar(x);
  }
  return acc;
}

CoeffPoly CoeffPoly::map_scalars(int var, const Scalar& value) const {
  CoeffPoly r;
  for (const auto& [m, s] : t_) {
    Scalar sub = s.subst(var, value);
    if (!sub.is_zero()) r.t_.emplace(m, sub);
  }
  return r;
}

// --------------------------------------------------------- OperatorExpr

OperatorExpr OperatorExpr::a(const LinForm& layer, const LinForm& mode) {
  ModeTerm t;
  t.coeff = CoeffPoly::scalar(Scalar(1));
  t.factors.push_back({layer, mode});
  return OperatorExpr(std::move(t));
}

OperatorExpr OperatorExpr::identity(const Scalar& s) {
  ModeTerm t;
  t.coeff = CoeffPoly::scalar(s);
  return OperatorExpr(std::move(t));
}

OperatorExpr OperatorExpr::operator+(const OperatorExpr& o) const {
  OperatorExpr r = *this;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  return r;
}

OperatorExpr OperatorExpr::operator-(const OperatorExpr& o) const {
  return *this + o.scaled(Scalar(-1));
}

OperatorExpr OperatorExpr::scaled(const Scalar& s) const {
  OperatorExpr r;
  if (s.is_zero()) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = t.coeff.scaled(s);
  return r;
}

OperatorExpr OperatorExpr::scaled_poly(const CoeffPoly& c) const {
  OperatorExpr r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = t.coeff * c;
  return r;
}

OperatorExpr OperatorExpr::compose(const OperatorExpr& a, const OperatorExpr& b) {
  OperatorExpr r;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      ModeTerm t;
      t.coeff = ta.coeff * tb.coeff;
      t.factors = ta.factors;
      t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
      t.vars = ta.vars;
      t.vars.insert(t.vars.end(), tb.vars.begin(), tb.vars.end());
      t.cons = ta.cons;
      t.cons.insert(t.cons.end(), tb.cons.begin(), tb.cons.end());
      r.terms_.push_back(std::move(t));
    }
  }
  return r;
}

OperatorExpr OperatorExpr::summed_over(int var, VarKind kind,
                                       const std::vector<Constraint>& cons) const {
  OperatorExpr r = *this;
  for (auto& t : r.terms_) {
    t.vars.emplace_back(var, kind);
    t.cons.insert(t.cons.end(), cons.begin(), cons.end());
  }
  return r;
}

OperatorExpr OperatorExpr::substituted(int scalar_var, const Scalar& value) const {
  OperatorExpr r = *this;
  for (auto& t : r.terms_) t.coeff = t.coeff.map_scalars(scalar_var, value);
  return r;
}

namespace {

Scalar annihilation_coeff(long mode) {
  // a_{j,n>0} = -(n/(h1 h2)) d/dp_{j,n}; memoized, these repeat heavily.
  static std::map<long, Scalar> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(mode);
  if (it != cache.end()) return it->second;
  Scalar s(MPoly(Int(-mode)), MPoly::var(sym::h1()) * MPoly::var(sym::h2()));
  cache.emplace(mode, s);
  return s;
}

struct PreparedTerm {
  CoeffPoly coeff;
  std::vector<AFactor> factors;
  std::vector<std::pair<int, VarKind>> vars;
  std::vector<Constraint> ineqs;
  int shift = 0;
};

bool eliminate_equalities(ModeTerm& t, std::vector<Constraint>& eqs,
                          std::vector<Constraint>& ineqs) {
  for (const auto& c : t.cons) (c.eq ? eqs : ineqs).push_back(c);
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t i = 0; i < eqs.size(); ++i) {
      int pick = -1, pickc = 0;
      for (const auto& [id, c] : eqs[i].f.coef) {
        bool owned = false;
        for (const auto& [v, k] : t.vars) owned = owned || v == id;
        if (owned && (c == 1 || c == -1)) {
          pick = id;
          pickc = c;
          break;
        }
      }
      if (pick < 0) continue;
      LinForm rest = eqs[i].f;
      add_coef(rest.coef, pick, -pickc);
      LinForm value = pickc == 1 ? -rest : rest;
      for (auto& f : t.factors) {
        f.layer = f.layer.subst(pick, value);
        f.mode = f.mode.subst(pick, value);
      }
      t.coeff = t.coeff.subst(pick, value);
      for (size_t k = 0; k < eqs.size(); ++k)
        if (k != i) eqs[k].f = eqs[k].f.subst(pick, value);
      for (auto& c : ineqs) c.f = c.f.subst(pick, value);
      t.vars.erase(std::remove_if(t.vars.begin(), t.vars.end(),
                                  [&](const auto& v) { return v.first == pick; }),
                   t.vars.end());
      eqs.erase(eqs.begin() + i);
      progress = true;
      break;
    }
  }
  for (const auto& e : eqs) {
    if (!e.f.is_constant())
      throw IllFormedOperator("equality constraint not eliminable by a unit-coefficient variable");
    if (e.f.cst != 0) return false;  // infeasible: term contributes nothing
  }
  return true;
}

// Bound |var| for every remaining mode variable by propagating the fact
// that any contributing concrete factor mode lies in [-(d+|shift|), d].
std::map<int, long> mode_bounds(const PreparedTerm& t, int degree, int N) {
  std::map<int, long> bound;
  for (const auto& [id, kind] : t.vars)
    if (kind == VarKind::layer) bound[id] = N;
  long base = degree + std::abs(t.shift) + 1;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& f : t.factors) {
      int unb = -1, unbc = 0;
      long acc = base + std::abs(f.mode.cst);
      bool usable = true;
      for (const auto& [id, c] : f.mode.coef) {
        auto it = bound.find(id);
        if (it != bound.end()) {
          acc += std::abs(c) * it->second;
        } else if (unb == -1 && (c == 1 || c == -1)) {
          unb = id;
          unbc = c;
        } else {
          usable = false;
          break;
        }
      }
      if (usable && unb != -1) {
        if (!bound.count(unb)) {
          bound[unb] = acc;
          progress = true;
        }
      }
    }
  }
  for (const auto& [id, kind] : t.vars)
    if (kind == VarKind::mode && !bound.count(id))
      throw IllFormedOperator("summation variable not bounded by any factor mode");
  return bound;
}

}  // namespace

namespace {

// Flat, slot-indexed form of a prepared term for the enumeration loop.
struct CompiledTerm {
  struct Form {
    long cst = 0;
    std::vector<std::pair<int, int>> coef;  // (slot, coefficient)
    long eval(const std::vector<long>& v) const {
      long acc = cst;
      for (const auto& [s, c] : coef) acc += c * v[s];
      return acc;
    }
    int max_slot() const {
      int m = -1;
      for (const auto& [s, c] : coef) m = std::max(m, s);
      return m;
    }
  };
  struct CoeffTerm {
    Scalar c;
    std::vector<std::pair<int, int>> pows;  // (slot, exponent)
  };
  std::vector<long> lo, hi;                   // per slot
  std::vector<std::vector<Form>> checks;      // ineqs checked once slot assigned
  std::vector<std::pair<Form, Form>> factors;  // (layer, mode)
  std::vector<CoeffTerm> coeff;
};

CompiledTerm compile_term(const PreparedTerm& pt, const std::map<int, long>& bound, int N) {
  CompiledTerm ct;
  std::map<int, int> slot;
  for (const auto& [id, kind] : pt.vars) {
    int s = static_cast<int>(ct.lo.size());
    slot[id] = s;
    if (kind == VarKind::layer) {
      ct.lo.push_back(1);
      ct.hi.push_back(N);
    } else {
      ct.lo.push_back(-bound.at(id));
      ct.hi.push_back(bound.at(id));
    }
  }
  ct.checks.resize(ct.lo.size());
  auto to_form = [&](const LinForm& f) {
    CompiledTerm::Form out;
    out.cst = f.cst;
    for (const auto& [id, c] : f.coef) out.coef.emplace_back(slot.at(id), c);
    return out;
  };
  for (const auto& c : pt.ineqs) {
    CompiledTerm::Form f = to_form(c.f);
    if (f.coef.size() == 1) {
      // Tighten the slot range instead of checking each tuple.
      auto [s, k] = f.coef[0];
      if (k > 0) {
        long bound_lo = -f.cst >= 0 ? (-f.cst + k - 1) / k : -((f.cst) / k);
        ct.lo[s] = std::max(ct.lo[s], bound_lo);
      } else {
        long kk = -k;
        long bound_hi = f.cst >= 0 ? f.cst / kk : -((-f.cst + kk - 1) / kk);
        ct.hi[s] = std::min(ct.hi[s], bound_hi);
      }
    } else if (!f.coef.empty()) {
      ct.checks[f.max_slot()].push_back(f);
    } else if (f.cst < 0) {
      // Constant-false constraint: empty ranges kill the term.
      if (!ct.lo.empty()) ct.lo[0] = ct.hi[0] + 1;
    }
  }
  for (const auto& fac : pt.factors) ct.factors.emplace_back(to_form(fac.layer), to_form(fac.mode));
  for (const auto& [mono, s] : pt.coeff.terms()) {
    CompiledTerm::CoeffTerm cc;
    cc.c = s;
    for (const auto& [id, e] : mono) cc.pows.emplace_back(slot.at(id), e);
    ct.coeff.push_back(std::move(cc));
  }
  return ct;
}

}  // namespace

const std::map<std::map<int, int>, Scalar>& CoeffPoly::terms() const { return t_; }

std::vector<PPolynomial> OperatorExpr::apply_batch(const std::vector<PPolynomial>& ps,
                                                   int N) const {
  std::vector<PPolynomial> out(ps.size());
  int d = -1;
  for (const auto& p : ps) d = std::max(d, p.degree());
  if (d < 0) return out;
  for (const ModeTerm& t0 : terms_) {
    ModeTerm t = t0;
    std::vector<Constraint> eqs, ineqs;
    if (!eliminate_equalities(t, eqs, ineqs)) continue;

    PreparedTerm pt;
    pt.coeff = std::move(t.coeff);
    pt.factors = std::move(t.factors);
    pt.vars = std::move(t.vars);
    pt.ineqs = std::move(ineqs);
    LinForm total;
    for (const auto& f : pt.factors) total = total + f.mode;
    for (const auto& [id, c] : total.coef)
      if (c != 0)
        throw IllFormedOperator("total mode depends on a summation variable (unbounded sum)");
    pt.shift = total.cst;

    CompiledTerm ct = compile_term(pt, mode_bounds(pt, d, N), N);
    size_t nv = ct.lo.size();
    std::vector<long> vals(nv, 0);
    std::vector<std::pair<long, long>> fac(ct.factors.size());
    std::vector<std::pair<long, long>> ordered;
    ordered.reserve(fac.size());

    std::function<void(size_t)> enumerate = [&](size_t vi) {
      if (vi == nv) {
        for (size_t i = 0; i < ct.factors.size(); ++i) {
          long j = ct.factors[i].first.eval(vals);
          long m = ct.factors[i].second.eval(vals);
          if (m == 0 || j < 1 || j > N) return;  // a_{j,0} = 0; out-of-range layer
          fac[i] = {j, m};
        }
        // Normal order: creations left, stable; annihilators must fit d.
        ordered.clear();
        for (const auto& f : fac)
          if (f.second < 0) ordered.push_back(f);
        for (const auto& f : fac)
          if (f.second > 0) {
            if (f.second > d) return;
            ordered.push_back(f);
          }
        Scalar c;
        bool have_c = false;
        for (size_t k = 0; k < ps.size(); ++k) {
          if (ps[k].is_zero()) continue;
          PPolynomial cur = ps[k];
          for (auto it = ordered.rbegin(); it != ordered.rend() && !cur.is_zero(); ++it) {
            auto [j, m] = *it;
            if (m < 0)
              cur = cur.mul_var({static_cast<int>(j), static_cast<int>(-m)});
            else
              cur = cur.derivative({static_cast<int>(j), static_cast<int>(m)})
                        .scaled(annihilation_coeff(m));
          }
          if (cur.is_zero()) continue;
          if (!have_c) {
            c = Scalar();
            for (const auto& cc : ct.coeff) {
              Int x(1);
              for (const auto& [s, e] : cc.pows)
                for (int i = 0; i < e; ++i) x *= vals[s];
              if (x != 0) c += cc.c * Scalar(x);
            }
            have_c = true;
          }
          if (c.is_zero()) return;
          out[k] = out[k] + cur.scaled(c);
        }
        return;
      }
      for (long v = ct.lo[vi]; v <= ct.hi[vi]; ++v) {
        vals[vi] = v;
        bool ok = true;
        for (const auto& f : ct.checks[vi])
          if (f.eval(vals) < 0) {
            ok = false;
            break;
          }
        if (ok) enumerate(vi + 1);
      }
    };
    enumerate(0);
  }
  return out;
}

PPolynomial OperatorExpr::apply(const PPolynomial& p, int N) const {
  if (p.is_zero()) return {};
  return apply_batch({p}, N)[0];
}

PPolynomial apply_commutator(const OperatorExpr& a, const OperatorExpr& b, const PPolynomial& p,
                             int N) {
  return a.apply(b.apply(p, N), N) - b.apply(a.apply(p, N), N);
}

bool OpImages::all_zero() const {
  for (const auto& im : images)
    if (!im.is_zero()) return false;
  return true;
}

OpImages op_images(const OperatorExpr& op, const std::vector<PMonomial>& basis, int N) {
  OpImages r;
  r.basis = basis;
  std::vector<PPolynomial> in(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) in[i].add_term(basis[i], Scalar(1));
  r.images = op.apply_batch(in, N);
  return r;
}

OpImages commutator_images(const OperatorExpr& a, const OperatorExpr& b,
                           const std::vector<PMonomial>& basis, int N) {
  OpImages r;
  r.basis = basis;
  std::vector<PPolynomial> in(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) in[i].add_term(basis[i], Scalar(1));
  std::vector<PPolynomial> ab = a.apply_batch(b.apply_batch(in, N), N);
  std::vector<PPolynomial> ba = b.apply_batch(a.apply_batch(in, N), N);
  r.images.resize(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) r.images[i] = ab[i] - ba[i];
  return r;
}

ScalarMatrix commutator_matrix(const OperatorExpr& a, const OperatorExpr& b, int d, int N) {
  ScalarMatrix m;
  m.cols = pmonomials_up_to(d, N);
  OpImages im = commutator_images(a, b, m.cols, N);
  std::set<PMonomial> rows;
  for (const auto& p : im.images)
    for (const auto& [mono, c] : p.terms()) rows.insert(mono);
  m.rows.assign(rows.begin(), rows.end());
  m.m.assign(m.rows.size(), std::vector<Scalar>(m.cols.size()));
  for (size_t c = 0; c < m.cols.size(); ++c)
    for (size_t r = 0; r < m.rows.size(); ++r) m.m[r][c] = im.images[c].coeff(m.rows[r]);
  return m;
}

// --------------------------------------------------------------- v_mode

namespace {

const ElementarySyms& syms() {
  static const ElementarySyms s = elementary_syms();
  return s;
}

Scalar alpha0() {
  const auto& s = syms();
  return -s.h3 / (s.h1 * s.h2);
}

Scalar h1h2() { return syms().h1 * syms().h2; }

}  // namespace

// The layer-index conventions below are pinned by the rest of the
// algebra rather than taken verbatim from any single display: the sign
// of V_2's J' term by the vacuum polynomial of b_{-2,2} (the explicit
// P_{2,2}), the V_3 cross/diagonal J' terms by the worked a-form of
// V_{3,0} and the commutator table, and the J'' weight
// (j-1)(N-j)/2 - (N-1)(N-2)/12 by the table (it also matches the
// alpha0^2 combination inside b_{n,3}).  With these choices the five
// [V_j, V_k] relations hold exactly for all N tested.
OperatorExpr v_mode(int kind, int m, int N) {
  switch (kind) {
    case 1: {
      // V_1(z) = J_1 + ... + J_N
      int j = fresh_sum_var();
      return OperatorExpr::a(LinForm::var(j), LinForm(m))
          .summed_over(j, VarKind::layer, {});
    }
    case 2: {
      // V_2(z) = -(h1 h2 / 2) sum_j :J_j J_j: + (h1 h2 a0 / 2) sum_j (N+1-2j) J_j'
      int j = fresh_sum_var(), k = fresh_sum_var(), l = fresh_sum_var();
      OperatorExpr quad =
          OperatorExpr::compose(OperatorExpr::a(LinForm::var(j), LinForm::var(k)),
                                OperatorExpr::a(LinForm::var(j), LinForm::var(l)))
              .summed_over(k, VarKind::mode, {})
              .summed_over(l, VarKind::mode,
                           {{LinForm::var(k) + LinForm::var(l) - m, true}})
              .summed_over(j, VarKind::layer, {})
              .scaled(-h1h2() / Scalar(2));
      int i = fresh_sum_var();
      OperatorExpr lin =
          OperatorExpr::a(LinForm::var(i), LinForm(m))
              .scaled_poly(CoeffPoly::linear(LinForm::var(i, -2) + (N + 1)))
              .summed_over(i, VarKind::layer, {})
              .scaled(h1h2() * alpha0() / Scalar(2) * Scalar(-m - 1));
      return quad + lin;
    }
    case 3: {
      OperatorExpr acc;
      // (1/3) h1^2 h2^2 sum_j :J_j^3:
      {
        int j = fresh_sum_var(), a = fresh_sum_var(), b = fresh_sum_var(), c = fresh_sum_var();
        OperatorExpr cubic = OperatorExpr::compose(
            OperatorExpr::compose(OperatorExpr::a(LinForm::var(j), LinForm::var(a)),
                                  OperatorExpr::a(LinForm::var(j), LinForm::var(b))),
            OperatorExpr::a(LinForm::var(j), LinForm::var(c)));
        acc = acc + cubic.summed_over(a, VarKind::mode, {})
                        .summed_over(b, VarKind::mode, {})
                        .summed_over(c, VarKind::mode,
                                     {{LinForm::var(a) + LinForm::var(b) + LinForm::var(c) - m,
                                       true}})
                        .summed_over(j, VarKind::layer, {})
                        .scaled(h1h2() * h1h2() / Scalar(3));
      }
      Scalar a0h = alpha0() * h1h2() * h1h2();
      // +(1/2) a0 h^2 sum_{j<k} J_j J_k' - (1/2) a0 h^2 sum_{j<k} J_j' J_k
      for (int variant = 0; variant < 2; ++variant) {
        int j = fresh_sum_var(), k = fresh_sum_var(), a = fresh_sum_var(), b = fresh_sum_var();
        OperatorExpr pair =
            OperatorExpr::compose(OperatorExpr::a(LinForm::var(j), LinForm::var(a)),
                                  OperatorExpr::a(LinForm::var(k), LinForm::var(b)));
        LinForm deriv_mode = variant == 0 ? LinForm::var(b) : LinForm::var(a);
        pair = pair.scaled_poly(CoeffPoly::linear(-deriv_mode - 1));
        pair = pair.summed_over(a, VarKind::mode, {})
                   .summed_over(b, VarKind::mode,
                                {{LinForm::var(a) + LinForm::var(b) - m, true}})
                   .summed_over(j, VarKind::layer, {})
                   .summed_over(k, VarKind::layer,
                                {{LinForm::var(k) - LinForm::var(j) - 1, false}});
        acc = acc + pair.scaled(variant == 0 ? a0h / Scalar(2) : -a0h / Scalar(2));
      }
      // -(1/2) a0 h^2 sum_j (N+1-2j) J_j' J_j
      {
        int j = fresh_sum_var(), a = fresh_sum_var(), b = fresh_sum_var();
        OperatorExpr pair =
            OperatorExpr::compose(OperatorExpr::a(LinForm::var(j), LinForm::var(a)),
                                  OperatorExpr::a(LinForm::var(j), LinForm::var(b)));
        pair = pair.scaled_poly(CoeffPoly::linear(-LinForm::var(a) - 1) *
                                CoeffPoly::linear(LinForm::var(j, -2) + (N + 1)));
        acc = acc + pair.summed_over(a, VarKind::mode, {})
                        .summed_over(b, VarKind::mode,
                                     {{LinForm::var(a) + LinForm::var(b) - m, true}})
                        .summed_over(j, VarKind::layer, {})
                        .scaled(-a0h / Scalar(2));
      }
      // - a0^2 h^2 sum_j ((j-1)(N-j)/2 - (N-1)(N-2)/12) J_j''
      {
        int j = fresh_sum_var();
        CoeffPoly w = CoeffPoly::linear(LinForm::var(j) - 1) *
                          CoeffPoly::linear(LinForm::var(j, -1) + N).scaled(Scalar(Rat(1, 2))) +
                      CoeffPoly::scalar(Scalar(Rat(-static_cast<long>(N - 1) * (N - 2), 12)));
        OperatorExpr lin = OperatorExpr::a(LinForm::var(j), LinForm(m))
                               .scaled_poly(w)
                               .summed_over(j, VarKind::layer, {})
                               .scaled(-alpha0() * alpha0() * h1h2() * h1h2() *
                                       Scalar((-m - 1) * (-m - 2)));
        acc = acc + lin;
      }
      return acc;
    }
    default:
      throw std::invalid_argument("v_mode kind must be 1, 2 or 3");
  }
}

PPolynomial apply_a(int layer, int mode, const PPolynomial& p, int N) {
  if (mode == 0) throw std::invalid_argument("a_{j,0} is the discarded zero mode");
  if (layer < 1 || layer > N) throw std::invalid_argument("layer out of range");
  if (mode < 0) return p.mul_var({layer, -mode});
  return p.derivative({layer, mode}).scaled(annihilation_coeff(mode));
}

}  // namespace yang3d
