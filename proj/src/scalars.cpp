#include "yang3d/scalars.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>

namespace yang3d {

// ---------------------------------------------------------------- Vars

namespace {
std::mutex g_vars_mutex;
std::vector<std::string>& var_table() {
  static std::vector<std::string> t;
  return t;
}
}  // namespace

int Vars::id(const std::string& name) {
  std::lock_guard<std::mutex> lock(g_vars_mutex);
  auto& t = var_table();
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] == name) return static_cast<int>(i);
  t.push_back(name);
  return static_cast<int>(t.size()) - 1;
}

const std::string& Vars::name(int id) {
  std::lock_guard<std::mutex> lock(g_vars_mutex);
  return var_table().at(id);
}

int Vars::count() {
  std::lock_guard<std::mutex> lock(g_vars_mutex);
  return static_cast<int>(var_table().size());
}

namespace sym {
int h1() { static int v = Vars::id("h1"); return v; }
int h2() { static int v = Vars::id("h2"); return v; }
int psi0() { static int v = Vars::id("psi0"); return v; }
int sqrt_beta() { static int v = Vars::id("sqrtbeta"); return v; }
int n_tilde() { static int v = Vars::id("Nt"); return v; }
}  // namespace sym

// ------------------------------------------------------------ Monomial

Monomial::Monomial(std::vector<int> exps) : e_(std::move(exps)) {
  for (int x : e_)
    if (x < 0) throw std::invalid_argument("negative exponent");
  trim();
}

void Monomial::trim() {
  while (!e_.empty() && e_.back() == 0) e_.pop_back();
}

Monomial Monomial::var(int id, int exp) {
  Monomial m;
  if (exp < 0) throw std::invalid_argument("negative exponent");
  if (exp > 0) {
    m.e_.assign(id + 1, 0);
    m.e_[id] = exp;
  }
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (int x : e_) d += x;
  return d;
}

int Monomial::exp(int var) const {
  return var >= 0 && var < static_cast<int>(e_.size()) ? e_[var] : 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.e_.resize(std::max(e_.size(), o.e_.size()), 0);
  for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = exp(static_cast<int>(i)) + o.exp(static_cast<int>(i));
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.exp(static_cast<int>(i))) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  if (!o.divides(*this)) throw std::domain_error("monomial division not exact");
  Monomial r;
  r.e_ = e_;
  for (size_t i = 0; i < o.e_.size(); ++i) r.e_[i] -= o.e_[i];
  r.trim();
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.e_.resize(std::min(a.e_.size(), b.e_.size()), 0);
  for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::min(a.e_[i], b.e_[i]);
  r.trim();
  return r;
}

bool Monomial::operator<(const Monomial& o) const {
  int da = degree(), db = o.degree();
  if (da != db) return da < db;
  size_t n = std::max(e_.size(), o.e_.size());
  for (size_t i = 0; i < n; ++i) {
    int a = exp(static_cast<int>(i)), b = o.exp(static_cast<int>(i));
    if (a != b) return a < b;  // smaller power of the earlier var sorts first
  }
  return false;
}

// --------------------------------------------------------------- MPoly

MPoly::MPoly(const Int& c) {
  if (c != 0) t_.emplace(Monomial(), c);
}

MPoly MPoly::var(int id, int exp) {
  MPoly p;
  p.t_.emplace(Monomial::var(id, exp), Int(1));
  return p;
}

MPoly MPoly::term(const Int& c, const Monomial& m) {
  MPoly p;
  if (c != 0) p.t_.emplace(m, c);
  return p;
}

void MPoly::add_term(const Int& c, const Monomial& m) {
  if (c == 0) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

bool MPoly::is_one() const {
  return t_.size() == 1 && t_.begin()->first.is_one() && t_.begin()->second == 1;
}

bool MPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
}

Int MPoly::constant() const {
  if (t_.empty()) return Int(0);
  if (!is_constant()) throw std::domain_error("not a constant polynomial");
  return t_.begin()->second;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& [m, c] : o.t_) r.add_term(c, m);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& [m, c] : o.t_) r.add_term(-c, m);
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r;
  for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r;
  for (const auto& [m1, c1] : t_)
    for (const auto& [m2, c2] : o.t_) r.add_term(c1 * c2, m1 * m2);
  return r;
}

MPoly MPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power");
  MPoly r(Int(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

int MPoly::cmp(const MPoly& a, const MPoly& b) {
  auto ia = a.t_.begin(), ib = b.t_.begin();
  for (; ia != a.t_.end() && ib != b.t_.end(); ++ia, ++ib) {
    if (ia->first < ib->first) return -1;
    if (ib->first < ia->first) return 1;
    int c = ::cmp(ia->second, ib->second);
    if (c != 0) return c;
  }
  if (ia != a.t_.end()) return 1;
  if (ib != b.t_.end()) return -1;
  return 0;
}

int MPoly::total_degree() const {
  if (t_.empty()) return -1;
  return t_.rbegin()->first.degree();
}

int MPoly::degree_in(int var) const {
  int d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, m.exp(var));
  return d;
}

int MPoly::max_var() const {
  int v = -1;
  for (const auto& [m, c] : t_) v = std::max(v, m.max_var());
  return v;
}

const Monomial& MPoly::leading_monomial() const {
  if (t_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return t_.rbegin()->first;
}

const Int& MPoly::leading_coeff() const {
  if (t_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return t_.rbegin()->second;
}

Int MPoly::content() const {
  Int g(0);
  for (const auto& [m, c] : t_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Monomial MPoly::monomial_content() const {
  if (t_.empty()) return Monomial();
  auto it = t_.begin();
  Monomial g = it->first;
  for (++it; it != t_.end() && !g.is_one(); ++it) g = Monomial::gcd(g, it->first);
  return g;
}

MPoly MPoly::divexact_int(const Int& c) const {
  if (c == 0) throw std::domain_error("division by zero");
  MPoly r;
  for (const auto& [m, co] : t_) {
    Int q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), co.get_mpz_t(), c.get_mpz_t());
    if (rem != 0) throw std::domain_error("inexact integer division");
    r.t_.emplace(m, q);
  }
  return r;
}

MPoly MPoly::divexact_mono(const Monomial& m) const {
  MPoly r;
  for (const auto& [mo, c] : t_) r.t_.emplace(mo / m, c);
  return r;
}

MPoly MPoly::divexact(const MPoly& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  if (d.is_one()) return *this;
  MPoly rem = *this, q;
  while (!rem.is_zero()) {
    const Monomial& lm = rem.leading_monomial();
    const Monomial& dm = d.leading_monomial();
    if (!dm.divides(lm)) throw std::domain_error("inexact polynomial division");
    Int qc, qrem;
    mpz_tdiv_qr(qc.get_mpz_t(), qrem.get_mpz_t(), rem.leading_coeff().get_mpz_t(),
                d.leading_coeff().get_mpz_t());
    if (qrem != 0) throw std::domain_error("inexact polynomial division");
    Monomial qm = lm / dm;
    q.add_term(qc, qm);
    rem = rem - d * MPoly::term(qc, qm);
  }
  return q;
}

namespace {

// Pseudo-remainder of p by s viewed as univariate in var.
MPoly prem(const MPoly& p, const MPoly& s, int var) {
  std::vector<MPoly> pc = p.coeffs_in(var);
  std::vector<MPoly> sc = s.coeffs_in(var);
  int ds = static_cast<int>(sc.size()) - 1;
  const MPoly& lcs = sc.back();
  std::vector<MPoly> r = pc;
  while (static_cast<int>(r.size()) - 1 >= ds) {
    int dr = static_cast<int>(r.size()) - 1;
    MPoly lr = r.back();
    for (int i = 0; i <= dr; ++i) r[i] = r[i] * lcs;
    for (int i = 0; i <= ds; ++i) r[dr - ds + i] = r[dr - ds + i] - lr * sc[i];
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    if (r.empty()) return MPoly();
  }
  return MPoly::from_coeffs_in(var, r);
}

MPoly make_primitive(const MPoly& p) {
  if (p.is_zero()) return p;
  MPoly r = p.divexact_int(p.content()).divexact_mono(p.monomial_content());
  if (r.leading_coeff() < 0) r = -r;
  return r;
}

// gcd of integer-content-free, monomial-content-free polynomials.
MPoly gcd_primitive(const MPoly& a, const MPoly& b) {
  if (a.is_one() || b.is_one()) return MPoly(Int(1));
  if (a == b) return a;
  int v = std::max(a.max_var(), b.max_var());
  if (v < 0) return MPoly(Int(1));
  int da = a.degree_in(v), db = b.degree_in(v);
  if (da == 0 || db == 0) {
    // One operand is free of v; gcd divides the v-content of the other.
    std::vector<MPoly> cs = (da == 0 ? b : a).coeffs_in(v);
    MPoly cont;
    for (const auto& c : cs) cont = MPoly::gcd(cont, c);
    return gcd_primitive(da == 0 ? a : b, make_primitive(cont));
  }
  auto v_content = [v](const MPoly& p) {
    MPoly c;
    for (const auto& q : p.coeffs_in(v)) c = MPoly::gcd(c, q);
    return c;
  };
  MPoly ca = v_content(a), cb = v_content(b);
  MPoly pa = a.divexact(ca), pb = b.divexact(cb);
  MPoly cg = MPoly::gcd(ca, cb);
  MPoly p = da >= db ? pa : pb;
  MPoly s = da >= db ? pb : pa;
  while (true) {
    MPoly r = prem(p, s, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      s = MPoly(Int(1));
      break;
    }
    p = s;
    s = make_primitive(r.divexact(v_content(r)));
  }
  MPoly g = s.is_one() ? cg : cg * s.divexact(v_content(s));
  // Primitive PRS can leave residual content; strip it.
  return make_primitive(g);
}

}  // namespace

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.is_zero() ? b : make_primitive(b) * MPoly(b.content()) * MPoly::term(Int(1), b.monomial_content());
  if (b.is_zero()) return make_primitive(a) * MPoly(a.content()) * MPoly::term(Int(1), a.monomial_content());
  Int ca = a.content(), cb = b.content();
  Int ci;
  mpz_gcd(ci.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Monomial mg = Monomial::gcd(a.monomial_content(), b.monomial_content());
  MPoly pa = a.divexact_int(ca).divexact_mono(a.monomial_content());
  MPoly pb = b.divexact_int(cb).divexact_mono(b.monomial_content());
  if (pa.leading_coeff() < 0) pa = -pa;
  if (pb.leading_coeff() < 0) pb = -pb;
  return MPoly::term(ci, mg) * gcd_primitive(pa, pb);
}

Rat MPoly::eval(const std::vector<Rat>& point) const {
  Rat acc(0);
  for (const auto& [m, c] : t_) {
    Rat t(c);
    const auto& e = m.exps();
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (v >= point.size()) throw std::invalid_argument("evaluation point too short");
      Rat p = point[v];
      for (int k = 0; k < e[v]; ++k) t *= p;
    }
    acc += t;
  }
  return acc;
}

std::vector<MPoly> MPoly::coeffs_in(int var) const {
  std::vector<MPoly> cs(degree_in(var) + 1);
  for (const auto& [m, c] : t_) {
    int e = m.exp(var);
    std::vector<int> rest = m.exps();
    if (e > 0) rest[var] = 0;
    cs[e].add_term(c, Monomial(rest));
  }
  while (cs.size() > 1 && cs.back().is_zero()) cs.pop_back();
  return cs;
}

MPoly MPoly::from_coeffs_in(int var, const std::vector<MPoly>& cs) {
  MPoly r;
  for (size_t e = 0; e < cs.size(); ++e)
    r = r + cs[e] * MPoly::term(Int(1), Monomial::var(var, static_cast<int>(e)));
  return r;
}

Scalar MPoly::subst(int var, const Scalar& value) const {
  std::vector<MPoly> cs = coeffs_in(var);
  Scalar r(cs.back());
  for (int i = static_cast<int>(cs.size()) - 2; i >= 0; --i) r = r * value + Scalar(cs[i]);
  return r;
}

std::string MPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [m, c] = *it;
    Int a = c >= 0 ? c : Int(-c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool printed = false;
    if (a != 1 || m.is_one()) {
      os << a.get_str();
      printed = true;
    }
    const auto& e = m.exps();
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (printed) os << "*";
      os << Vars::name(static_cast<int>(v));
      if (e[v] > 1) os << "^" << e[v];
      printed = true;
    }
  }
  return os.str();
}

// -------------------------------------------------------------- Scalar

Scalar::Scalar(const Rat& q) {
  Rat r = q;
  r.canonicalize();
  num_ = MPoly(Int(r.get_num()));
  den_ = MPoly(Int(r.get_den()));
}

Scalar::Scalar(const MPoly& num, const MPoly& den) : num_(num), den_(den) { normalize(); }

void Scalar::normalize() {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  if (num_.is_zero()) {
    den_ = MPoly(Int(1));
    return;
  }
  Int cn = num_.content(), cd = den_.content();
  Int g;
  mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (g > 1) {
    num_ = num_.divexact_int(g);
    den_ = den_.divexact_int(g);
  }
  Monomial mg = Monomial::gcd(num_.monomial_content(), den_.monomial_content());
  if (!mg.is_one()) {
    num_ = num_.divexact_mono(mg);
    den_ = den_.divexact_mono(mg);
  }
  if (!den_.is_constant() && !num_.is_constant()) {
    MPoly pg = MPoly::gcd(num_, den_);
    if (!pg.is_one()) {
      num_ = num_.divexact(pg);
      den_ = den_.divexact(pg);
    }
  }
  if (den_.leading_coeff() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return Scalar(num_ + o.num_, den_);
  return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return Scalar(num_ - o.num_, den_);
  return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar r;
  r.num_ = den_;
  r.den_ = num_;
  if (r.den_.leading_coeff() < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return inv().pow(-e);
  Scalar r(Int(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (num_ == o.num_ && den_ == o.den_) return true;
  return (num_ * o.den_) == (o.num_ * den_);
}

int Scalar::cmp(const Scalar& a, const Scalar& b) {
  int c = MPoly::cmp(a.num_, b.num_);
  if (c != 0) return c;
  return MPoly::cmp(a.den_, b.den_);
}

Rat Scalar::eval(const std::vector<Rat>& point) const {
  Rat d = den_.eval(point);
  if (d == 0) throw std::domain_error("denominator vanishes at evaluation point");
  return num_.eval(point) / d;
}

Scalar Scalar::subst(int var, const Scalar& value) const {
  return num_.subst(var, value) / den_.subst(var, value);
}

namespace {
Scalar subst_all_poly(const MPoly& p, const std::vector<std::pair<int, Scalar>>& map) {
  Scalar acc;
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> rest = m.exps();
    Scalar t{MPoly(c)};
    for (const auto& [v, val] : map) {
      int e = m.exp(v);
      if (e > 0) {
        rest[v] = 0;
        t = t * val.pow(e);
      }
    }
    acc = acc + t * Scalar(MPoly::term(Int(1), Monomial(rest)));
  }
  return acc;
}
}  // namespace

Scalar Scalar::subst_all(const std::vector<std::pair<int, Scalar>>& map) const {
  return subst_all_poly(num_, map) / subst_all_poly(den_, map);
}

std::string Scalar::str() const {
  if (den_.is_one()) return num_.str();
  std::string n = num_.str();
  std::string d = den_.str();
  bool wrap_n = num_.n_terms() > 1;
  bool wrap_d = den_.n_terms() > 1;
  return (wrap_n ? "(" + n + ")" : n) + "/" + (wrap_d ? "(" + d + ")" : d);
}

// ----------------------------------------------------- derived symbols

ElementarySyms elementary_syms() {
  ElementarySyms s;
  s.h1 = Scalar::var(sym::h1());
  s.h2 = Scalar::var(sym::h2());
  s.h3 = -s.h1 - s.h2;
  s.sigma2 = s.h1 * s.h2 + s.h1 * s.h3 + s.h2 * s.h3;
  s.sigma3 = s.h1 * s.h2 * s.h3;
  return s;
}

// ------------------------------------------------------------ is_zero

bool is_zero_exact(const Scalar& x) { return x.is_zero(); }

bool is_zero_randomized(const Scalar& x, const RandomizedZeroTest& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (x.num().is_zero()) return true;
  int nvars = std::max(x.num().max_var(), x.den().max_var()) + 1;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long> dist(-1000000, 1000000);
  for (int t = 0; t < cfg.trials; ++t) {
    bool found = false;
    for (int r = 0; r < cfg.max_retries; ++r) {
      std::vector<Rat> point(nvars);
      for (int v = 0; v < nvars; ++v) point[v] = Rat(dist(rng));
      if (x.den().eval(point) == 0) continue;
      if (x.num().eval(point) != 0) return false;
      found = true;
      break;
    }
    if (!found) throw std::runtime_error("no valid evaluation point found off the pole set");
  }
  return true;
}

}  // namespace yang3d
