#include "yang3d/ppoly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace yang3d {

PMonomial PMonomial::var(PVar v, int exp) {
  PMonomial m;
  if (exp > 0) m.f_.emplace_back(v, exp);
  return m;
}

int PMonomial::degree() const {
  int d = 0;
  for (const auto& [v, e] : f_) d += v.second * e;
  return d;
}

int PMonomial::exp(PVar v) const {
  for (const auto& [w, e] : f_)
    if (w == v) return e;
  return 0;
}

int PMonomial::max_layer() const {
  int m = 0;
  for (const auto& [v, e] : f_) m = std::max(m, v.first);
  return m;
}

PMonomial PMonomial::times(PVar v, int exp) const {
  PMonomial r = *this;
  auto it = std::lower_bound(r.f_.begin(), r.f_.end(), std::make_pair(v, 0),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it != r.f_.end() && it->first == v)
    it->second += exp;
  else
    r.f_.insert(it, {v, exp});
  return r;
}

PMonomial PMonomial::lowered(PVar v) const {
  PMonomial r = *this;
  for (auto it = r.f_.begin(); it != r.f_.end(); ++it) {
    if (it->first == v) {
      if (--it->second == 0) r.f_.erase(it);
      return r;
    }
  }
  throw std::invalid_argument("variable absent");
}

std::string PMonomial::str() const {
  if (f_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, e] : f_) {
    if (!first) os << "*";
    first = false;
    os << "p[" << v.first << "," << v.second << "]";
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

PPolynomial::PPolynomial(const Scalar& c) {
  if (!c.is_zero()) t_.emplace(PMonomial(), c);
}

PPolynomial PPolynomial::var(PVar v) {
  PPolynomial p;
  p.t_.emplace(PMonomial::var(v), Scalar(1));
  return p;
}

int PPolynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : t_) d = std::max(d, m.degree());
  return d;
}

int PPolynomial::max_layer() const {
  int l = 0;
  for (const auto& [m, c] : t_) l = std::max(l, m.max_layer());
  return l;
}

void PPolynomial::add_term(const PMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

PPolynomial PPolynomial::operator+(const PPolynomial& o) const {
  PPolynomial r = *this;
  for (const auto& [m, c] : o.t_) r.add_term(m, c);
  return r;
}

PPolynomial PPolynomial::operator-(const PPolynomial& o) const {
  PPolynomial r = *this;
  for (const auto& [m, c] : o.t_) r.add_term(m, -c);
  return r;
}

PPolynomial PPolynomial::operator*(const PPolynomial& o) const {
  PPolynomial r;
  for (const auto& [m1, c1] : t_) {
    for (const auto& [m2, c2] : o.t_) {
      PMonomial m = m1;
      for (const auto& [v, e] : m2.factors()) m = m.times(v, e);
      r.add_term(m, c1 * c2);
    }
  }
  return r;
}

PPolynomial PPolynomial::scaled(const Scalar& c) const {
  if (c.is_zero()) return PPolynomial();
  PPolynomial r;
  for (const auto& [m, co] : t_) r.t_.emplace(m, co * c);
  return r;
}

PPolynomial PPolynomial::mul_var(PVar v) const {
  PPolynomial r;
  for (const auto& [m, c] : t_) r.t_.emplace(m.times(v), c);
  return r;
}

PPolynomial PPolynomial::derivative(PVar v) const {
  PPolynomial r;
  for (const auto& [m, c] : t_) {
    int e = m.exp(v);
    if (e > 0) r.add_term(m.lowered(v), c * Scalar(e));
  }
  return r;
}

PPolynomial PPolynomial::component(int d) const {
  PPolynomial r;
  for (const auto& [m, c] : t_)
    if (m.degree() == d) r.t_.emplace(m, c);
  return r;
}

PPolynomial PPolynomial::truncated(int d) const {
  PPolynomial r;
  for (const auto& [m, c] : t_)
    if (m.degree() <= d) r.t_.emplace(m, c);
  return r;
}

const Scalar& PPolynomial::coeff(const PMonomial& m) const {
  static const Scalar zero;
  auto it = t_.find(m);
  return it == t_.end() ? zero : it->second;
}

std::string PPolynomial::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (!m.is_one()) os << "*" << m.str();
  }
  return os.str();
}

PPolynomial PPolynomial::subst_coeffs(int var, const Scalar& value) const {
  PPolynomial r;
  for (const auto& [m, c] : t_) r.add_term(m, c.subst(var, value));
  return r;
}

std::vector<PMonomial> pmonomials_of_degree(int d, int N) {
  std::vector<PMonomial> out;
  PMonomial cur;
  // Append variables in decreasing (mode, layer) order so each multiset
  // is generated once.
  std::function<void(int, int, int)> rec = [&](int remaining, int max_mode, int max_layer_at) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(remaining, max_mode); k >= 1; --k) {
      int lmax = k == max_mode ? max_layer_at : N;
      for (int j = lmax; j >= 1; --j) {
        PMonomial saved = cur;
        cur = cur.times({j, k});
        rec(remaining - k, k, j);
        cur = saved;
      }
    }
  };
  rec(d, d, N);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PMonomial> pmonomials_up_to(int d, int N) {
  std::vector<PMonomial> out;
  for (int k = 0; k <= d; ++k) {
    auto part = pmonomials_of_degree(k, N);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace yang3d
