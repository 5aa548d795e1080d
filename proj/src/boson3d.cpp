#include "yang3d/boson3d.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace yang3d {

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

using LF = LinForm;

OperatorExpr pair_term(const LF& j, const LF& k, int a_id, int b_id, int n) {
  return OperatorExpr::compose(OperatorExpr::a(j, LF::var(a_id)),
                               OperatorExpr::a(k, LF::var(b_id)))
      .summed_over(a_id, VarKind::mode, {})
      .summed_over(b_id, VarKind::mode, {{LF::var(a_id) + LF::var(b_id) - n, true}});
}

OperatorExpr triple_term(const LF& j, const LF& k, const LF& l, int m_id, int p_id, int q_id,
                         int n) {
  return OperatorExpr::compose(
             OperatorExpr::compose(OperatorExpr::a(j, LF::var(m_id)),
                                   OperatorExpr::a(k, LF::var(p_id))),
             OperatorExpr::a(l, LF::var(q_id)))
      .summed_over(m_id, VarKind::mode, {})
      .summed_over(p_id, VarKind::mode, {})
      .summed_over(q_id, VarKind::mode,
                   {{LF::var(m_id) + LF::var(p_id) + LF::var(q_id) - n, true}});
}

}  // namespace

OperatorExpr b_op(int n, int k, int N) {
  if (k > 3) throw std::invalid_argument("b_{n,k} with k > 3 is not constructed");
  if (k < 1) throw std::invalid_argument("bad boson kind");
  if (k > N) return OperatorExpr::zero();
  const auto& s = syms();

  if (k == 1) {
    int j = fresh_sum_var();
    return OperatorExpr::a(LF::var(j), LF(n)).summed_over(j, VarKind::layer, {});
  }

  if (k == 2) {
    OperatorExpr acc;
    {  // -h1 h2 (1 - 1/N) sum_j sum_{a+b=n} :a_{j,a} a_{j,b}:
      int j = fresh_sum_var(), a = fresh_sum_var(), b = fresh_sum_var();
      acc = acc + pair_term(LF::var(j), LF::var(j), a, b, n)
                      .summed_over(j, VarKind::layer, {})
                      .scaled(-h1h2() * (Scalar(1) - Scalar(Rat(1, N))));
    }
    {  // (2 h1 h2 / N) sum_{j<k} sum_{a+b=n} :a_{j,a} a_{k,b}:
      int j = fresh_sum_var(), kk = fresh_sum_var(), a = fresh_sum_var(), b = fresh_sum_var();
      acc = acc + pair_term(LF::var(j), LF::var(kk), a, b, n)
                      .summed_over(j, VarKind::layer, {})
                      .summed_over(kk, VarKind::layer, {{LF::var(kk) - LF::var(j) - 1, false}})
                      .scaled(h1h2() * Scalar(Rat(2, N)));
    }
    {  // -h3 sum_j (N+1-2j)(-n-1) a_{j,n}   [sign fixed by the vacuum
       //  polynomial of b_{-2,2}; the display and its own P_{2,2} differ]
      int j = fresh_sum_var();
      acc = acc + OperatorExpr::a(LF::var(j), LF(n))
                      .scaled_poly(CoeffPoly::linear(LF::var(j, -2) + (N + 1)))
                      .summed_over(j, VarKind::layer, {})
                      .scaled(-s.h3 * Scalar(-n - 1));
    }
    return acc;
  }

  // k == 3, the full display; overall prefactor 6 h1^2 h2^2.
  OperatorExpr acc;
  Scalar a0 = alpha0();
  {  // - sum_{j<k<l} :a_j a_k a_l:
    int j = fresh_sum_var(), kk = fresh_sum_var(), l = fresh_sum_var();
    int m = fresh_sum_var(), p = fresh_sum_var(), q = fresh_sum_var();
    acc = acc + triple_term(LF::var(j), LF::var(kk), LF::var(l), m, p, q, n)
                    .summed_over(j, VarKind::layer, {})
                    .summed_over(kk, VarKind::layer, {{LF::var(kk) - LF::var(j) - 1, false}})
                    .summed_over(l, VarKind::layer, {{LF::var(l) - LF::var(kk) - 1, false}})
                    .scaled(Scalar(-1));
  }
  {  // - a0 sum_{j<k} (j-1)(-m-1) :a_{j,m} a_{k,q}:
    int j = fresh_sum_var(), kk = fresh_sum_var(), m = fresh_sum_var(), q = fresh_sum_var();
    acc = acc + pair_term(LF::var(j), LF::var(kk), m, q, n)
                    .scaled_poly(CoeffPoly::linear(LF::var(j) - 1) *
                                 CoeffPoly::linear(-LF::var(m) - 1))
                    .summed_over(j, VarKind::layer, {})
                    .summed_over(kk, VarKind::layer, {{LF::var(kk) - LF::var(j) - 1, false}})
                    .scaled(-a0);
  }
  {  // - a0 sum_{j<k} (k-2)(-q-1) :a_{j,m} a_{k,q}:
    int j = fresh_sum_var(), kk = fresh_sum_var(), m = fresh_sum_var(), q = fresh_sum_var();
    acc = acc + pair_term(LF::var(j), LF::var(kk), m, q, n)
                    .scaled_poly(CoeffPoly::linear(LF::var(kk) - 2) *
                                 CoeffPoly::linear(-LF::var(q) - 1))
                    .summed_over(j, VarKind::layer, {})
                    .summed_over(kk, VarKind::layer, {{LF::var(kk) - LF::var(j) - 1, false}})
                    .scaled(-a0);
  }
  {  // - (a0^2/2) sum_j (j-1)(j-2)(-n-1)(-n-2) a_{j,n}
    int j = fresh_sum_var();
    acc = acc + OperatorExpr::a(LF::var(j), LF(n))
                    .scaled_poly(CoeffPoly::linear(LF::var(j) - 1) *
                                 CoeffPoly::linear(LF::var(j) - 2))
                    .summed_over(j, VarKind::layer, {})
                    .scaled(-a0 * a0 / Scalar(2) * Scalar((-n - 1) * (-n - 2)));
  }
  {  // ((N-2)/N) sum_j sum_{k<l} :a_j a_k a_l:
    int j = fresh_sum_var(), kk = fresh_sum_var(), l = fresh_sum_var();
    int m = fresh_sum_var(), p = fresh_sum_var(), q = fresh_sum_var();
    acc = acc + triple_term(LF::var(j), LF::var(kk), LF::var(l), m, p, q, n)
                    .summed_over(j, VarKind::layer, {})
                    .summed_over(kk, VarKind::layer, {})
                    .summed_over(l, VarKind::layer, {{LF::var(l) - LF::var(kk) - 1, false}})
                    .scaled(Scalar(Rat(N - 2, N)));
  }
  {  // ((N-2) a0 / N) sum_{j,k} (k-1)(-q-1) :a_{j,m} a_{k,q}:
    int j = fresh_sum_var(), kk = fresh_sum_var(), m = fresh_sum_var(), q = fresh_sum_var();
    acc = acc + pair_term(LF::var(j), LF::var(kk), m, q, n)
                    .scaled_poly(CoeffPoly::linear(LF::var(kk) - 1) *
                                 CoeffPoly::linear(-LF::var(q) - 1))
                    .summed_over(j, VarKind::layer, {})
                    .summed_over(kk, VarKind::layer, {})
                    .scaled(a0 * Scalar(Rat(N - 2, N)));
  }
  {  // -((N-1)(N-2)/(3N^2)) sum_{j,k,l} :a_j a_k a_l:
    int j = fresh_sum_var(), kk = fresh_sum_var(), l = fresh_sum_var();
    int m = fresh_sum_var(), p = fresh_sum_var(), q = fresh_sum_var();
    acc = acc + triple_term(LF::var(j), LF::var(kk), LF::var(l), m, p, q, n)
                    .summed_over(j, VarKind::layer, {})
                    .summed_over(kk, VarKind::layer, {})
                    .summed_over(l, VarKind::layer, {})
                    .scaled(Scalar(Rat(-static_cast<long>(N - 1) * (N - 2), 3L * N * N)));
  }
  {  // ((N-2) a0^2 / 2) sum_j (j-1)(-n-1)(-n-2) a_{j,n}
    int j = fresh_sum_var();
    acc = acc + OperatorExpr::a(LF::var(j), LF(n))
                    .scaled_poly(CoeffPoly::linear(LF::var(j) - 1))
                    .summed_over(j, VarKind::layer, {})
                    .scaled(a0 * a0 * Scalar(Rat(N - 2, 2)) * Scalar((-n - 1) * (-n - 2)));
  }
  {  // ((N-2) a0 / 2) sum_{j<k} (-m-q-2) :a_{j,m} a_{k,q}:
    int j = fresh_sum_var(), kk = fresh_sum_var(), m = fresh_sum_var(), q = fresh_sum_var();
    acc = acc + pair_term(LF::var(j), LF::var(kk), m, q, n)
                    .scaled_poly(CoeffPoly::linear(-LF::var(m) - LF::var(q) - 2))
                    .summed_over(j, VarKind::layer, {})
                    .summed_over(kk, VarKind::layer, {{LF::var(kk) - LF::var(j) - 1, false}})
                    .scaled(a0 * Scalar(Rat(N - 2, 2)));
  }
  {  // -((N-1)(N-2) a0^2 / 12) sum_j (-n-1)(-n-2) a_{j,n}
    int j = fresh_sum_var();
    acc = acc + OperatorExpr::a(LF::var(j), LF(n))
                    .summed_over(j, VarKind::layer, {})
                    .scaled(-a0 * a0 * Scalar(Rat(static_cast<long>(N - 1) * (N - 2), 12)) *
                            Scalar((-n - 1) * (-n - 2)));
  }
  {  // -((N-1)(N-2) a0 / (2N)) sum_{j,k} (-m-1) :a_{j,m} a_{k,q}:
    int j = fresh_sum_var(), kk = fresh_sum_var(), m = fresh_sum_var(), q = fresh_sum_var();
    acc = acc + pair_term(LF::var(j), LF::var(kk), m, q, n)
                    .scaled_poly(CoeffPoly::linear(-LF::var(m) - 1))
                    .summed_over(j, VarKind::layer, {})
                    .summed_over(kk, VarKind::layer, {})
                    .scaled(-a0 * Scalar(Rat(static_cast<long>(N - 1) * (N - 2), 2L * N)));
  }
  return acc.scaled(Scalar(6) * h1h2() * h1h2());
}

// --------------------------------------------------------------- words

int BosonWord::degree() const {
  int d = 0;
  for (const auto& [n, j] : factors) d += n;
  return d;
}

std::string BosonWord::str() const {
  if (factors.empty()) return "vac";
  std::ostringstream os;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) os << " ";
    os << "b[-" << factors[i].first << "," << factors[i].second << "]";
  }
  return os.str();
}

std::vector<BosonWord> fock_basis(int d, int N) {
  std::vector<BosonWord> out;
  BosonWord cur;
  int jcap = std::min(N, 3);
  std::function<void(int, int, int)> rec = [&](int remaining, int min_n, int min_j_for_min_n) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int n = min_n; n <= remaining; ++n) {
      int j0 = n == min_n ? min_j_for_min_n : 1;
      for (int j = j0; j <= std::min(n, jcap); ++j) {
        cur.factors.emplace_back(n, j);
        rec(remaining - n, n, j);
        cur.factors.pop_back();
      }
    }
  };
  rec(d, 1, 1);
  std::sort(out.begin(), out.end());
  return out;
}

PPolynomial realize_sequence(const std::vector<std::pair<int, int>>& factors, int N) {
  PPolynomial p = PPolynomial::one();
  for (auto it = factors.rbegin(); it != factors.rend() && !p.is_zero(); ++it)
    p = b_op(-it->first, it->second, N).apply(p, N);
  return p;
}

PPolynomial realize(const BosonWord& w, int N) { return realize_sequence(w.factors, N); }

// --------------------------------------------------------------- spans

PPolynomial PSpan::reduce(PPolynomial v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& c = v.coeff(pivots_[i]);
    if (!c.is_zero()) v = v - rows_[i].scaled(c);
  }
  return v;
}

bool PSpan::add(PPolynomial v) {
  v = reduce(std::move(v));
  if (v.is_zero()) return false;
  PMonomial pivot = v.terms().rbegin()->first;
  PPolynomial unit = v.scaled(v.terms().rbegin()->second.inv());
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& c = rows_[i].coeff(pivot);
    if (!c.is_zero()) rows_[i] = rows_[i] - unit.scaled(c);
  }
  rows_.push_back(std::move(unit));
  pivots_.push_back(pivot);
  return true;
}

HSpec HSpec::seeded(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(2, 97), den(1, 13);
  HSpec s;
  do {
    s.h1 = Rat(num(rng), den(rng));
    s.h2 = Rat(-num(rng), den(rng));
    s.h1.canonicalize();
    s.h2.canonicalize();
  } while (s.h1 + s.h2 == 0);  // h3 must stay nonzero
  return s;
}

namespace {

constexpr std::uint64_t kDefaultRankSeed = 0x79616e67;

OperatorExpr at_spec(OperatorExpr op, const HSpec& at) {
  return op.substituted(sym::h1(), Scalar(at.h1)).substituted(sym::h2(), Scalar(at.h2));
}

}  // namespace

int graded_dimension(int d, int N, const HSpec& at) {
  if (d == 0) return 1;
  int jcap = std::min(N, 3);
  // Specialized operators indexed by (n, k, raising?).
  struct OpEntry {
    int n;
    bool raising;
    OperatorExpr op;
  };
  std::vector<OpEntry> ops;
  for (int n = 1; n <= d; ++n) {
    for (int k = 1; k <= jcap; ++k) {
      ops.push_back({n, true, at_spec(b_op(-n, k, N), at)});
      ops.push_back({n, false, at_spec(b_op(n, k, N), at)});
    }
  }
  std::vector<PSpan> spans(d + 1);
  std::vector<std::vector<PPolynomial>> vecs(d + 1);
  spans[0].add(PPolynomial::one());
  vecs[0].push_back(PPolynomial::one());
  // cursor[op][lev]: vectors of vecs[lev] already fed through ops[op].
  std::vector<std::vector<size_t>> cursor(ops.size(), std::vector<size_t>(d + 1, 0));
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t oi = 0; oi < ops.size(); ++oi) {
      const auto& e = ops[oi];
      for (int src = 0; src <= d; ++src) {
        int dst = e.raising ? src + e.n : src - e.n;
        if (dst < 0 || dst > d) continue;
        while (cursor[oi][src] < vecs[src].size()) {
          PPolynomial w = e.op.apply(vecs[src][cursor[oi][src]++], N);
          if (!w.is_zero() && spans[dst].add(w)) {
            vecs[dst].push_back(w);
            changed = true;
          }
        }
      }
    }
  }
  return spans[d].rank();
}

int graded_dimension(int d, int N) {
  return graded_dimension(d, N, HSpec::seeded(kDefaultRankSeed));
}

int fock_basis_rank(int d, int N, const HSpec& at) {
  PSpan span;
  for (const auto& w : fock_basis(d, N)) {
    PPolynomial p = PPolynomial::one();
    for (auto it = w.factors.rbegin(); it != w.factors.rend() && !p.is_zero(); ++it)
      p = at_spec(b_op(-it->first, it->second, N), at).apply(p, N);
    span.add(p);
  }
  return span.rank();
}

int fock_basis_rank(int d, int N) {
  return fock_basis_rank(d, N, HSpec::seeded(kDefaultRankSeed));
}

int fock_basis_rank_symbolic(int d, int N) {
  PSpan span;
  for (const auto& w : fock_basis(d, N)) span.add(realize(w, N));
  return span.rank();
}

}  // namespace yang3d
