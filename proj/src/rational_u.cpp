#include "yang3d/rational_u.hpp"

#include <algorithm>

namespace yang3d {

// ------------------------------------------------------------- USeries

USeries USeries::constant(const Scalar& c, int order) {
  std::vector<Scalar> v(order + 1);
  v[0] = c;
  return USeries(std::move(v));
}

const Scalar& USeries::coeff(int k) const {
  if (k < 0 || k > order()) throw std::out_of_range("series coefficient out of range");
  return c_[k];
}

USeries USeries::operator+(const USeries& o) const {
  int K = std::min(order(), o.order());
  std::vector<Scalar> v(K + 1);
  for (int k = 0; k <= K; ++k) v[k] = c_[k] + o.c_[k];
  return USeries(std::move(v));
}

USeries USeries::operator-(const USeries& o) const {
  int K = std::min(order(), o.order());
  std::vector<Scalar> v(K + 1);
  for (int k = 0; k <= K; ++k) v[k] = c_[k] - o.c_[k];
  return USeries(std::move(v));
}

USeries USeries::operator*(const USeries& o) const {
  int K = std::min(order(), o.order());
  std::vector<Scalar> v(K + 1);
  for (int i = 0; i <= K; ++i)
    for (int j = 0; i + j <= K; ++j) v[i + j] += c_[i] * o.c_[j];
  return USeries(std::move(v));
}

USeries USeries::scaled(const Scalar& s) const {
  std::vector<Scalar> v(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) v[k] = c_[k] * s;
  return USeries(std::move(v));
}

USeries USeries::exp() const {
  if (!c_.empty() && !c_[0].is_zero())
    throw std::domain_error("exp needs zero constant term");
  int K = order();
  USeries acc = USeries::constant(Scalar(1), K);
  USeries pow = USeries::constant(Scalar(1), K);
  Int fact(1);
  for (int k = 1; k <= K; ++k) {
    pow = pow * *this;
    fact *= k;
    acc = acc + pow.scaled(Scalar(Rat(Int(1), fact)));
  }
  return acc;
}

// ---------------------------------------------------- FactoredRationalU

FactoredRationalU::FactoredRationalU(Scalar prefactor, std::vector<Scalar> num_roots,
                                     std::vector<Scalar> den_roots)
    : pref_(std::move(prefactor)), num_(std::move(num_roots)), den_(std::move(den_roots)) {
  // Cancel pairwise equal roots.
  for (size_t i = 0; i < num_.size();) {
    bool cancelled = false;
    for (size_t j = 0; j < den_.size(); ++j) {
      if (num_[i] == den_[j]) {
        den_.erase(den_.begin() + j);
        num_.erase(num_.begin() + i);
        cancelled = true;
        break;
      }
    }
    if (!cancelled) ++i;
  }
}

FactoredRationalU FactoredRationalU::operator*(const FactoredRationalU& o) const {
  std::vector<Scalar> n = num_, d = den_;
  n.insert(n.end(), o.num_.begin(), o.num_.end());
  d.insert(d.end(), o.den_.begin(), o.den_.end());
  return FactoredRationalU(pref_ * o.pref_, std::move(n), std::move(d));
}

Scalar FactoredRationalU::residue_at(const Scalar& r) const {
  int mult = 0;
  for (const auto& q : den_)
    if (q == r) ++mult;
  if (mult != 1)
    throw std::domain_error("pole order != 1 (degenerate diagram or parameter configuration)");
  Scalar acc = pref_;
  for (const auto& s : num_) acc *= (r - s);
  bool skipped = false;
  for (const auto& q : den_) {
    if (!skipped && q == r) {
      skipped = true;
      continue;
    }
    acc /= (r - q);
  }
  return acc;
}

USeries FactoredRationalU::series_at_infinity(int K) const {
  if (num_.size() != den_.size())
    throw std::domain_error("unbounded at infinity: root counts differ");
  // log(f/pref) = sum_k (power_sums(den) - power_sums(num)) / k * u^-k
  std::vector<Scalar> logc(K + 1);
  std::vector<Scalar> npow(num_.size(), Scalar(1)), dpow(den_.size(), Scalar(1));
  for (int k = 1; k <= K; ++k) {
    Scalar pk;
    for (size_t i = 0; i < den_.size(); ++i) {
      dpow[i] *= den_[i];
      pk += dpow[i];
    }
    for (size_t i = 0; i < num_.size(); ++i) {
      npow[i] *= num_[i];
      pk -= npow[i];
    }
    logc[k] = pk * Scalar(Rat(1, k));
  }
  return USeries(std::move(logc)).exp().scaled(pref_);
}

Scalar residue_at(const FactoredRationalU& f, const Scalar& r) { return f.residue_at(r); }
USeries series_at_infinity(const FactoredRationalU& f, int K) { return f.series_at_infinity(K); }

}  // namespace yang3d
