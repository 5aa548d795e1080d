#include "yang3d/partitions3d.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace yang3d {

Scalar h_box(const Box& b) {
  auto [c1, c2] = h_lattice(b);
  return Scalar::var(sym::h1()) * Scalar(c1) + Scalar::var(sym::h2()) * Scalar(c2);
}

std::pair<int, int> h_lattice(const Box& b) { return {b.y - b.z, b.x - b.z}; }

void PlanePartition::canonicalize() {
  for (auto& row : h_)
    while (!row.empty() && row.back() == 0) row.pop_back();
  while (!h_.empty() && h_.back().empty()) h_.pop_back();
}

bool PlanePartition::valid() const {
  for (size_t x = 0; x < h_.size(); ++x) {
    for (size_t y = 0; y < h_[x].size(); ++y) {
      int v = h_[x][y];
      if (v <= 0) return false;
      if (y + 1 < h_[x].size() && h_[x][y + 1] > v) return false;
      if (x + 1 < h_.size() && height(static_cast<int>(x) + 1, static_cast<int>(y)) > v)
        return false;
    }
    if (x + 1 < h_.size() && h_[x + 1].size() > h_[x].size()) return false;
  }
  return true;
}

PlanePartition PlanePartition::from_heights(std::vector<std::vector<int>> heights) {
  PlanePartition p;
  p.h_ = std::move(heights);
  p.canonicalize();
  if (!p.valid()) throw std::invalid_argument("not a plane partition");
  return p;
}

PlanePartition PlanePartition::parse(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::string token;
  std::vector<int> row;
  std::istringstream is(text);
  while (is >> token) {
    if (token == "/") {
      rows.push_back(row);
      row.clear();
    } else {
      row.push_back(std::stoi(token));
    }
  }
  rows.push_back(row);
  return from_heights(std::move(rows));
}

int PlanePartition::volume() const {
  int v = 0;
  for (const auto& row : h_)
    for (int x : row) v += x;
  return v;
}

int PlanePartition::height(int x, int y) const {
  if (x < 0 || y < 0) return 0;
  if (x >= static_cast<int>(h_.size())) return 0;
  if (y >= static_cast<int>(h_[x].size())) return 0;
  return h_[x][y];
}

int PlanePartition::row_len(int x) const {
  return x < static_cast<int>(h_.size()) ? static_cast<int>(h_[x].size()) : 0;
}

bool PlanePartition::contains(const Box& b) const { return b.z < height(b.x, b.y); }

std::vector<Box> PlanePartition::addable() const {
  std::vector<Box> out;
  for (int x = 0; x <= n_rows(); ++x) {
    int cols = std::max(row_len(x), 1);
    for (int y = 0; y <= cols; ++y) {
      int z = height(x, y);
      bool ok = (x == 0 || height(x - 1, y) >= z + 1) && (y == 0 || height(x, y - 1) >= z + 1);
      if (ok) out.push_back({x, y, z});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Box> PlanePartition::removable() const {
  std::vector<Box> out;
  for (int x = 0; x < n_rows(); ++x) {
    for (int y = 0; y < row_len(x); ++y) {
      int z = h_[x][y] - 1;
      if (height(x + 1, y) <= z && height(x, y + 1) <= z) out.push_back({x, y, z});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PlanePartition PlanePartition::with_box(const Box& b) const {
  if (b.z != height(b.x, b.y)) throw std::invalid_argument("box not addable");
  PlanePartition p = *this;
  if (b.x >= static_cast<int>(p.h_.size())) p.h_.resize(b.x + 1);
  if (b.y >= static_cast<int>(p.h_[b.x].size())) p.h_[b.x].resize(b.y + 1, 0);
  p.h_[b.x][b.y] += 1;
  if (!p.valid()) throw std::invalid_argument("box not addable");
  return p;
}

PlanePartition PlanePartition::without_box(const Box& b) const {
  if (b.z != height(b.x, b.y) - 1) throw std::invalid_argument("box not removable");
  PlanePartition p = *this;
  p.h_[b.x][b.y] -= 1;
  p.canonicalize();
  if (!p.valid()) throw std::invalid_argument("box not removable");
  return p;
}

std::vector<Box> PlanePartition::boxes() const {
  std::vector<Box> out;
  for (int x = 0; x < n_rows(); ++x)
    for (int y = 0; y < row_len(x); ++y)
      for (int z = 0; z < h_[x][y]; ++z) out.push_back({x, y, z});
  return out;
}

std::vector<std::vector<int>> PlanePartition::slice_layers() const {
  std::vector<std::vector<int>> layers;
  for (int j = 1; j <= max_height(); ++j) {
    std::vector<int> rows;
    for (int x = 0; x < n_rows(); ++x) {
      int len = 0;
      while (len < row_len(x) && h_[x][len] >= j) ++len;
      if (len == 0) break;
      rows.push_back(len);
    }
    layers.push_back(rows);
  }
  return layers;
}

int PlanePartition::max_height() const {
  int m = 0;
  for (const auto& row : h_)
    for (int v : row) m = std::max(m, v);
  return m;
}

std::vector<Box> PlanePartition::canonical_growth_path() const {
  std::vector<Box> path;
  PlanePartition cur;
  while (cur.volume() < volume()) {
    bool advanced = false;
    for (const Box& b : cur.addable()) {  // already (z,x,y)-lex sorted
      if (contains(b)) {
        path.push_back(b);
        cur = cur.with_box(b);
        advanced = true;
        break;
      }
    }
    if (!advanced) throw std::logic_error("growth path stuck");  // unreachable for order ideals
  }
  return path;
}

std::string PlanePartition::str() const {
  if (h_.empty()) return "0";
  std::ostringstream os;
  for (size_t x = 0; x < h_.size(); ++x) {
    if (x) os << " / ";
    for (size_t y = 0; y < h_[x].size(); ++y) {
      if (y) os << " ";
      os << h_[x][y];
    }
  }
  return os.str();
}

bool PlanePartition::operator<(const PlanePartition& o) const { return str() < o.str(); }

std::vector<PlanePartition> PlanePartition::enumerate(int n, int max_layers) {
  if (n < 0) throw std::invalid_argument("negative volume");
  std::vector<PlanePartition> out;
  std::vector<std::vector<int>> rows;
  // DFS over weakly decreasing rows; entry (x,y) bounded by the entry
  // above and to the left, and by max_layers.
  std::function<void(int, int)> fill_row = [&](int x, int remaining) {
    if (remaining == 0) {
      out.push_back(PlanePartition::from_heights(rows));
      return;
    }
    int max_len = x == 0 ? remaining : static_cast<int>(rows[x - 1].size());
    if (max_len == 0) return;
    std::vector<int> row;
    std::function<void(int, int)> fill_cell = [&](int y, int rem) {
      if (!row.empty()) {
        rows.push_back(row);
        fill_row(x + 1, rem);
        rows.pop_back();
      }
      if (y >= max_len || rem == 0) return;
      int cap = std::min(x == 0 ? rem : rows[x - 1][y], y == 0 ? rem : row[y - 1]);
      if (max_layers >= 0) cap = std::min(cap, max_layers);
      for (int v = 1; v <= std::min(cap, rem); ++v) {
        row.push_back(v);
        fill_cell(y + 1, rem - v);
        row.pop_back();
      }
    };
    fill_cell(0, remaining);
  };
  if (n == 0) {
    out.push_back(PlanePartition());
  } else {
    fill_row(0, n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace yang3d
