#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "yang3d/partitions3d.hpp"

using namespace yang3d;

namespace {

// Independent oracle: scan every lattice site of a bounding region and
// test validity of adding/removing by rebuilding the height matrix.
std::vector<Box> brute_addable(const PlanePartition& p) {
  std::vector<Box> out;
  int R = p.volume() + 2;
  for (int x = 0; x < R; ++x)
    for (int y = 0; y < R; ++y)
      for (int z = 0; z < R; ++z) {
        Box b{x, y, z};
        if (p.contains(b)) continue;
        if (z != p.height(x, y)) continue;
        try {
          p.with_box(b);
          out.push_back(b);
        } catch (const std::invalid_argument&) {
        }
      }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Box> brute_removable(const PlanePartition& p) {
  std::vector<Box> out;
  for (const Box& b : p.boxes()) {
    if (b.z != p.height(b.x, b.y) - 1) continue;
    try {
      p.without_box(b);
      out.push_back(b);
    } catch (const std::invalid_argument&) {
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// MacMahon / Euler products as independent counting oracles.
std::vector<long> product_series_counts(int nmax, bool macmahon) {
  std::vector<long> c(nmax + 1, 0);
  c[0] = 1;
  for (int n = 1; n <= nmax; ++n) {
    int mult = macmahon ? n : 1;
    for (int rep = 0; rep < mult; ++rep) {
      // multiply by 1/(1-q^n)
      for (int k = n; k <= nmax; ++k) c[k] += c[k - n];
    }
  }
  return c;
}

}  // namespace

TEST_CASE("h_box weights") {
  auto s = elementary_syms();
  CHECK(h_box({0, 0, 0}) == Scalar(0));
  CHECK(h_box({1, 0, 0}) == s.h2);
  CHECK(h_box({0, 1, 0}) == s.h1);
  CHECK(h_box({0, 0, 1}) == s.h3);
  CHECK(h_lattice({2, 1, 1}) == std::pair<int, int>{0, 1});
}

TEST_CASE("addable boxes") {
  PlanePartition empty;
  CHECK(empty.addable() == std::vector<Box>{{0, 0, 0}});

  PlanePartition one = empty.with_box({0, 0, 0});
  auto add1 = one.addable();
  CHECK(add1.size() == 3);
  CHECK(std::count(add1.begin(), add1.end(), Box{1, 0, 0}) == 1);
  CHECK(std::count(add1.begin(), add1.end(), Box{0, 1, 0}) == 1);
  CHECK(std::count(add1.begin(), add1.end(), Box{0, 0, 1}) == 1);

  PlanePartition col_x = PlanePartition::parse("1 / 1");
  CHECK(col_x.addable() == brute_addable(col_x));
}

TEST_CASE("removable boxes") {
  PlanePartition one = PlanePartition::parse("1");
  CHECK(one.removable() == std::vector<Box>{{0, 0, 0}});

  PlanePartition col_z = PlanePartition::parse("2");
  CHECK(col_z.removable() == std::vector<Box>{{0, 0, 1}});

  PlanePartition ell = PlanePartition::parse("1 1 / 1");
  auto rem = ell.removable();
  CHECK(rem == brute_removable(ell));
  CHECK(rem.size() == 2);
  CHECK(std::count(rem.begin(), rem.end(), Box{1, 0, 0}) == 1);
  CHECK(std::count(rem.begin(), rem.end(), Box{0, 1, 0}) == 1);
}

TEST_CASE("enumerate counts match the MacMahon series") {
  auto mac = product_series_counts(6, true);
  for (int n = 0; n <= 6; ++n) CHECK(PlanePartition::enumerate(n).size() == size_t(mac[n]));
  CHECK(PlanePartition::enumerate(2).size() == 3);
  CHECK(PlanePartition::enumerate(3).size() == 6);
  CHECK(PlanePartition::enumerate(4).size() == 13);
  CHECK(PlanePartition::enumerate(5).size() == 24);
}

TEST_CASE("single-layer enumeration matches 2D partition numbers") {
  auto euler = product_series_counts(6, false);
  std::vector<long> expect{1, 1, 2, 3, 5, 7, 11};
  for (int n = 0; n <= 6; ++n) {
    CHECK(euler[n] == expect[n]);
    CHECK(PlanePartition::enumerate(n, 1).size() == size_t(expect[n]));
  }
}

TEST_CASE("enumeration is deterministic, unique, and valid") {
  for (int n = 0; n <= 6; ++n) {
    auto all = PlanePartition::enumerate(n);
    std::set<std::string> seen;
    for (const auto& p : all) {
      CHECK(p.volume() == n);
      CHECK(seen.insert(p.str()).second);
    }
    CHECK(std::is_sorted(all.begin(), all.end()));
  }
}

TEST_CASE("addable/removable agree with brute force on all small diagrams") {
  for (int n = 0; n <= 6; ++n) {
    for (const auto& p : PlanePartition::enumerate(n)) {
      CHECK(p.addable() == brute_addable(p));
      CHECK(p.removable() == brute_removable(p));
      for (const Box& b : p.addable()) CHECK(p.with_box(b).volume() == n + 1);
      for (const Box& b : p.removable()) CHECK(p.without_box(b).volume() == n - 1);
    }
  }
}

TEST_CASE("slice_layers") {
  CHECK(PlanePartition::parse("1").slice_layers() ==
        std::vector<std::vector<int>>{{1}});
  CHECK(PlanePartition::parse("2").slice_layers() ==
        std::vector<std::vector<int>>{{1}, {1}});
  CHECK(PlanePartition::parse("2 1 / 1").slice_layers() ==
        std::vector<std::vector<int>>{{2, 1}, {1}});
}

TEST_CASE("layers weakly decrease by containment") {
  for (int n = 0; n <= 6; ++n) {
    for (const auto& p : PlanePartition::enumerate(n)) {
      auto layers = p.slice_layers();
      for (size_t j = 0; j + 1 < layers.size(); ++j) {
        CHECK(layers[j + 1].size() <= layers[j].size());
        for (size_t x = 0; x < layers[j + 1].size(); ++x)
          CHECK(layers[j + 1][x] <= layers[j][x]);
      }
    }
  }
}

TEST_CASE("canonical growth path") {
  CHECK(PlanePartition::parse("1").canonical_growth_path() == std::vector<Box>{{0, 0, 0}});
  CHECK(PlanePartition::parse("1 / 1").canonical_growth_path() ==
        std::vector<Box>{{0, 0, 0}, {1, 0, 0}});
  CHECK(PlanePartition::parse("1 1 / 1").canonical_growth_path() ==
        std::vector<Box>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
}

TEST_CASE("growth paths rebuild their diagram") {
  for (int n = 0; n <= 6; ++n) {
    for (const auto& p : PlanePartition::enumerate(n)) {
      PlanePartition cur;
      for (const Box& b : p.canonical_growth_path()) cur = cur.with_box(b);
      CHECK(cur == p);
    }
  }
}

TEST_CASE("text round trip") {
  for (const auto& p : PlanePartition::enumerate(5))
    CHECK(PlanePartition::parse(p.str()) == p);
  CHECK_THROWS_AS(PlanePartition::parse("1 2"), std::invalid_argument);
  CHECK_THROWS_AS(PlanePartition::parse("1 / 2"), std::invalid_argument);
}
