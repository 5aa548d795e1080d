#pragma once

// Plane partitions (3D Young diagrams) stored as height functions over
// the (x, y) plane, with box addition/removal sets, layer slicing,
// enumeration and canonical growth paths.

#include <string>
#include <vector>

#include "yang3d/scalars.hpp"

namespace yang3d {

struct Box {
  int x = 0, y = 0, z = 0;
  bool operator==(const Box& o) const { return x == o.x && y == o.y && z == o.z; }
  // Canonical growth order: lowest layer first, then along the h1/h2 axes
  // (grows the x-arm before the y-arm).
  bool operator<(const Box& o) const {
    if (z != o.z) return z < o.z;
    if (y != o.y) return y < o.y;
    return x < o.x;
  }
};

// h_box = h1*y + h2*x + h3*z with h3 = -h1 - h2.
Scalar h_box(const Box& b);
// The same weight as the lattice pair (coeff of h1, coeff of h2) = (y-z, x-z).
std::pair<int, int> h_lattice(const Box& b);

class PlanePartition {
 public:
  PlanePartition() = default;  // empty diagram
  // Heights row x lists the stack heights along y; rows and columns must
  // be weakly decreasing.  Throws std::invalid_argument otherwise.
  static PlanePartition from_heights(std::vector<std::vector<int>> heights);
  // Text form "2 1 / 1" (rows of the height matrix separated by '/').
  static PlanePartition parse(const std::string& text);

  int volume() const;
  int height(int x, int y) const;
  int n_rows() const { return static_cast<int>(h_.size()); }
  int row_len(int x) const;
  bool empty() const { return h_.empty(); }
  bool contains(const Box& b) const;

  std::vector<Box> addable() const;
  std::vector<Box> removable() const;
  PlanePartition with_box(const Box& b) const;
  PlanePartition without_box(const Box& b) const;
  std::vector<Box> boxes() const;

  // Layer j (1-indexed) is the 2D diagram {(x,y) : height >= j}; returned
  // as row lengths per x.
  std::vector<std::vector<int>> slice_layers() const;
  int max_height() const;

  // Deterministic growth sequence from the empty diagram, adding the
  // (z, x, y)-lex minimal addable box contained in the target each step.
  std::vector<Box> canonical_growth_path() const;

  std::string str() const;

  bool operator==(const PlanePartition& o) const { return h_ == o.h_; }
  bool operator<(const PlanePartition& o) const;

  // All plane partitions of volume n (heights <= max_layers when bound
  // >= 0), sorted by serialized height matrix.
  static std::vector<PlanePartition> enumerate(int n, int max_layers = -1);

 private:
  std::vector<std::vector<int>> h_;  // ragged, positive entries only
  void canonicalize();
  bool valid() const;
};

}  // namespace yang3d
