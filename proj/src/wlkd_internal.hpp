#pragma once

#include <vector>

#include "wlspec/wlkd.hpp"

namespace wlspec::detail {

/// Ancestor relation of a validated parent map.
class TreeOrder {
 public:
  explicit TreeOrder(const std::vector<int>& parent);
  /// x <= y: x is y or an ancestor of y.
  bool leq(int x, int y) const;
  bool comparable(int x, int y) const { return leq(x, y) || leq(y, x); }
  bool is_leaf(int x) const { return children_[x] == 0; }
  int depth(int x) const { return depth_[x]; }
  int root() const { return root_; }
  const std::vector<int>& parent() const { return parent_; }
  std::vector<int> leaves() const;

 private:
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<int> children_;
  int root_ = -1;
};

/// |{z : anchor < z, z <= x, z <= y}|.
int gca(const TreeOrder& t, int anchor, int x, int y);

}  // namespace wlspec::detail
