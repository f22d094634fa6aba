#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "sqfn/common.hpp"

namespace sqfn {

/// Static k-d tree over a Euclidean point cloud. Supports nearest-neighbor
/// distances, weighted mass of open balls, and an exact farthest-pair search
/// with bounding-box pruning.
class KdTree {
 public:
  KdTree() = default;

  KdTree(const std::vector<double>& coords, int dim, const std::vector<double>& weights)
      : coords_(&coords), dim_(dim), weights_(&weights) {
    n_ = coords.size() / static_cast<std::size_t>(dim);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    nodes_.reserve(2 * n_ + 1);
    root_ = build(0, n_);
  }

  std::size_t size() const { return n_; }

  /// Distance from x to the nearest cloud point.
  double nearest_dist(PointView x) const {
    double best = std::numeric_limits<double>::infinity();
    int dummy = -1;
    nearest(root_, x, best, dummy);
    return std::sqrt(best);
  }

  /// Index of the nearest cloud point (lowest index wins ties).
  int nearest_index(PointView x) const {
    double best = std::numeric_limits<double>::infinity();
    int idx = -1;
    nearest(root_, x, best, idx);
    return idx;
  }

  /// Total weight of the open ball {y : |y - x| < r}.
  double mass_within(PointView x, double r) const {
    double acc = 0.0;
    range_mass(root_, x, r * r, acc);
    return acc;
  }

  /// Indices of points in the open ball {y : |y - x| < r}.
  void indices_within(PointView x, double r, std::vector<int>& out) const {
    range_indices(root_, x, r * r, out);
  }

  /// Exact diameter of the cloud (branch-and-bound over bounding boxes).
  double farthest_pair_dist() const {
    double best = 0.0;
    farthest(root_, root_, best);
    return std::sqrt(best);
  }

  /// Largest nearest-neighbor spacing over the cloud.
  double max_nn_spacing() const {
    double worst = 0.0;
    std::vector<double> x(dim_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (int d = 0; d < dim_; ++d) x[d] = pt(i)[d];
      double best = std::numeric_limits<double>::infinity();
      nearest_excluding(root_, x, static_cast<int>(i), best);
      worst = std::max(worst, std::sqrt(best));
    }
    return worst;
  }

 private:
  struct Node {
    int left = -1, right = -1;
    int begin = 0, end = 0;  // leaf range into order_
    double weight = 0.0;
    std::vector<double> lo, hi;  // bounding box
  };

  static constexpr int kLeafSize = 12;

  PointView pt(std::size_t i) const {
    return PointView(coords_->data() + i * dim_, static_cast<std::size_t>(dim_));
  }

  int build(std::size_t begin, std::size_t end) {
    Node node;
    node.begin = static_cast<int>(begin);
    node.end = static_cast<int>(end);
    node.lo.assign(dim_, std::numeric_limits<double>::infinity());
    node.hi.assign(dim_, -std::numeric_limits<double>::infinity());
    for (std::size_t k = begin; k < end; ++k) {
      PointView p = pt(order_[k]);
      node.weight += (*weights_)[order_[k]];
      for (int d = 0; d < dim_; ++d) {
        node.lo[d] = std::min(node.lo[d], p[d]);
        node.hi[d] = std::max(node.hi[d], p[d]);
      }
    }
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (end - begin > kLeafSize) {
      int axis = 0;
      double span = -1.0;
      for (int d = 0; d < dim_; ++d) {
        if (node.hi[d] - node.lo[d] > span) {
          span = node.hi[d] - node.lo[d];
          axis = d;
        }
      }
      std::size_t mid = (begin + end) / 2;
      std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                       [&](std::size_t a, std::size_t b) { return pt(a)[axis] < pt(b)[axis]; });
      int left = build(begin, mid);
      int right = build(mid, end);
      nodes_[id].left = left;
      nodes_[id].right = right;
    }
    return id;
  }

  double box_dist2(const Node& node, PointView x) const {
    double s = 0.0;
    for (int d = 0; d < dim_; ++d) {
      double v = 0.0;
      if (x[d] < node.lo[d]) v = node.lo[d] - x[d];
      else if (x[d] > node.hi[d]) v = x[d] - node.hi[d];
      s += v * v;
    }
    return s;
  }

  double box_maxdist2(const Node& a, const Node& b) const {
    double s = 0.0;
    for (int d = 0; d < dim_; ++d) {
      double v = std::max(b.hi[d] - a.lo[d], a.hi[d] - b.lo[d]);
      v = std::max(v, 0.0);
      s += v * v;
    }
    return s;
  }

  void nearest(int id, PointView x, double& best, int& idx) const {
    const Node& node = nodes_[id];
    if (box_dist2(node, x) >= best) return;
    if (node.left < 0) {
      for (int k = node.begin; k < node.end; ++k) {
        std::size_t i = order_[k];
        double d2 = dist2(pt(i), x);
        if (d2 < best || (d2 == best && static_cast<int>(i) < idx)) {
          best = d2;
          idx = static_cast<int>(i);
        }
      }
      return;
    }
    double dl = box_dist2(nodes_[node.left], x);
    double dr = box_dist2(nodes_[node.right], x);
    if (dl <= dr) {
      nearest(node.left, x, best, idx);
      nearest(node.right, x, best, idx);
    } else {
      nearest(node.right, x, best, idx);
      nearest(node.left, x, best, idx);
    }
  }

  void nearest_excluding(int id, PointView x, int skip, double& best) const {
    const Node& node = nodes_[id];
    if (box_dist2(node, x) >= best) return;
    if (node.left < 0) {
      for (int k = node.begin; k < node.end; ++k) {
        std::size_t i = order_[k];
        if (static_cast<int>(i) == skip) continue;
        best = std::min(best, dist2(pt(i), x));
      }
      return;
    }
    nearest_excluding(node.left, x, skip, best);
    nearest_excluding(node.right, x, skip, best);
  }

  void range_mass(int id, PointView x, double r2, double& acc) const {
    const Node& node = nodes_[id];
    if (box_dist2(node, x) >= r2) return;
    // fully inside the open ball: farthest corner strictly within r
    double far2 = 0.0;
    for (int d = 0; d < dim_; ++d) {
      double v = std::max(std::abs(x[d] - node.lo[d]), std::abs(x[d] - node.hi[d]));
      far2 += v * v;
    }
    if (far2 < r2) {
      acc += node.weight;
      return;
    }
    if (node.left < 0) {
      for (int k = node.begin; k < node.end; ++k) {
        std::size_t i = order_[k];
        if (dist2(pt(i), x) < r2) acc += (*weights_)[i];
      }
      return;
    }
    range_mass(node.left, x, r2, acc);
    range_mass(node.right, x, r2, acc);
  }

  void range_indices(int id, PointView x, double r2, std::vector<int>& out) const {
    const Node& node = nodes_[id];
    if (box_dist2(node, x) >= r2) return;
    if (node.left < 0) {
      for (int k = node.begin; k < node.end; ++k) {
        std::size_t i = order_[k];
        if (dist2(pt(i), x) < r2) out.push_back(static_cast<int>(i));
      }
      return;
    }
    range_indices(node.left, x, r2, out);
    range_indices(node.right, x, r2, out);
  }

  void farthest(int a, int b, double& best) const {
    const Node& na = nodes_[a];
    const Node& nb = nodes_[b];
    if (box_maxdist2(na, nb) <= best) return;
    if (na.left < 0 && nb.left < 0) {
      for (int ka = na.begin; ka < na.end; ++ka)
        for (int kb = nb.begin; kb < nb.end; ++kb)
          best = std::max(best, dist2(pt(order_[ka]), pt(order_[kb])));
      return;
    }
    if (na.left < 0) {
      farthest(a, nb.left, best);
      farthest(a, nb.right, best);
    } else if (nb.left < 0) {
      farthest(na.left, b, best);
      farthest(na.right, b, best);
    } else {
      farthest(na.left, nb.left, best);
      farthest(na.right, nb.right, best);
      farthest(na.left, nb.right, best);
      farthest(na.right, nb.left, best);
    }
  }

  const std::vector<double>* coords_ = nullptr;
  int dim_ = 0;
  const std::vector<double>* weights_ = nullptr;
  std::size_t n_ = 0;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace sqfn
