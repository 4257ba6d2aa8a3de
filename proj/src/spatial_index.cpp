#include <algorithm>
#include <numeric>
#include <queue>

#include "homonet/error.hpp"
#include "homonet/semspace.hpp"

namespace homonet::semspace {

SpatialIndex::SpatialIndex(const ProjectionMatrix& points, std::size_t leaf_size)
    : points_(&points), leaf_size_(std::max<std::size_t>(1, leaf_size)) {
  order_.resize(points.rows());
  std::iota(order_.begin(), order_.end(), 0u);
  if (!order_.empty()) {
    nodes_.reserve(2 * points.rows() / leaf_size_ + 1);
    build(0, static_cast<std::uint32_t>(order_.size()));
  }
}

std::int32_t SpatialIndex::build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back({begin, end, -1, -1, 0, 0.0});
  if (end - begin <= leaf_size_) return id;

  // Split on the dimension of largest spread at the median.
  const std::size_t dims = points_->cols();
  std::uint32_t best_dim = 0;
  double best_spread = -1.0;
  for (std::uint32_t d = 0; d < dims; ++d) {
    double lo = points_->row(order_[begin])[d];
    double hi = lo;
    for (std::uint32_t i = begin + 1; i < end; ++i) {
      const double v = points_->row(order_[i])[d];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best_spread) {
      best_spread = hi - lo;
      best_dim = d;
    }
  }
  if (best_spread <= 0.0) return id;  // all points coincide; keep as a leaf

  const std::uint32_t mid = begin + (end - begin) / 2;
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    const double va = points_->row(a)[best_dim];
    const double vb = points_->row(b)[best_dim];
    return va < vb || (va == vb && a < b);
  };
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end, less);
  const double split = points_->row(order_[mid])[best_dim];

  nodes_[id].dim = best_dim;
  nodes_[id].split = split;
  const std::int32_t left = build(begin, mid);
  const std::int32_t right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::vector<Neighbor> SpatialIndex::query(std::uint32_t i, std::size_t k) const {
  if (i >= points_->rows()) throw InputError("query id out of range");
  const std::size_t want = std::min<std::size_t>(k, points_->rows() - 1);
  if (want == 0) return {};

  // Max-heap on (squared distance, id): the top is the current worst kept.
  using Entry = std::pair<double, std::uint32_t>;
  std::priority_queue<Entry> heap;
  const auto q = points_->row(i);

  auto visit = [&](auto&& self, std::int32_t node_id) -> void {
    const Node& node = nodes_[node_id];
    if (node.left < 0) {
      for (std::uint32_t pos = node.begin; pos < node.end; ++pos) {
        const std::uint32_t p = order_[pos];
        if (p == i) continue;
        const Entry e{squared_distance(q, points_->row(p)), p};
        if (heap.size() < want) {
          heap.push(e);
        } else if (e < heap.top()) {
          heap.pop();
          heap.push(e);
        }
      }
      return;
    }
    // Points left of the split satisfy x <= split, points right x >= split.
    const double diff = q[node.dim] - node.split;
    const std::int32_t near = diff <= 0.0 ? node.left : node.right;
    const std::int32_t far = diff <= 0.0 ? node.right : node.left;
    self(self, near);
    // A far point at the same squared distance as the current worst can still
    // win on id, so only strictly larger bounds are pruned.
    if (heap.size() < want || diff * diff <= heap.top().first) self(self, far);
  };
  visit(visit, 0);

  std::vector<Neighbor> out(heap.size());
  for (std::size_t pos = out.size(); pos-- > 0;) {
    out[pos] = {heap.top().second, std::sqrt(heap.top().first)};
    heap.pop();
  }
  return out;
}

std::vector<Neighbor> knn(const SpatialIndex& index, std::uint32_t i, std::size_t k) {
  if (k < 1) throw InputError("knn needs k >= 1");
  return index.query(i, k);
}

}  // namespace homonet::semspace
