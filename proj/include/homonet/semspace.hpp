#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "homonet/attrgen.hpp"

namespace homonet::semspace {

/// A catalog of labels in semantic order. Adjacent labels are semantically
/// close; the normalized index rank / (count - 1) is the label's coordinate.
class SemanticMap {
 public:
  SemanticMap() = default;
  /// Throws ConfigError on duplicate or empty labels.
  explicit SemanticMap(std::vector<std::string> ordered_labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  bool contains(const std::string& label) const { return rank_.count(label) != 0; }

  /// Throws InputError for unknown labels.
  std::size_t rank(const std::string& label) const;
  double normalized(const std::string& label) const;

  void save(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> rank_;
};

/// Orders labels by the leaf order of average-linkage agglomerative clustering
/// over 1 - similarity. Ties between equally close cluster pairs go to the
/// pair with the lower original indices; on merge, the cluster holding the
/// lower original index is placed first.
SemanticMap build_semantic_map(const std::vector<std::string>& labels,
                               const std::vector<std::vector<double>>& similarity);

/// One label per line, in semantic order. Blank lines are ignored.
SemanticMap load_semantic_map(const std::filesystem::path& path);

/// Row-major N x d matrix of weighted semantic vectors
/// [age, occupation, interest_1..interest_k, random] * w.
class ProjectionMatrix {
 public:
  ProjectionMatrix() = default;
  ProjectionMatrix(std::size_t rows, std::size_t interest_slots)
      : rows_(rows), interest_slots_(interest_slots), data_(rows * (interest_slots + 3), 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return interest_slots_ + 3; }
  std::size_t interest_slots() const { return interest_slots_; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols(), cols()};
  }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols(), cols()}; }
  const std::vector<double>& data() const { return data_; }

  /// CSV dump with header "id,A,O,I1..Ik,R".
  void write_csv(std::ostream& out) const;

 private:
  std::size_t rows_ = 0;
  std::size_t interest_slots_ = 0;
  std::vector<double> data_;
};

/// Age is min-max normalized over the attribute model's support [0, 80].
double normalize_age(int age);

/// Squared Euclidean distance, summed in dimension order.
double squared_distance(std::span<const double> a, std::span<const double> b);

/// Builds the projection. `weights` empty means all ones; otherwise its length
/// must equal max interest count + 3. R_i comes from the node's projection
/// stream under `seed`.
ProjectionMatrix project_profiles(const std::vector<attrgen::NodeProfile>& profiles,
                                  const SemanticMap& occupation_map,
                                  const SemanticMap& interest_map,
                                  const std::vector<double>& weights, std::uint64_t seed,
                                  unsigned workers = 1);

struct Neighbor {
  std::uint32_t id = 0;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Exact k-d tree over the rows of a projection matrix. Queries return
/// neighbors ordered by (distance, id); ties are broken by lower id.
class SpatialIndex {
 public:
  /// Keeps a reference to `points`; the matrix must outlive the index.
  explicit SpatialIndex(const ProjectionMatrix& points, std::size_t leaf_size = 12);

  /// The min(k, N-1) nearest rows to row i, excluding i itself.
  std::vector<Neighbor> query(std::uint32_t i, std::size_t k) const;

 private:
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint32_t dim = 0;
    double split = 0.0;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end);

  const ProjectionMatrix* points_;
  std::size_t leaf_size_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

std::vector<Neighbor> knn(const SpatialIndex& index, std::uint32_t i, std::size_t k);

inline double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

}  // namespace homonet::semspace
