#include "homonet/semspace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "homonet/error.hpp"
#include "homonet/parallel.hpp"

namespace homonet::semspace {

SemanticMap::SemanticMap(std::vector<std::string> ordered_labels)
    : labels_(std::move(ordered_labels)) {
  rank_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw ConfigError("empty label in semantic ordering");
    if (!rank_.emplace(labels_[i], i).second) {
      throw ConfigError("duplicate label in semantic ordering: " + labels_[i]);
    }
  }
}

std::size_t SemanticMap::rank(const std::string& label) const {
  const auto it = rank_.find(label);
  if (it == rank_.end()) throw InputError("label not in semantic ordering: " + label);
  return it->second;
}

double SemanticMap::normalized(const std::string& label) const {
  const std::size_t r = rank(label);
  if (labels_.size() <= 1) return 0.0;
  return static_cast<double>(r) / static_cast<double>(labels_.size() - 1);
}

void SemanticMap::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write " + path.string());
  for (const auto& l : labels_) out << l << '\n';
}

SemanticMap load_semantic_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open semantic ordering " + path.string());
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    labels.push_back(line);
  }
  if (labels.empty()) throw LoadError("empty semantic ordering " + path.string());
  try {
    return SemanticMap(std::move(labels));
  } catch (const ConfigError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

SemanticMap build_semantic_map(const std::vector<std::string>& labels,
                               const std::vector<std::vector<double>>& similarity) {
  const std::size_t n = labels.size();
  if (n == 0) throw InputError("no labels to order");
  if (similarity.size() != n) throw InputError("similarity table is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (similarity[i].size() != n) throw InputError("similarity table is not square");
    if (std::abs(similarity[i][i] - 1.0) > 1e-9) {
      throw InputError("similarity table diagonal must be 1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(similarity[i][j] - similarity[j][i]) > 1e-12) {
        throw InputError("similarity table is not symmetric");
      }
    }
  }

  // Each cluster keeps its leaves in order; its key is the lowest original
  // index it holds.
  struct Cluster {
    std::vector<std::size_t> leaves;
    std::size_t key;
  };
  std::vector<Cluster> clusters;
  clusters.reserve(n);
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({{i}, i});

  auto linkage = [&](const Cluster& a, const Cluster& b) {
    double total = 0.0;
    for (std::size_t x : a.leaves) {
      for (std::size_t y : b.leaves) total += 1.0 - similarity[x][y];
    }
    return total / static_cast<double>(a.leaves.size() * b.leaves.size());
  };

  while (clusters.size() > 1) {
    // clusters stay sorted by key, so scanning (a < b) visits pairs in
    // lexicographic key order and strict < keeps the first minimum.
    std::size_t best_a = 0;
    std::size_t best_b = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        const double d = linkage(clusters[a], clusters[b]);
        if (d < best) {
          best = d;
          best_a = a;
          best_b = b;
        }
      }
    }
    auto& first = clusters[best_a];
    auto& second = clusters[best_b];
    first.leaves.insert(first.leaves.end(), second.leaves.begin(), second.leaves.end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_b));
  }

  std::vector<std::string> ordered;
  ordered.reserve(n);
  for (std::size_t leaf : clusters.front().leaves) ordered.push_back(labels[leaf]);
  return SemanticMap(std::move(ordered));
}

void ProjectionMatrix::write_csv(std::ostream& out) const {
  out << "id,A,O";
  for (std::size_t k = 1; k <= interest_slots_; ++k) out << ",I" << k;
  out << ",R\n";
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < rows_; ++i) {
    out << i;
    for (double v : row(i)) out << ',' << v;
    out << '\n';
  }
  out.precision(old_precision);
}

double normalize_age(int age) {
  return static_cast<double>(age - attrgen::kMinAge) /
         static_cast<double>(attrgen::kMaxAge - attrgen::kMinAge);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return s;
}

ProjectionMatrix project_profiles(const std::vector<attrgen::NodeProfile>& profiles,
                                  const SemanticMap& occupation_map,
                                  const SemanticMap& interest_map,
                                  const std::vector<double>& weights, std::uint64_t seed,
                                  unsigned workers) {
  std::size_t slots = 0;
  for (const auto& p : profiles) slots = std::max(slots, p.interests.size());
  ProjectionMatrix matrix(profiles.size(), slots);

  std::vector<double> w = weights;
  if (w.empty()) w.assign(matrix.cols(), 1.0);
  if (w.size() != matrix.cols()) {
    throw InputError("weight vector has length " + std::to_string(w.size()) + ", expected " +
                     std::to_string(matrix.cols()));
  }
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) throw InputError("weights must be finite and >= 0");
  }

  auto resolve = [](const SemanticMap& map, const std::string& label, std::uint32_t id,
                    const char* kind) {
    if (!map.contains(label)) {
      throw InputError(std::string("node ") + std::to_string(id) + ": " + kind + " '" + label +
                       "' is not in the semantic ordering");
    }
    return map.normalized(label);
  };

  parallel_for(workers, 0, profiles.size(), [&](std::size_t i) {
    const auto& p = profiles[i];
    auto row = matrix.row(i);
    row[0] = normalize_age(p.age);
    row[1] = resolve(occupation_map, p.occupation, p.id, "occupation");
    for (std::size_t k = 0; k < p.interests.size(); ++k) {
      row[2 + k] = resolve(interest_map, p.interests[k], p.id, "interest");
    }
    Rng rng(seed, stream::kProjection, i);
    row[2 + slots] = rng.uniform();
    for (std::size_t d = 0; d < row.size(); ++d) row[d] *= w[d];
  });
  return matrix;
}

}  // namespace homonet::semspace
