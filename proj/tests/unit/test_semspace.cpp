#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "homonet/error.hpp"
#include "homonet/pipeline.hpp"
#include "homonet/semspace.hpp"

using namespace homonet;
using namespace homonet::semspace;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("homonet_semspace_" + name);
}

ProjectionMatrix random_points(std::size_t n, std::size_t slots, Rng& rng, double grid = 0.0) {
  ProjectionMatrix m(n, slots);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& x : m.row(i)) {
      x = rng.uniform();
      if (grid > 0) x = std::floor(x / grid) * grid;  // forces ties
    }
  }
  return m;
}

std::vector<Neighbor> brute_knn(const ProjectionMatrix& m, std::uint32_t i, std::size_t k) {
  std::vector<Neighbor> all;
  for (std::uint32_t j = 0; j < m.rows(); ++j) {
    if (j == i) continue;
    double s = 0;
    for (std::size_t d = 0; d < m.cols(); ++d) s += (m.row(i)[d] - m.row(j)[d]) * (m.row(i)[d] - m.row(j)[d]);
    all.push_back({j, std::sqrt(s)});
  }
  std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
  });
  all.resize(std::min(k, all.size()));
  return all;
}

attrgen::NodeProfile profile(int age, std::string occ, std::vector<std::string> interests) {
  attrgen::NodeProfile p;
  p.age = age;
  p.occupation = std::move(occ);
  p.interests = std::move(interests);
  return p;
}

}  // namespace

TEST_CASE("semantic map: normalization") {
  SemanticMap one({"X"});
  CHECK(one.rank("X") == 0);
  CHECK(one.normalized("X") == 0.0);
  SemanticMap abc({"A", "B", "C"});
  CHECK(abc.normalized("A") == 0.0);
  CHECK(abc.normalized("B") == 0.5);
  CHECK(abc.normalized("C") == 1.0);
  CHECK_THROWS_AS(abc.rank("Z"), InputError);
}

TEST_CASE("semantic map: file round trip and duplicates") {
  const auto path = temp_file("abc.txt");
  SemanticMap abc({"A", "B", "C"});
  abc.save(path);
  const auto back = load_semantic_map(path);
  CHECK(back.labels() == abc.labels());

  {
    std::ofstream f(path);
    f << "A\nB\nA\n";
  }
  CHECK_THROWS_AS(load_semantic_map(path), LoadError);
  {
    std::ofstream f(path);
    f << "X\n";
  }
  CHECK(load_semantic_map(path).normalized("X") == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("semantic map: hierarchical ordering keeps close labels adjacent") {
  const std::vector<std::string> labels{"A", "B", "C"};
  const auto map = build_semantic_map(labels, {{1, 0.9, 0.1}, {0.9, 1, 0.1}, {0.1, 0.1, 1}});
  const auto ra = static_cast<int>(map.rank("A"));
  const auto rb = static_cast<int>(map.rank("B"));
  CHECK(std::abs(ra - rb) == 1);

  // Two tight pairs far apart: each pair stays contiguous.
  const std::vector<std::string> four{"P", "Q", "R", "S"};
  const std::vector<std::vector<double>> sim{
      {1, 0.1, 0.95, 0.1}, {0.1, 1, 0.1, 0.9}, {0.95, 0.1, 1, 0.1}, {0.1, 0.9, 0.1, 1}};
  const auto m4 = build_semantic_map(four, sim);
  CHECK(std::abs(static_cast<int>(m4.rank("P")) - static_cast<int>(m4.rank("R"))) == 1);
  CHECK(std::abs(static_cast<int>(m4.rank("Q")) - static_cast<int>(m4.rank("S"))) == 1);

  CHECK(build_semantic_map({"only"}, {{1}}).normalized("only") == 0.0);
  CHECK_THROWS_AS(build_semantic_map(labels, {{1, 0.9}, {0.9, 1}}), InputError);
  CHECK_THROWS_AS(build_semantic_map(labels, {{1, 0.9, 0.1}, {0.8, 1, 0.1}, {0.1, 0.1, 1}}),
                  InputError);
}

TEST_CASE("bundled occupation ordering places related jobs together") {
  const auto cfg = load_generator_config(default_data_dir());
  const auto& m = cfg.occupation_map;
  const auto eng = static_cast<int>(m.rank("Engineer"));
  const auto tech = static_cast<int>(m.rank("Technician"));
  CHECK(std::abs(eng - tech) == 1);
  CHECK(std::abs(eng - static_cast<int>(m.rank("Artist"))) > static_cast<int>(m.size()) / 2);
  CHECK(std::abs(eng - static_cast<int>(m.rank("Farmer"))) > 10);
}

TEST_CASE("projection: layout, padding, weights") {
  SemanticMap occ({"Pupil", "Engineer", "Retired"});
  SemanticMap ints({"Chess", "Painting", "Sports"});
  std::vector<attrgen::NodeProfile> ps{profile(80, "Retired", {"Chess", "Painting"}),
                                       profile(0, "Pupil", {"Sports", "Chess", "Painting", "Sports", "Chess"})};
  ps[1].interests = {"Sports", "Chess", "Painting"};
  ps.push_back(profile(40, "Engineer", {"Chess", "Painting", "Sports", "Chess", "Painting"}));
  const auto m = project_profiles(ps, occ, ints, {}, 9);
  CHECK(m.cols() == 8);
  CHECK(m.row(0)[0] == 1.0);
  CHECK(m.row(1)[0] == 0.0);
  CHECK(m.row(0)[1] == 1.0);
  CHECK(m.row(0)[2] == 0.0);
  CHECK(m.row(0)[3] == 0.5);
  for (std::size_t s = 4; s < 7; ++s) CHECK(m.row(0)[s] == 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (double x : m.row(i)) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
    }
  }

  const auto zero = project_profiles(ps, occ, ints, std::vector<double>(8, 0.0), 9);
  for (double x : zero.data()) CHECK(x == 0.0);

  CHECK_THROWS_AS(project_profiles(ps, occ, ints, {1, 1}, 9), InputError);
  auto bad = ps;
  bad[2].occupation = "Astronaut";
  bad[2].id = 2;
  try {
    project_profiles(bad, occ, ints, {}, 9);
    FAIL("expected an error");
  } catch (const InputError& e) {
    const std::string what = e.what();
    CHECK(what.find("Astronaut") != std::string::npos);
    CHECK(what.find("node 2") != std::string::npos);
  }
}

TEST_CASE("projection: identical profiles differ only in the random component") {
  SemanticMap occ({"Pupil", "Engineer"});
  SemanticMap ints({"Chess", "Painting"});
  std::vector<attrgen::NodeProfile> ps{profile(30, "Engineer", {"Chess"}),
                                       profile(30, "Engineer", {"Chess"})};
  ps[1].id = 1;
  const auto m = project_profiles(ps, occ, ints, {}, 1);
  for (std::size_t d = 0; d + 1 < m.cols(); ++d) CHECK(m.row(0)[d] == m.row(1)[d]);
  CHECK(m.row(0)[m.cols() - 1] != m.row(1)[m.cols() - 1]);
}

TEST_CASE("knn: two points and tie order") {
  ProjectionMatrix two(2, 0);
  two.row(0)[0] = 0.0;
  two.row(1)[0] = 0.3;
  two.row(1)[1] = 0.4;
  const SpatialIndex idx(two);
  const auto r = knn(idx, 0, 5);
  REQUIRE(r.size() == 1);
  CHECK(r[0].id == 1);
  CHECK(r[0].distance == doctest::Approx(0.5).epsilon(1e-15));

  ProjectionMatrix dup(4, 0);
  for (std::size_t i = 1; i < 4; ++i) dup.row(i)[0] = 1.0;
  const SpatialIndex didx(dup);
  const auto d = knn(didx, 0, 3);
  REQUIRE(d.size() == 3);
  CHECK(d[0].id == 1);
  CHECK(d[1].id == 2);
  CHECK(d[2].id == 3);
  CHECK_THROWS_AS(knn(didx, 0, 0), InputError);
}

TEST_CASE("knn: matches brute force on random instances") {
  Rng rng(77, "knn");
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(99);
    const std::size_t slots = rng.below(6);  // d = slots + 3 <= 8
    const double grid = t % 3 == 0 ? 0.25 : 0.0;
    const auto m = random_points(n, slots, rng, grid);
    const SpatialIndex idx(m, 1 + rng.below(12));
    const std::size_t k = 1 + rng.below(n + 3);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto got = knn(idx, i, k);
      const auto want = brute_knn(m, i, k);
      if (got.size() != want.size()) {
        ++mismatches;
        continue;
      }
      for (std::size_t j = 0; j < got.size(); ++j) {
        if (got[j].id != want[j].id || got[j].distance != want[j].distance) ++mismatches;
      }
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("knn: scaling weights preserves neighbor order") {
  Rng rng(5, "scale");
  const auto m = random_points(60, 5, rng);
  ProjectionMatrix scaled(60, 5);
  for (std::size_t i = 0; i < 60; ++i) {
    for (std::size_t d = 0; d < m.cols(); ++d) scaled.row(i)[d] = 3.0 * m.row(i)[d];
  }
  const SpatialIndex a(m);
  const SpatialIndex b(scaled);
  for (std::uint32_t i = 0; i < 60; ++i) {
    const auto x = knn(a, i, 10);
    const auto y = knn(b, i, 10);
    for (std::size_t j = 0; j < x.size(); ++j) {
      CHECK(x[j].id == y[j].id);
      CHECK(y[j].distance == doctest::Approx(3.0 * x[j].distance).epsilon(1e-12));
    }
  }
}
