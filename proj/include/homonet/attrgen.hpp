#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homonet/rng.hpp"

namespace homonet::attrgen {

inline constexpr std::size_t kAgeIntervals = 7;
inline constexpr int kMinAge = 0;
inline constexpr int kMaxAge = 80;

struct AgeInterval {
  int lo = 0;
  int hi = 0;  // inclusive

  bool contains(int age) const { return age >= lo && age <= hi; }
  friend bool operator==(const AgeInterval&, const AgeInterval&) = default;
};

/// Categorical distribution over seven contiguous age intervals covering 0-80,
/// with a uniform integer draw inside the selected interval.
struct AgeModel {
  std::array<AgeInterval, kAgeIntervals> intervals{{
      {0, 12}, {13, 17}, {18, 25}, {26, 35}, {36, 50}, {51, 65}, {66, 80}}};
  std::array<double, kAgeIntervals> probs{0.01, 0.03, 0.25, 0.30, 0.20, 0.15, 0.06};

  void validate() const;
  std::optional<std::size_t> interval_of(int age) const;
};

enum class Trait : std::uint8_t {
  kOpenness,
  kConscientiousness,
  kExtraversion,
  kAgreeableness,
  kNeuroticism,
};
inline constexpr std::size_t kTraitCount = 5;
inline constexpr std::array<std::string_view, kTraitCount> kTraitNames{
    "Openness", "Conscientiousness", "Extraversion", "Agreeableness", "Neuroticism"};

/// true = "+" polarity, indexed by Trait.
using TraitFlags = std::array<bool, kTraitCount>;

inline bool has(const TraitFlags& flags, Trait t) {
  return flags[static_cast<std::size_t>(t)];
}

/// Per-trait probability of the "+" polarity. Extraversion, Neuroticism and
/// Openness lean positive; the other two are symmetric.
struct TraitModel {
  std::array<double, kTraitCount> positive_prob{0.75, 0.5, 0.75, 0.5, 0.75};

  void validate() const;
};

/// Occupation labels available to each age interval.
struct OccupationPools {
  struct Pool {
    AgeInterval interval;
    std::vector<std::string> labels;
  };
  std::vector<Pool> pools;

  void validate() const;
  const Pool* pool_for(int age) const;
};

struct InterestCatalog {
  std::vector<std::string> labels;
  int max_interests = 5;

  void validate() const;
};

/// Pareto base draw, extraversion top-quintile boost, age modulation, cap.
struct InfluenceModel {
  double exponent = 2.5;
  double x_min = 1.0;
  double max_score = 100.0;
  double boost_prob = 0.5;
  double boost_quantile = 0.2;  // top quintile
  int young_lo = 16;
  int young_hi = 39;
  double young_multiplier = 1.2;
  int old_from = 40;
  double old_multiplier = 0.8;

  void validate() const;
  double age_multiplier(int age) const;
};

enum class Gender : std::uint8_t { kFemale, kMale };
std::string_view to_string(Gender g);

struct NameLists {
  std::vector<std::string> female;
  std::vector<std::string> male;

  void validate() const;
};

struct NodeProfile {
  std::uint32_t id = 0;
  std::string name;
  Gender gender = Gender::kFemale;
  int age = 0;
  TraitFlags traits{};
  std::string occupation;
  std::vector<std::string> interests;
  double influence = 0.0;

  friend bool operator==(const NodeProfile&, const NodeProfile&) = default;
};

struct ProfileConfig {
  AgeModel age;
  TraitModel traits;
  OccupationPools occupations;
  InterestCatalog interests;
  InfluenceModel influence;
  NameLists names;
  double female_prob = 0.5;

  /// Throws ConfigError on the first violated invariant, including pools whose
  /// intervals do not match the age model.
  void validate() const;
};

int sample_age(Rng& rng, const AgeModel& model);
TraitFlags sample_traits(Rng& rng, const TraitModel& model);

/// Throws InputError if `age` lies outside every pool's interval.
const std::string& sample_occupation(Rng& rng, int age, const OccupationPools& pools);

/// Count uniform over {1..min(max_interests, catalog size)}, labels drawn
/// without replacement.
std::vector<std::string> sample_interests(Rng& rng, const InterestCatalog& catalog);

/// Exactly `count` distinct labels, uniform without replacement.
std::vector<std::string> sample_interests(Rng& rng, const InterestCatalog& catalog,
                                          std::size_t count);

double sample_influence(Rng& rng, const InfluenceModel& model, const TraitFlags& traits,
                        int age);

/// Profiles 0..n-1, each drawn from its own stream so the result is identical
/// for any worker count.
std::vector<NodeProfile> generate_profiles(std::size_t n, const ProfileConfig& config,
                                           std::uint64_t seed, unsigned workers = 1);

/// Checks one profile against the NodeProfile invariants; returns a
/// description of the first violation, or nullopt.
std::optional<std::string> check_profile(const NodeProfile& p, const ProfileConfig& config);

}  // namespace homonet::attrgen
