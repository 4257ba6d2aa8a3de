#include "homonet/attrgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "homonet/error.hpp"
#include "homonet/parallel.hpp"

namespace homonet::attrgen {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

void AgeModel::validate() const {
  if (intervals.front().lo != kMinAge || intervals.back().hi != kMaxAge) {
    throw ConfigError("age intervals must cover 0-80");
  }
  for (std::size_t i = 0; i < kAgeIntervals; ++i) {
    if (intervals[i].lo > intervals[i].hi) throw ConfigError("age interval with lo > hi");
    if (i > 0 && intervals[i].lo != intervals[i - 1].hi + 1) {
      throw ConfigError("age intervals must be contiguous");
    }
  }
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) throw ConfigError("age probabilities must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("age probabilities must sum to 1");
}

std::optional<std::size_t> AgeModel::interval_of(int age) const {
  for (std::size_t i = 0; i < kAgeIntervals; ++i) {
    if (intervals[i].contains(age)) return i;
  }
  return std::nullopt;
}

void TraitModel::validate() const {
  for (double p : positive_prob) {
    if (!is_probability(p)) throw ConfigError("trait probabilities must lie in [0,1]");
  }
}

void OccupationPools::validate() const {
  if (pools.empty()) throw ConfigError("occupation pools are empty");
  for (const auto& pool : pools) {
    if (pool.labels.empty()) {
      throw ConfigError("empty occupation pool for ages " + std::to_string(pool.interval.lo) +
                        "-" + std::to_string(pool.interval.hi));
    }
  }
}

const OccupationPools::Pool* OccupationPools::pool_for(int age) const {
  for (const auto& pool : pools) {
    if (pool.interval.contains(age)) return &pool;
  }
  return nullptr;
}

void InterestCatalog::validate() const {
  if (labels.empty()) throw ConfigError("interest catalog is empty");
  if (max_interests < 1) throw ConfigError("max_interests must be >= 1");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw ConfigError("duplicate interest label: " + l);
  }
}

void InfluenceModel::validate() const {
  if (!(exponent > 1.0)) throw ConfigError("influence exponent must be > 1");
  if (!(x_min > 0.0 && x_min < max_score)) throw ConfigError("need 0 < x_min < max_score");
  if (!(young_multiplier > 0.0 && old_multiplier > 0.0)) {
    throw ConfigError("influence age multipliers must be > 0");
  }
  if (!is_probability(boost_prob)) throw ConfigError("boost probability must lie in [0,1]");
  if (!(boost_quantile > 0.0 && boost_quantile <= 1.0)) {
    throw ConfigError("boost quantile must lie in (0,1]");
  }
}

double InfluenceModel::age_multiplier(int age) const {
  if (age >= young_lo && age <= young_hi) return young_multiplier;
  if (age >= old_from) return old_multiplier;
  return 1.0;
}

std::string_view to_string(Gender g) { return g == Gender::kFemale ? "female" : "male"; }

void NameLists::validate() const {
  if (female.empty() || male.empty()) throw ConfigError("name lists must be non-empty");
}

void ProfileConfig::validate() const {
  age.validate();
  traits.validate();
  occupations.validate();
  interests.validate();
  influence.validate();
  names.validate();
  if (!is_probability(female_prob)) throw ConfigError("female probability must lie in [0,1]");
  if (occupations.pools.size() != kAgeIntervals) {
    throw ConfigError("need one occupation pool per age interval");
  }
  for (std::size_t i = 0; i < kAgeIntervals; ++i) {
    if (!(occupations.pools[i].interval == age.intervals[i])) {
      throw ConfigError("occupation pool intervals do not match the age intervals");
    }
  }
}

int sample_age(Rng& rng, const AgeModel& model) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t chosen = kAgeIntervals - 1;
  for (std::size_t i = 0; i < kAgeIntervals; ++i) {
    cumulative += model.probs[i];
    if (u < cumulative) {
      chosen = i;
      break;
    }
  }
  // Rounding can leave u above the final cumulative sum; fall back to the last
  // interval with positive mass.
  while (model.probs[chosen] <= 0.0 && chosen > 0) --chosen;
  const auto& iv = model.intervals[chosen];
  return static_cast<int>(rng.between(iv.lo, iv.hi));
}

TraitFlags sample_traits(Rng& rng, const TraitModel& model) {
  TraitFlags flags{};
  for (std::size_t t = 0; t < kTraitCount; ++t) flags[t] = rng.bernoulli(model.positive_prob[t]);
  return flags;
}

const std::string& sample_occupation(Rng& rng, int age, const OccupationPools& pools) {
  const auto* pool = pools.pool_for(age);
  if (pool == nullptr) {
    throw InputError("age " + std::to_string(age) + " lies outside every occupation pool");
  }
  return pool->labels[rng.below(pool->labels.size())];
}

std::vector<std::string> sample_interests(Rng& rng, const InterestCatalog& catalog,
                                          std::size_t count) {
  const std::size_t total = catalog.labels.size();
  count = std::min(count, total);
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(total - i);
    std::swap(idx[i], idx[j]);
    out.push_back(catalog.labels[idx[i]]);
  }
  return out;
}

std::vector<std::string> sample_interests(Rng& rng, const InterestCatalog& catalog) {
  const auto upper = std::min<std::size_t>(static_cast<std::size_t>(catalog.max_interests),
                                           catalog.labels.size());
  const std::size_t count = 1 + rng.below(upper);
  return sample_interests(rng, catalog, count);
}

double sample_influence(Rng& rng, const InfluenceModel& model, const TraitFlags& traits,
                        int age) {
  // Inverse CCDF of Pareto(a, x_min): x = x_min * u^(-1/(a-1)), u in (0,1].
  const double inv_shape = -1.0 / (model.exponent - 1.0);
  double score = model.x_min * std::pow(rng.uniform_open_closed(), inv_shape);
  if (has(traits, Trait::kExtraversion) && rng.bernoulli(model.boost_prob)) {
    // Conditioning on the top quantile q rescales u into (0, q].
    score = model.x_min *
            std::pow(model.boost_quantile * rng.uniform_open_closed(), inv_shape);
  }
  score *= model.age_multiplier(age);
  return std::min(score, model.max_score);
}

std::vector<NodeProfile> generate_profiles(std::size_t n, const ProfileConfig& config,
                                           std::uint64_t seed, unsigned workers) {
  if (n < 1) throw InputError("need at least 1 profile");
  config.validate();
  std::vector<NodeProfile> out(n);
  parallel_for(workers, 0, n, [&](std::size_t i) {
    Rng rng(seed, stream::kProfile, i);
    NodeProfile& p = out[i];
    p.id = static_cast<std::uint32_t>(i);
    p.gender = rng.bernoulli(config.female_prob) ? Gender::kFemale : Gender::kMale;
    const auto& names = p.gender == Gender::kFemale ? config.names.female : config.names.male;
    p.name = names[rng.below(names.size())];
    p.age = sample_age(rng, config.age);
    p.traits = sample_traits(rng, config.traits);
    p.occupation = sample_occupation(rng, p.age, config.occupations);
    p.interests = sample_interests(rng, config.interests);
    p.influence = sample_influence(rng, config.influence, p.traits, p.age);
  });
  return out;
}

std::optional<std::string> check_profile(const NodeProfile& p, const ProfileConfig& config) {
  const auto interval = config.age.interval_of(p.age);
  if (!interval) return "age outside every interval";
  const auto* pool = config.occupations.pool_for(p.age);
  if (pool == nullptr ||
      std::find(pool->labels.begin(), pool->labels.end(), p.occupation) == pool->labels.end()) {
    return "occupation not in the pool of the age interval";
  }
  if (p.interests.empty() ||
      p.interests.size() > static_cast<std::size_t>(config.interests.max_interests)) {
    return "interest count out of range";
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : p.interests) {
    if (!seen.insert(label).second) return "duplicate interest";
  }
  if (!(p.influence > 0.0 && p.influence <= config.influence.max_score)) {
    return "influence out of (0, max_score]";
  }
  return std::nullopt;
}

}  // namespace homonet::attrgen
