#include "homonet/linkgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "homonet/error.hpp"
#include "homonet/parallel.hpp"

namespace homonet::linkgen {

std::string to_string(LogitForm form) {
  return form == LogitForm::kExponential ? "exponential" : "linear";
}

LogitForm parse_logit_form(const std::string& text) {
  if (text == "exponential") return LogitForm::kExponential;
  if (text == "linear") return LogitForm::kLinear;
  throw ConfigError("logit_form must be 'exponential' or 'linear', got '" + text + "'");
}

void RawHyperParams::validate() const {
  const double values[] = {alpha,       beta,        delta_base, delta_scale,
                           delta_exponent, delta_cap, eta_base,   eta_scale,
                           candidates_scale, candidates_exponent, gamma, k_max};
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) throw ConfigError("hyperparameters must be finite and >= 0");
  }
  if (eta_cap && (!std::isfinite(*eta_cap) || *eta_cap < 0.0)) {
    throw ConfigError("Y_DISTANT_PROB_CAP must be finite and >= 0");
  }
  if (delta_cap < delta_base) throw ConfigError("TRIADIC_PROB_CAP must be >= TRIADIC_PROB_BASE");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ConfigError("temperature must be > 0");
  }
}

ResolvedHyperParams resolve(const RawHyperParams& raw, std::size_t n) {
  if (n < 2) throw InputError("need at least 2 nodes");
  raw.validate();
  const double size = static_cast<double>(n);
  const double log2n = std::log2(size);
  const double log10n = std::log10(size);
  const bool small = n < kSmallGraphLimit;
  const bool large = n >= kLargeGraphLimit;

  ResolvedHyperParams r;
  r.n = n;
  r.alpha = raw.alpha;
  r.beta = raw.beta;
  r.temperature = raw.temperature;
  r.logit_form = raw.logit_form;

  const double k = std::floor(std::min(log2n * raw.gamma, raw.k_max));
  r.k = std::max<std::size_t>(1, static_cast<std::size_t>(k));

  double delta =
      std::min(raw.delta_cap, raw.delta_base + raw.delta_scale / std::pow(log2n, raw.delta_exponent));
  if (small) delta *= 0.35;
  if (large) delta = std::max(delta, 0.22 + 0.02 * log10n);
  r.delta = delta;

  double eta = std::min(raw.effective_eta_cap(), raw.eta_base + raw.eta_scale / std::pow(log2n, 0.75));
  if (small) eta *= 0.05;
  if (large) eta = std::max(eta, raw.eta_base + 0.02 * log10n);
  r.eta = eta;

  double c = std::max(1.0, std::floor(raw.candidates_scale / std::pow(log2n, raw.candidates_exponent)));
  if (small) c = std::max(1.0, std::floor(c * 0.25));
  if (large) c = std::max(c, 6.0);
  r.candidates = static_cast<std::size_t>(c);
  return r;
}

std::size_t local_degree_target(double influence, double max_score, std::size_t k) {
  const double scaled = std::round(static_cast<double>(k) * influence / max_score);
  if (!(scaled >= 1.0)) return 1;
  return std::min(k, static_cast<std::size_t>(scaled));
}

double affinity_score(double alpha, double beta, double distance, double noise, LogitForm form) {
  const double affinity = form == LogitForm::kExponential ? std::exp(-distance) : -distance;
  return alpha * affinity + beta * noise;
}

std::vector<double> softmax(std::span<const double> scores, double temperature) {
  std::vector<double> p(scores.size());
  if (scores.empty()) return p;
  const double top = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    p[j] = std::exp((scores[j] - top) / temperature);
    total += p[j];
  }
  for (double& x : p) x /= total;
  return p;
}

double triadic_probability(double delta, double density) {
  return delta * (1.0 + 1.0 / (1.0 + std::exp(-10.0 * (0.05 - density))));
}

double distant_probability(double eta, std::size_t degree) {
  return eta / (1.0 + std::log(static_cast<double>(degree) + 1.0));
}

LinkState::LinkState(const semspace::ProjectionMatrix& points, ResolvedHyperParams params)
    : points_(&points),
      params_(params),
      graph_(points.rows()),
      mark_(points.rows(), 0),
      scratch_(points.rows(), 0) {}

void LinkState::mark_neighborhood(NodeId i) {
  ++epoch_;
  mark_[i] = epoch_;
  for (NodeId v : graph_.neighbors(i)) mark_[v] = epoch_;
}

void LinkState::link(NodeId i, NodeId target) {
  graph_.add_new_link(i, target);
  mark_[target] = epoch_;
}

std::vector<NodeId> LinkState::affinity_links(NodeId i,
                                              std::span<const semspace::Neighbor> nearest,
                                              std::size_t n, Rng& rng) {
  mark_neighborhood(i);
  std::vector<NodeId> ids;
  std::vector<double> scores;
  ids.reserve(nearest.size());
  scores.reserve(nearest.size());
  for (const auto& nb : nearest) {
    if (marked(nb.id)) continue;
    ids.push_back(nb.id);
    scores.push_back(affinity_score(params_.alpha, params_.beta, nb.distance, rng.uniform(),
                                    params_.logit_form));
  }
  std::vector<double> weights = softmax(scores, params_.temperature);

  std::vector<NodeId> chosen;
  const std::size_t draws = std::min(n, ids.size());
  chosen.reserve(draws);
  for (std::size_t d = 0; d < draws; ++d) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double target = rng.uniform() * total;
    double cumulative = 0.0;
    std::size_t pick = weights.size();
    std::size_t last_positive = weights.size();
    for (std::size_t j = 0; j < weights.size(); ++j) {
      if (weights[j] <= 0.0) continue;
      last_positive = j;
      cumulative += weights[j];
      if (target < cumulative) {
        pick = j;
        break;
      }
    }
    if (pick == weights.size()) pick = last_positive;
    weights[pick] = 0.0;
    chosen.push_back(ids[pick]);
  }
  for (NodeId target : chosen) link(i, target);
  return chosen;
}

std::vector<NodeId> LinkState::triadic_links(NodeId i, Rng& rng) {
  mark_neighborhood(i);
  ++scratch_epoch_;
  std::vector<NodeId> candidates;
  for (NodeId j : graph_.neighbors(i)) {
    for (NodeId u : graph_.neighbors(j)) {
      if (marked(u) || scratch_[u] == scratch_epoch_) continue;
      scratch_[u] = scratch_epoch_;
      candidates.push_back(u);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  const double size = static_cast<double>(params_.n);
  std::vector<NodeId> accepted;
  for (NodeId u : candidates) {
    const double density = static_cast<double>(graph_.degree(i)) / size;
    if (rng.uniform() < triadic_probability(params_.delta, density)) {
      link(i, u);
      accepted.push_back(u);
    }
  }
  return accepted;
}

std::vector<NodeId> LinkState::long_range_links(NodeId i, Rng& rng) {
  mark_neighborhood(i);
  const std::size_t n = params_.n;
  const std::size_t available = n - 1 - graph_.degree(i);
  const std::size_t want =
      std::min({available, n - 1, kLongRangePresampleFactor * params_.candidates});
  if (want == 0) return {};

  // Uniform pre-sample without replacement from the non-neighbors.
  std::vector<NodeId> pool;
  pool.reserve(want);
  ++scratch_epoch_;
  if (want * 2 < available) {
    while (pool.size() < want) {
      const auto u = static_cast<NodeId>(rng.below(n));
      if (marked(u) || scratch_[u] == scratch_epoch_) continue;
      scratch_[u] = scratch_epoch_;
      pool.push_back(u);
    }
  } else {
    std::vector<NodeId> all;
    all.reserve(available);
    for (NodeId u = 0; u < n; ++u) {
      if (!marked(u)) all.push_back(u);
    }
    for (std::size_t s = 0; s < want; ++s) {
      const std::size_t j = s + rng.below(all.size() - s);
      std::swap(all[s], all[j]);
      pool.push_back(all[s]);
    }
  }

  const auto origin = points_->row(i);
  std::vector<std::pair<double, NodeId>> ranked;
  ranked.reserve(pool.size());
  for (NodeId u : pool) ranked.emplace_back(semspace::squared_distance(origin, points_->row(u)), u);
  const std::size_t keep = std::min(params_.candidates, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                    ranked.end(), [](const auto& a, const auto& b) {
                      return a.first > b.first || (a.first == b.first && a.second < b.second);
                    });

  std::vector<NodeId> accepted;
  for (std::size_t c = 0; c < keep; ++c) {
    const NodeId u = ranked[c].second;
    if (rng.uniform() < distant_probability(params_.eta, graph_.degree(u))) {
      link(i, u);
      accepted.push_back(u);
    }
  }
  return accepted;
}

DirectedGraph generate_network(const std::vector<double>& influence, double max_score,
                               const semspace::ProjectionMatrix& points,
                               const RawHyperParams& raw, std::uint64_t seed,
                               const GenerateOptions& options) {
  const std::size_t n = points.rows();
  if (influence.size() != n) throw InputError("influence count differs from projection rows");
  const ResolvedHyperParams params = resolve(raw, n);
  const semspace::SpatialIndex index(points);
  LinkState state(points, params);

  const std::size_t block = std::max<std::size_t>(1, options.query_block);
  std::vector<std::vector<semspace::Neighbor>> nearest(std::min(block, n));
  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t stop = std::min(n, start + block);
    parallel_for(options.workers, start, stop, [&](std::size_t i) {
      nearest[i - start] = index.query(static_cast<NodeId>(i), params.k);
    });
    for (std::size_t i = start; i < stop; ++i) {
      const auto node = static_cast<NodeId>(i);
      Rng rng(seed, stream::kLink, i);
      const std::size_t target = local_degree_target(influence[i], max_score, params.k);
      state.affinity_links(node, nearest[i - start], target, rng);
      state.triadic_links(node, rng);
      state.long_range_links(node, rng);
      if (options.max_edges != 0 && state.graph().edge_count() > options.max_edges) {
        throw BudgetError("edge budget of " + std::to_string(options.max_edges) +
                          " exceeded after node " + std::to_string(i) + " of " +
                          std::to_string(n));
      }
      if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
        throw BudgetError("time budget exceeded after node " + std::to_string(i) + " of " +
                          std::to_string(n));
      }
    }
  }
  return state.take_graph();
}

}  // namespace homonet::linkgen
