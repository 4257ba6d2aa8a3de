#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homonet/graph.hpp"
#include "homonet/rng.hpp"
#include "homonet/semspace.hpp"

namespace homonet::linkgen {

/// How the affinity logit uses the semantic distance d:
/// exponential -> alpha * exp(-d) + beta * U, linear -> alpha * (-d) + beta * U.
enum class LogitForm { kExponential, kLinear };

std::string to_string(LogitForm form);
/// Accepts "exponential" or "linear"; throws ConfigError otherwise.
LogitForm parse_logit_form(const std::string& text);

/// User-facing hyperparameters. Defaults are the best calibrated setting at
/// N = 1000 (eta0 0.05, kappa 0.10, delta0 0.20, lambda 3.5, delta_cap 0.42,
/// zeta 36, alpha 0.16, beta 0.06).
struct RawHyperParams {
  double alpha = 0.16;       // CONN_EXP_WEIGHT
  double beta = 0.06;        // CONN_RAND_WEIGHT
  double delta_base = 0.20;  // TRIADIC_PROB_BASE
  double delta_scale = 3.5;  // TRIADIC_PROB_SCALE
  double delta_exponent = 1.0;
  double delta_cap = 0.42;  // TRIADIC_PROB_CAP
  double eta_base = 0.05;   // Y_DISTANT_PROB_BASE
  double eta_scale = 0.10;  // Y_DISTANT_PROB_SCALE
  std::optional<double> eta_cap;  // Y_DISTANT_PROB_CAP, defaults to eta_base + eta_scale
  double candidates_scale = 36.0;  // NUM_CANDIDATES_SCALE
  double candidates_exponent = 0.6;
  double gamma = 2.0;
  double k_max = 50.0;
  double temperature = 0.5;
  LogitForm logit_form = LogitForm::kExponential;

  double effective_eta_cap() const { return eta_cap.value_or(eta_base + eta_scale); }
  void validate() const;
};

/// Schedule outputs for one network size.
struct ResolvedHyperParams {
  std::size_t n = 0;
  std::size_t k = 1;
  double delta = 0.0;
  double eta = 0.0;
  std::size_t candidates = 1;
  double alpha = 0.0;
  double beta = 0.0;
  double temperature = 0.5;
  LogitForm logit_form = LogitForm::kExponential;
};

inline constexpr std::size_t kSmallGraphLimit = 10'000;   // N below: suppression
inline constexpr std::size_t kLargeGraphLimit = 100'000;  // N at or above: floors

/// Evaluates the size-adaptive schedules. Throws InputError for n < 2.
ResolvedHyperParams resolve(const RawHyperParams& raw, std::size_t n);

/// Number of affinity links a node attempts: clamp(round(k * influence /
/// max_score), 1, k).
std::size_t local_degree_target(double influence, double max_score, std::size_t k);

double affinity_score(double alpha, double beta, double distance, double noise, LogitForm form);

/// softmax(scores / temperature), computed with the max subtracted.
std::vector<double> softmax(std::span<const double> scores, double temperature);

/// delta * (1 + sigmoid(10 * (0.05 - density))).
double triadic_probability(double delta, double density);

/// eta / (1 + ln(degree + 1)).
double distant_probability(double eta, std::size_t degree);

/// Size of the uniform non-neighbor pre-sample for long-range candidates.
inline constexpr std::size_t kLongRangePresampleFactor = 32;

/// Mutable generation state: the growing graph plus scratch marks. The three
/// phases append links (i, target) to the graph and mirror them into H.
class LinkState {
 public:
  LinkState(const semspace::ProjectionMatrix& points, ResolvedHyperParams params);

  const DirectedGraph& graph() const { return graph_; }
  DirectedGraph take_graph() { return std::move(graph_); }
  const ResolvedHyperParams& params() const { return params_; }

  /// Draws min(n, unlinked candidates) targets without replacement from the
  /// unlinked members of `nearest`, with softmax probabilities over the
  /// affinity scores. Returns targets in draw order.
  std::vector<NodeId> affinity_links(NodeId i, std::span<const semspace::Neighbor> nearest,
                                     std::size_t n, Rng& rng);

  /// One Bernoulli trial per friend-of-friend (ascending id), density
  /// re-evaluated from the current H[i] before each trial.
  std::vector<NodeId> triadic_links(NodeId i, Rng& rng);

  /// Pre-samples non-neighbors, keeps the `candidates` most distant, and
  /// accepts each with the degree-penalized probability.
  std::vector<NodeId> long_range_links(NodeId i, Rng& rng);

 private:
  void mark_neighborhood(NodeId i);
  bool marked(NodeId u) const { return mark_[u] == epoch_; }
  void link(NodeId i, NodeId target);

  const semspace::ProjectionMatrix* points_;
  ResolvedHyperParams params_;
  DirectedGraph graph_;
  std::vector<std::uint64_t> mark_;
  std::vector<std::uint64_t> scratch_;
  std::uint64_t epoch_ = 0;
  std::uint64_t scratch_epoch_ = 0;
};

struct GenerateOptions {
  unsigned workers = 1;
  /// Nodes whose neighbor queries are computed together before the
  /// sequential link phases consume them.
  std::size_t query_block = 4096;
  /// Abort with BudgetError once the edge count exceeds this (0 = no limit).
  std::size_t max_edges = 0;
  /// Abort with BudgetError when a node finishes after this instant.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Processes nodes in ascending id; each node runs affinity, triadic and
/// long-range phases in order from its own link stream. Output does not
/// depend on the worker count.
DirectedGraph generate_network(const std::vector<double>& influence, double max_score,
                               const semspace::ProjectionMatrix& points,
                               const RawHyperParams& raw, std::uint64_t seed,
                               const GenerateOptions& options = {});

}  // namespace homonet::linkgen
