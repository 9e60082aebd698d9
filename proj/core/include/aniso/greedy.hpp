#pragma once

// The greedy bisection loop: repeatedly bisect the leaf with the largest
// local error, along the edge chosen by a decision function.

#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "aniso/approx.hpp"
#include "aniso/fields.hpp"
#include "aniso/forest.hpp"

namespace aniso {

enum class DecisionKind { l1_interpolation, lp_split };

std::string to_string(DecisionKind d);
DecisionKind parse_decision(const std::string& s);

struct StopRule {
  enum class Kind { target_count, error_threshold, generation_levels };

  Kind kind = Kind::target_count;
  std::size_t count = 0;  // target_count
  double eta = 0.0;       // error_threshold
  int levels = 0;         // generation_levels

  static StopRule target(std::size_t n) { return {Kind::target_count, n, 0.0, 0}; }
  static StopRule threshold(double eta) { return {Kind::error_threshold, 0, eta, 0}; }
  static StopRule generations(int n) { return {Kind::generation_levels, 0, 0.0, n}; }
};

enum class InitialMesh { reference_triangle, unit_square };

std::vector<Triangle> initial_mesh(InitialMesh m);
std::string to_string(InitialMesh m);
InitialMesh parse_initial_mesh(const std::string& s);

inline constexpr std::size_t kDefaultMaxNodes = std::size_t{1} << 22;

struct GreedyConfig {
  double p = 2.0;
  OperatorKind op = OperatorKind::interpolation;
  DecisionKind decision = DecisionKind::l1_interpolation;
  StopRule stop = StopRule::target(256);
  InitialMesh initial = InitialMesh::unit_square;
  std::size_t max_nodes = kDefaultMaxNodes;

  /// Throws std::invalid_argument on inconsistent combinations.
  void validate(std::size_t root_count) const;
};

struct TraceRecord {
  std::size_t n = 0;
  double global_error = 0.0;
  double max_leaf_error = 0.0;
  double max_diameter = 0.0;
  // sigma of each leaf in the metric of the local hessian (barycenter);
  // NaN when the field has no positive definite hessian anywhere.
  double sigma_mean = 0.0;
  double sigma_max = 0.0;
  double sigma_fraction_above = 0.0;
};

/// Leaf with the largest cached error; ties go to the smallest id.
NodeId select_triangle(const RefinementForest& forest);

/// Edge minimizing the configured decision function (ties: lowest index).
int select_edge(const Triangle& t, const ScalarField& f, const GreedyConfig& config);

/// Recomputes every leaf error from f.
void refresh_errors(RefinementForest& forest, const ScalarField& f, double p, OperatorKind op);

/// (sum_T e_T^p)^{1/p} over leaves, recomputing e_T from f.
double global_error(const RefinementForest& forest, const ScalarField& f, double p,
                    OperatorKind op);
/// Same, from cached leaf errors.
double cached_global_error(const RefinementForest& forest, double p);

/// Bisects every leaf `levels` times; child errors are cached.
void uniform_refine(RefinementForest& forest, const ScalarField& f, const GreedyConfig& config,
                    int levels);

TraceRecord make_trace_record(const RefinementForest& forest, const ScalarField& f, double p);

/// Stateful greedy driver; each step() performs exactly one bisection.
class GreedyRefiner {
 public:
  GreedyRefiner(ScalarField f, GreedyConfig config);
  GreedyRefiner(ScalarField f, GreedyConfig config, const std::vector<Triangle>& roots);

  /// Leaf that the next step will bisect.
  NodeId peek();
  /// One bisection; returns the bisected node.
  NodeId step();
  /// Steps until the configured stop rule holds.
  void run();
  /// Steps until the forest has at least n leaves.
  void run_to_count(std::size_t n);
  /// Steps until every leaf error is <= eta.
  void run_to_threshold(double eta);

  const RefinementForest& forest() const { return forest_; }
  RefinementForest release_forest() { return std::move(forest_); }
  const std::vector<TraceRecord>& trace() const { return trace_; }
  const GreedyConfig& config() const { return config_; }
  const ScalarField& field() const { return field_; }
  double global_error() const { return cached_global_error(forest_, config_.p); }

 private:
  struct Entry {
    double error;
    NodeId id;
  };
  struct EntryOrder {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.error != b.error) return a.error < b.error;
      return a.id > b.id;
    }
  };

  void push(NodeId id);
  void maybe_record();
  void record();

  ScalarField field_;
  GreedyConfig config_;
  RefinementForest forest_;
  std::priority_queue<Entry, std::vector<Entry>, EntryOrder> heap_;
  std::vector<TraceRecord> trace_;
};

struct GreedyResult {
  RefinementForest forest;
  std::vector<TraceRecord> trace;
};

/// Runs to the stop rule. generation_levels(n) refines every root uniformly n times.
GreedyResult greedy_run(const ScalarField& f, const GreedyConfig& config);

}  // namespace aniso
