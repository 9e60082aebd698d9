#include "aniso/greedy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aniso {

std::string to_string(DecisionKind d) {
  return d == DecisionKind::l1_interpolation ? "l1-interp" : "lp-split";
}

DecisionKind parse_decision(const std::string& s) {
  if (s == "l1-interp" || s == "l1") return DecisionKind::l1_interpolation;
  if (s == "lp-split" || s == "lp") return DecisionKind::lp_split;
  throw std::invalid_argument("unknown decision '" + s + "'");
}

std::vector<Triangle> initial_mesh(InitialMesh m) {
  return m == InitialMesh::reference_triangle ? reference_triangle_mesh() : unit_square_mesh();
}

std::string to_string(InitialMesh m) {
  return m == InitialMesh::reference_triangle ? "triangle" : "square";
}

InitialMesh parse_initial_mesh(const std::string& s) {
  if (s == "triangle" || s == "reference-triangle") return InitialMesh::reference_triangle;
  if (s == "square" || s == "unit-square") return InitialMesh::unit_square;
  throw std::invalid_argument("unknown initial mesh '" + s + "'");
}

void GreedyConfig::validate(std::size_t root_count) const {
  require_exponent(p);
  switch (stop.kind) {
    case StopRule::Kind::target_count:
      if (stop.count < root_count)
        throw std::invalid_argument("target count must be at least the number of roots");
      break;
    case StopRule::Kind::error_threshold:
      if (!(stop.eta > 0.0)) throw std::invalid_argument("error threshold must be positive");
      break;
    case StopRule::Kind::generation_levels:
      if (stop.levels < 0) throw std::invalid_argument("generation levels must be >= 0");
      break;
  }
  if (max_nodes < root_count) throw std::invalid_argument("node cap below root count");
}

namespace {

// Index of the best value; a later candidate wins only when clearly better.
template <class Better>
int pick_edge(const std::array<double, 3>& v, Better better) {
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    const double scale = std::max(std::abs(v[i]), std::abs(v[best]));
    if (better(v[i], v[best]) && std::abs(v[i] - v[best]) > kEdgeTieTol * scale) best = i;
  }
  return best;
}

double leaf_error(const Triangle& t, const ScalarField& f, const GreedyConfig& c) {
  return local_error(t, f, c.p, c.op);
}

void check_capacity(const RefinementForest& forest, std::size_t max_nodes) {
  if (forest.size() + 2 > max_nodes)
    throw RunawayRefinement("refinement exceeded node cap of " + std::to_string(max_nodes));
}

}  // namespace

NodeId select_triangle(const RefinementForest& forest) {
  NodeId best = kNoNode;
  double best_error = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < forest.size(); ++i) {
    const auto& n = forest.nodes()[i];
    if (n.is_leaf() && n.error > best_error) {
      best = static_cast<NodeId>(i);
      best_error = n.error;
    }
  }
  if (best == kNoNode) throw std::logic_error("forest has no leaves");
  return best;
}

int select_edge(const Triangle& t, const ScalarField& f, const GreedyConfig& config) {
  std::array<double, 3> v{};
  if (config.decision == DecisionKind::l1_interpolation) {
    if (f.is_convex()) {
      for (int e = 0; e < 3; ++e) v[e] = decision_gain_convex(t, f, e);
      return pick_edge(v, [](double a, double b) { return a > b; });
    }
    for (int e = 0; e < 3; ++e) v[e] = decision_l1(t, f, e);
  } else {
    for (int e = 0; e < 3; ++e) v[e] = decision_lp_split(t, f, config.p, config.op, e);
  }
  return pick_edge(v, [](double a, double b) { return a < b; });
}

void refresh_errors(RefinementForest& forest, const ScalarField& f, double p, OperatorKind op) {
  for (NodeId id : forest.leaves()) forest.set_error(id, local_error(forest.node(id).triangle, f, p, op));
}

double global_error(const RefinementForest& forest, const ScalarField& f, double p,
                    OperatorKind op) {
  require_exponent(p);
  double acc = 0.0;
  for (const auto& t : forest.leaf_triangles()) {
    const double e = local_error(t, f, p, op);
    acc = std::isinf(p) ? std::max(acc, e) : acc + std::pow(e, p);
  }
  return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

double cached_global_error(const RefinementForest& forest, double p) {
  require_exponent(p);
  double acc = 0.0;
  for (const auto& n : forest.nodes()) {
    if (!n.is_leaf()) continue;
    acc = std::isinf(p) ? std::max(acc, n.error) : acc + std::pow(n.error, p);
  }
  return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

void uniform_refine(RefinementForest& forest, const ScalarField& f, const GreedyConfig& config,
                    int levels) {
  if (levels < 0) throw std::invalid_argument("levels must be >= 0");
  for (int level = 0; level < levels; ++level) {
    for (NodeId id : forest.leaves()) {
      check_capacity(forest, config.max_nodes);
      const Triangle t = forest.node(id).triangle;
      const auto [a, b] = forest.split(id, select_edge(t, f, config));
      forest.set_error(a, leaf_error(forest.node(a).triangle, f, config));
      forest.set_error(b, leaf_error(forest.node(b).triangle, f, config));
    }
  }
}

TraceRecord make_trace_record(const RefinementForest& forest, const ScalarField& f, double p) {
  TraceRecord r;
  r.n = forest.leaf_count();
  r.global_error = cached_global_error(forest, p);
  std::size_t counted = 0, above = 0;
  double sum = 0.0;
  for (const auto& n : forest.nodes()) {
    if (!n.is_leaf()) continue;
    r.max_leaf_error = std::max(r.max_leaf_error, n.error);
    r.max_diameter = std::max(r.max_diameter, n.triangle.diameter());
    if (!f.has_hessian()) continue;
    const QuadForm h = f.hessian(n.triangle.barycenter());
    if (!h.is_positive_definite()) continue;
    const double s = sigma(h, n.triangle);
    ++counted;
    sum += s;
    r.sigma_max = std::max(r.sigma_max, s);
    if (s > 5.0) ++above;
  }
  if (counted == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.sigma_mean = r.sigma_max = r.sigma_fraction_above = nan;
  } else {
    r.sigma_mean = sum / static_cast<double>(counted);
    r.sigma_fraction_above = static_cast<double>(above) / static_cast<double>(counted);
  }
  return r;
}

GreedyRefiner::GreedyRefiner(ScalarField f, GreedyConfig config)
    : GreedyRefiner(std::move(f), config, initial_mesh(config.initial)) {}

GreedyRefiner::GreedyRefiner(ScalarField f, GreedyConfig config,
                             const std::vector<Triangle>& roots)
    : field_(std::move(f)), config_(config), forest_(roots) {
  config_.validate(roots.size());
  for (NodeId id : forest_.roots()) {
    forest_.set_error(id, leaf_error(forest_.node(id).triangle, field_, config_));
    push(id);
  }
  record();
}

void GreedyRefiner::push(NodeId id) { heap_.push({forest_.node(id).error, id}); }

NodeId GreedyRefiner::peek() {
  while (!heap_.empty() && !forest_.is_leaf(heap_.top().id)) heap_.pop();
  if (heap_.empty()) throw std::logic_error("no leaves to refine");
  return heap_.top().id;
}

NodeId GreedyRefiner::step() {
  const NodeId id = peek();
  check_capacity(forest_, config_.max_nodes);
  heap_.pop();
  const Triangle t = forest_.node(id).triangle;
  const auto [a, b] = forest_.split(id, select_edge(t, field_, config_));
  forest_.set_error(a, leaf_error(forest_.node(a).triangle, field_, config_));
  forest_.set_error(b, leaf_error(forest_.node(b).triangle, field_, config_));
  push(a);
  push(b);
  maybe_record();
  return id;
}

void GreedyRefiner::run_to_count(std::size_t n) {
  while (forest_.leaf_count() < n) step();
  if (trace_.back().n != forest_.leaf_count()) record();
}

void GreedyRefiner::run_to_threshold(double eta) {
  while (forest_.node(peek()).error > eta) step();
  if (trace_.back().n != forest_.leaf_count()) record();
}

void GreedyRefiner::run() {
  switch (config_.stop.kind) {
    case StopRule::Kind::target_count:
      run_to_count(config_.stop.count);
      break;
    case StopRule::Kind::error_threshold:
      run_to_threshold(config_.stop.eta);
      break;
    case StopRule::Kind::generation_levels:
      throw std::logic_error("generation levels are handled by uniform_refine");
  }
}

void GreedyRefiner::maybe_record() {
  const std::size_t n = forest_.leaf_count();
  if (n <= 1024 || std::has_single_bit(n)) record();
}

void GreedyRefiner::record() { trace_.push_back(make_trace_record(forest_, field_, config_.p)); }

GreedyResult greedy_run(const ScalarField& f, const GreedyConfig& config) {
  if (config.stop.kind == StopRule::Kind::generation_levels) {
    const auto roots = initial_mesh(config.initial);
    config.validate(roots.size());
    RefinementForest forest(roots);
    refresh_errors(forest, f, config.p, config.op);
    std::vector<TraceRecord> trace{make_trace_record(forest, f, config.p)};
    uniform_refine(forest, f, config, config.stop.levels);
    if (config.stop.levels > 0) trace.push_back(make_trace_record(forest, f, config.p));
    return {std::move(forest), std::move(trace)};
  }
  GreedyRefiner refiner(f, config);
  refiner.run();
  auto trace = refiner.trace();
  return {refiner.release_forest(), std::move(trace)};
}

}  // namespace aniso
