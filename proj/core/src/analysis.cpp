#include "aniso/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aniso/sampling.hpp"

namespace aniso {

double r0() { return std::numbers::ln2 / (std::log(4.0) - std::log(3.0)); }

double gamma_factor(double r, double mu) {
  const double v = 1.0 + kPerturbationConstant * mu;
  return (std::pow(kSigmaContraction * v, r) + 7.0 * std::pow(v, r)) / 8.0;
}

double sigma_power_bound(double sigma0, double r, int n, double mu, double threshold) {
  const double g = gamma_factor(r, mu);
  const double m = threshold * (1.0 + kPerturbationConstant * mu);
  return std::pow(sigma0, r) * std::pow(g, n) + std::pow(m, r) / (8.0 * (1.0 - g));
}

SigmaStats sigma_stats(const QuadForm& q, const std::vector<Triangle>& leaves, double threshold) {
  SigmaStats s;
  s.count = leaves.size();
  if (leaves.empty()) return s;
  const double r = r0();
  std::size_t above = 0;
  double sum = 0.0, sum_r = 0.0;
  for (const auto& t : leaves) {
    const double v = sigma(q, t);
    sum += v;
    sum_r += std::pow(v, r);
    s.max = std::max(s.max, v);
    if (v > threshold) ++above;
  }
  const double n = static_cast<double>(leaves.size());
  s.mean = sum / n;
  s.mean_pow_r0 = sum_r / n;
  s.fraction_above = static_cast<double>(above) / n;
  return s;
}

std::vector<SigmaStats> sigma_study(const QuadForm& q, const std::vector<Triangle>& roots,
                                    int levels, double threshold, std::size_t max_nodes) {
  if (!q.is_positive_definite()) throw GeometryError("sigma study needs a positive definite form");
  if (levels < 0) throw std::invalid_argument("levels must be >= 0");
  const ScalarField f = QuadraticField(q).to_field();
  GreedyConfig config;
  config.decision = DecisionKind::l1_interpolation;
  config.max_nodes = max_nodes;
  config.p = 1.0;

  RefinementForest forest(roots);
  double sigma0 = 0.0;
  for (const auto& t : roots) sigma0 = std::max(sigma0, sigma(q, t));

  std::vector<SigmaStats> out;
  for (int level = 0; level <= levels; ++level) {
    if (level > 0) uniform_refine(forest, f, config, 3);
    SigmaStats s = sigma_stats(q, forest.leaf_triangles(), threshold);
    s.level = level;
    s.bound = sigma_power_bound(sigma0, r0(), level, 0.0, threshold);
    out.push_back(s);
  }
  return out;
}

namespace {

// Extra bisection levels spent on cells where det d^2 f changes sign; the
// integrand |det|^{tau/2} has a kink there and the rule loses its order.
constexpr int kSignChangeLevels = 20;

double tau_integral(const ScalarField& f, const Triangle& t, double tau, int extra) {
  const auto& rule = symmetric_degree8();
  bool pos = false, neg = false;
  double acc = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const auto& l = rule.nodes[k];
    const double det = f.hessian(t.at(l[0], l[1], l[2])).det();
    pos |= det > 0.0;
    neg |= det < 0.0;
    acc += rule.weights[k] * std::pow(std::abs(det), 0.5 * tau);
  }
  for (int i = 0; i < 3 && !(pos && neg); ++i) {
    const double det = f.hessian(t[i]).det();
    pos |= det > 0.0;
    neg |= det < 0.0;
  }
  if (pos && neg && extra > 0) {
    const auto [a, b] = bisect(t, q_longest_edge(QuadForm::identity(), t));
    return tau_integral(f, a, tau, extra - 1) + tau_integral(f, b, tau, extra - 1);
  }
  return t.area() * acc;
}

}  // namespace

double hessian_tau_norm(const ScalarField& f, const std::vector<Triangle>& roots, double tau,
                        int depth) {
  if (!f.has_hessian()) throw std::invalid_argument("field '" + f.label + "' has no analytic hessian");
  if (!(tau >= 0.5 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [1/2, 1]");
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  std::vector<Triangle> mesh = roots;
  const QuadForm euclid = QuadForm::identity();
  for (int d = 0; d < depth; ++d) {
    std::vector<Triangle> next;
    next.reserve(2 * mesh.size());
    for (const auto& t : mesh) {
      const auto [a, b] = bisect(t, q_longest_edge(euclid, t));
      next.push_back(a);
      next.push_back(b);
    }
    mesh = std::move(next);
  }
  double acc = 0.0;
  for (const auto& t : mesh) acc += tau_integral(f, t, tau, kSignChangeLevels);
  return std::pow(acc, 1.0 / tau);
}

std::vector<ConvergencePoint> convergence_study(const ScalarField& f, const GreedyConfig& config,
                                                const std::vector<std::size_t>& checkpoints) {
  if (!f.is_convex())
    throw std::invalid_argument("convergence study needs a convex-tagged field");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
    throw std::invalid_argument("checkpoints must be increasing");
  const auto roots = initial_mesh(config.initial);
  const double target = hessian_tau_norm(f, roots, tau_from_p(config.p));
  GreedyConfig c = config;
  c.stop = StopRule::target(checkpoints.empty() ? roots.size() : checkpoints.back());
  GreedyRefiner refiner(f, c, roots);
  std::vector<ConvergencePoint> out;
  for (std::size_t n : checkpoints) {
    refiner.run_to_count(n);
    ConvergencePoint pt;
    pt.n = refiner.forest().leaf_count();
    pt.error = refiner.global_error();
    pt.product = static_cast<double>(pt.n) * pt.error;
    pt.target = target;
    pt.ratio = pt.product == 0.0 ? 0.0 : pt.product / target;
    for (const auto& t : refiner.forest().leaf_triangles())
      pt.max_diameter = std::max(pt.max_diameter, t.diameter());
    out.push_back(pt);
  }
  return out;
}

double equivalence_ratio(const QuadForm& q, const Triangle& t, double p, OperatorKind op) {
  const ScalarField f = QuadraticField(q).to_field();
  const double e = local_error(t, f, p, op);
  const double tau = tau_from_p(p);
  return e / (sigma(q, t) * std::sqrt(q.det()) * std::pow(t.area(), 1.0 / tau));
}

EquivalenceBracket equivalence_constant_probe(std::size_t samples, std::uint64_t seed,
                                              OperatorKind op) {
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  Sampler rng(seed);
  EquivalenceBracket b;
  b.lower.fill(kInfinity);
  b.upper.fill(0.0);
  for (std::size_t s = 0; s < samples; ++s) {
    const QuadForm q = rng.pd_form();
    const Triangle t = rng.triangle();
    for (std::size_t k = 0; k < 3; ++k) {
      const double r = equivalence_ratio(q, t, b.exponents[k], op);
      b.lower[k] = std::min(b.lower[k], r);
      b.upper[k] = std::max(b.upper[k], r);
    }
  }
  b.overall_lower = *std::min_element(b.lower.begin(), b.lower.end());
  b.overall_upper = *std::max_element(b.upper.begin(), b.upper.end());
  return b;
}

NearBisectionCheck check_near_bisection(const ScalarField& f, const Triangle& t,
                                        const GreedyConfig& config) {
  if (!f.has_hessian()) throw std::invalid_argument("field has no analytic hessian");
  NearBisectionCheck out;
  out.form = f.hessian(t.barycenter());
  if (!out.form.is_positive_definite()) throw GeometryError("hessian not positive definite");
  const Mat2 l = canonical_transform(out.form).l;
  double lo = kInfinity, hi = 0.0;
  for (const auto& b : barycentric_lattice(32)) {
    const auto ev = eigen(f.hessian(t.at(b[0], b[1], b[2])).composed(l)).values;
    hi = std::max(hi, ev[0]);
    lo = std::min(lo, ev[1]);
  }
  if (!(lo > 0.0)) throw GeometryError("hessian not positive definite on the triangle");
  out.mu = hi / lo - 1.0;
  out.edge = select_edge(t, f, config);
  std::array<double, 3> v{};
  for (int e = 0; e < 3; ++e) v[static_cast<std::size_t>(e)] = out.form(t.edge(e));
  const double m = std::max({v[0], v[1], v[2]});
  out.near_longest = (1.0 + out.mu) * v[static_cast<std::size_t>(out.edge)] >= m;
  return out;
}

}  // namespace aniso
