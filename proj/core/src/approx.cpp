#include "aniso/approx.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace aniso {

AffinePoly AffinePoly::from_vertex_values(const Triangle& t, const std::array<double, 3>& v) {
  const Vec2 e1 = t[1] - t[0];
  const Vec2 e2 = t[2] - t[0];
  const double d1 = v[1] - v[0];
  const double d2 = v[2] - v[0];
  const double det = cross(e1, e2);
  // Solve [e1; e2] g = [d1; d2].
  const double gx = (d1 * e2.y - d2 * e1.y) / det;
  const double gy = (e1.x * d2 - e2.x * d1) / det;
  return {v[0] - gx * t[0].x - gy * t[0].y, gx, gy};
}

std::string to_string(OperatorKind op) {
  return op == OperatorKind::interpolation ? "interpolation" : "l2-projection";
}

OperatorKind parse_operator(const std::string& s) {
  if (s == "interpolation" || s == "interp") return OperatorKind::interpolation;
  if (s == "l2-projection" || s == "l2" || s == "projection") return OperatorKind::l2_projection;
  throw std::invalid_argument("unknown operator '" + s + "'");
}

void require_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("exponent p must satisfy 1 <= p <= inf");
}

double tau_from_p(double p) {
  require_exponent(p);
  return 1.0 / (1.0 / p + 1.0);
}

void require_non_flat(const Triangle& t) {
  const double d = t.diameter();
  if (t.area() < kFlatTriangleTol * d * d) throw GeometryError("degenerate (flat) triangle");
}

namespace {

template <class F>
LocalApproximant approximate_with(const Triangle& t, F&& f, OperatorKind op,
                                  const QuadratureRule& rule) {
  require_non_flat(t);
  if (op == OperatorKind::interpolation) {
    return {t, {f(t[0]), f(t[1]), f(t[2])}};
  }
  // Barycentric basis: mass matrix |T|/12 (I + 11^T), inverse 12/|T| (I - 11^T/4).
  std::array<double, 3> load{};
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const auto& l = rule.nodes[k];
    const double fv = rule.weights[k] * f(t.at(l[0], l[1], l[2]));
    for (std::size_t i = 0; i < 3; ++i) load[i] += fv * l[i];
  }
  const double total = load[0] + load[1] + load[2];
  std::array<double, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) v[i] = 12.0 * (load[i] - 0.25 * total);
  return {t, v};
}

template <class F>
double local_error_with(const Triangle& t, F&& f, double p, OperatorKind op,
                        const QuadratureRule& rule) {
  const LocalApproximant a = approximate_with(t, f, op, rule);
  auto diff = [&](const Barycentric& l) {
    return std::abs(f(t.at(l[0], l[1], l[2])) - a.at(l));
  };
  if (std::isinf(p)) {
    double m = 0.0;
    if (&rule == &error_rule()) {
      for (const auto& l : sup_samples()) m = std::max(m, diff(l));
    } else {
      for (const auto& l : rule.nodes) m = std::max(m, diff(l));
      for (const auto& l : barycentric_lattice(16)) m = std::max(m, diff(l));
    }
    return m;
  }
  double s = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double d = diff(rule.nodes[k]);
    s += rule.weights[k] * (p == 1.0 ? d : p == 2.0 ? d * d : std::pow(d, p));
  }
  s *= t.area();
  return p == 1.0 ? s : p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p);
}

}  // namespace

LocalApproximant approximate(const Triangle& t, const ScalarField& f, OperatorKind op,
                             const QuadratureRule& rule) {
  return approximate_with(t, f, op, rule);
}

AffinePoly interpolate(const Triangle& t, const ScalarField& f) {
  return approximate(t, f, OperatorKind::interpolation).poly();
}

AffinePoly project_l2(const Triangle& t, const ScalarField& f, const QuadratureRule& rule) {
  if (rule.degree < 2) throw std::invalid_argument("projection needs a rule exact to degree 2");
  return approximate(t, f, OperatorKind::l2_projection, rule).poly();
}

double local_error(const Triangle& t, const ScalarField& f, double p, OperatorKind op,
                   const QuadratureRule& rule) {
  require_exponent(p);
  if (f.quadratic) {
    // Both operators reproduce affine functions, so only the homogeneous part
    // matters; centring it on the barycenter avoids cancellation.
    const QuadForm q = f.quadratic->form();
    if (q == QuadForm{0.0, 0.0, 0.0}) {
      require_non_flat(t);
      return 0.0;
    }
    const Point c = t.barycenter();
    return local_error_with(t, [&](Point x) { return q(x - c); }, p, op, rule);
  }
  return local_error_with(t, f, p, op, rule);
}

double local_error_quadratic_exact(const Triangle& t, const QuadraticField& q) {
  if (q.form().kind() == FormKind::mixed)
    throw GeometryError("indefinite quadratic: interpolation error changes sign");
  require_non_flat(t);
  const QuadForm form = q.form();
  const Point c = t.barycenter();
  auto h = [&](Point x) { return form(x - c); };
  const std::array<double, 3> v{h(t[0]), h(t[1]), h(t[2])};
  const auto& rule = edge_midpoint_rule();
  double s = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const auto& l = rule.nodes[k];
    const double interp = l[0] * v[0] + l[1] * v[1] + l[2] * v[2];
    s += rule.weights[k] * (interp - h(t.at(l[0], l[1], l[2])));
  }
  return std::abs(t.area() * s);
}

double decision_l1(const Triangle& t, const ScalarField& f, int edge) {
  const auto [c1, c2] = bisect(t, edge);
  return local_error(c1, f, 1.0, OperatorKind::interpolation) +
         local_error(c2, f, 1.0, OperatorKind::interpolation);
}

double decision_gain_convex(const Triangle& t, const ScalarField& f, int edge) {
  const auto [z0, z1] = t.edge_endpoints(edge);
  // For an explicit quadratic the midpoint gap is q(z1 - z0) / 4 exactly;
  // evaluating it from f values would cancel catastrophically.
  if (f.quadratic) return t.area() / 12.0 * f.quadratic->form()(z1 - z0);
  return t.area() / 3.0 * (0.5 * (f(z0) + f(z1)) - f(midpoint(z0, z1)));
}

double decision_gain_quadrature(const Triangle& t, const ScalarField& f, int edge) {
  return local_error(t, f, 1.0, OperatorKind::interpolation) - decision_l1(t, f, edge);
}

double decision_lp_split(const Triangle& t, const ScalarField& f, double p, OperatorKind op,
                         int edge) {
  require_exponent(p);
  const auto [c1, c2] = bisect(t, edge);
  const double e1 = local_error(c1, f, p, op);
  const double e2 = local_error(c2, f, p, op);
  if (std::isinf(p)) return std::max(e1, e2);
  return std::pow(e1, p) + std::pow(e2, p);
}

}  // namespace aniso
