#include "aniso/geometry.hpp"

#include <algorithm>
#include <functional>

namespace aniso {

namespace {

int next(int i) { return (i + 1) % 3; }
int prev(int i) { return (i + 2) % 3; }

void require_edge_index(int i) {
  if (i < 0 || i > 2) throw GeometryError("edge index must be 0, 1 or 2");
}

void require_non_degenerate(const QuadForm& q) {
  if (q.is_degenerate()) throw GeometryError("degenerate quadratic form (det q = 0)");
}

void require_positive_definite(const QuadForm& q) {
  if (!q.is_positive_definite())
    throw GeometryError("quadratic form must be positive definite");
}

std::array<double, 3> q_values(const QuadForm& q, const Triangle& t) {
  return {q(t.edge(0)), q(t.edge(1)), q(t.edge(2))};
}

// b strictly exceeds a beyond the tie tolerance.
bool clearly_greater(double b, double a) {
  return b - a > kEdgeTieTol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

FormKind QuadForm::kind() const {
  const double s = scale();
  const double d = det();
  if (s == 0.0 || std::abs(d) < kDegenerateFormTol * s * s) return FormKind::degenerate;
  if (d < 0.0) return FormKind::mixed;
  return trace() > 0.0 ? FormKind::positive_definite : FormKind::negative_definite;
}

QuadForm QuadForm::from_matrix(const Mat2& m) {
  return {m.xx, 0.5 * (m.xy + m.yx), m.yy};
}

QuadForm QuadForm::composed(const Mat2& l) const {
  return from_matrix(l.transposed() * matrix() * l);
}

EigenDecomposition eigen(const QuadForm& q) {
  const double m = 0.5 * (q.a20 + q.a02);
  const double d = 0.5 * (q.a20 - q.a02);
  const double r = std::hypot(d, q.a11);
  EigenDecomposition e;
  e.values = {m + r, m - r};
  if (q.a11 == 0.0) {
    // Axis-aligned: keep exact unit vectors.
    if (q.a20 >= q.a02) {
      e.vectors = {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
    } else {
      e.vectors = {Vec2{0.0, 1.0}, Vec2{-1.0, 0.0}};
    }
    return e;
  }
  const double theta = 0.5 * std::atan2(2.0 * q.a11, q.a20 - q.a02);
  const Vec2 v0{std::cos(theta), std::sin(theta)};
  e.vectors = {v0, Vec2{-v0.y, v0.x}};
  return e;
}

Triangle::Triangle(Point z0, Point z1, Point z2) : z_{z0, z1, z2} {
  for (const auto& z : z_) {
    if (!std::isfinite(z.x) || !std::isfinite(z.y))
      throw GeometryError("triangle vertex is not finite");
  }
  if (!(area() > 0.0))
    throw GeometryError("triangle must have positive (counter-clockwise) area");
}

Triangle Triangle::oriented(Point z0, Point z1, Point z2) {
  if (cross(z1 - z0, z2 - z0) < 0.0) std::swap(z1, z2);
  return Triangle(z0, z1, z2);
}

Vec2 Triangle::edge(int i) const {
  require_edge_index(i);
  return vertex(prev(i)) - vertex(next(i));
}

std::pair<Point, Point> Triangle::edge_endpoints(int i) const {
  require_edge_index(i);
  return {vertex(next(i)), vertex(prev(i))};
}

double Triangle::diameter() const {
  return std::max({norm(edge(0)), norm(edge(1)), norm(edge(2))});
}

Triangle Triangle::mapped(const Mat2& l, Vec2 offset) const {
  return oriented(offset + l * z_[0], offset + l * z_[1], offset + l * z_[2]);
}

std::array<Vec2, 3> edges(const Triangle& t) { return {t.edge(0), t.edge(1), t.edge(2)}; }

double q_metric(const QuadForm& q, Vec2 v) {
  if (!q.is_definite()) throw GeometryError("metric undefined for indefinite form");
  return std::sqrt(std::abs(q(v)));
}

QuadForm q_abs(const QuadForm& q) {
  switch (q.kind()) {
    case FormKind::positive_definite: return q;
    case FormKind::negative_definite: return q * -1.0;
    default: break;
  }
  const auto e = eigen(q);
  QuadForm out;
  for (int k = 0; k < 2; ++k) {
    const double l = std::abs(e.values[k]);
    const Vec2 v = e.vectors[k];
    out.a20 += l * v.x * v.x;
    out.a11 += l * v.x * v.y;
    out.a02 += l * v.y * v.y;
  }
  return out;
}

CanonicalTransform canonical_transform(const QuadForm& q) {
  require_non_degenerate(q);
  const auto e = eigen(q);
  CanonicalTransform out;
  if (q.is_definite()) {
    // Symmetric |Q|^{-1/2}.
    Mat2 l{0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < 2; ++k) {
      const double s = 1.0 / std::sqrt(std::abs(e.values[k]));
      const Vec2 v = e.vectors[k];
      l.xx += s * v.x * v.x;
      l.xy += s * v.x * v.y;
      l.yx += s * v.y * v.x;
      l.yy += s * v.y * v.y;
    }
    out.l = l;
    out.sign = q.trace() > 0.0 ? 1 : -1;
    return out;
  }
  // values[0] > 0 > values[1]: columns v+ / sqrt(l+), v- / sqrt(|l-|).
  const double sp = 1.0 / std::sqrt(e.values[0]);
  const double sm = 1.0 / std::sqrt(-e.values[1]);
  out.l = {e.vectors[0].x * sp, e.vectors[1].x * sm, e.vectors[0].y * sp, e.vectors[1].y * sm};
  out.sign = 0;
  return out;
}

double rho(const QuadForm& q, const Triangle& t) {
  require_non_degenerate(q);
  const auto v = q_values(q, t);
  const double m = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
  return m / (t.area() * std::sqrt(std::abs(q.det())));
}

double sigma(const QuadForm& q, const Triangle& t) {
  require_positive_definite(q);
  auto v = q_values(q, t);
  std::sort(v.begin(), v.end());
  return (v[0] + v[1]) / (4.0 * t.area() * std::sqrt(q.det()));
}

std::array<int, 3> q_edge_order(const QuadForm& q, const Triangle& t) {
  if (!q.is_definite()) throw GeometryError("edge ordering needs a definite form");
  const auto raw = q_values(q, t);
  const std::array<double, 3> v{std::abs(raw[0]), std::abs(raw[1]), std::abs(raw[2])};
  int longest = 0;
  for (int i = 1; i < 3; ++i) {
    if (clearly_greater(v[i], v[longest])) longest = i;
  }
  int lo = next(longest), hi = prev(longest);
  if (lo > hi) std::swap(lo, hi);
  // On a tie the higher index plays the shortest edge.
  const int shortest = clearly_greater(v[hi], v[lo]) ? lo : hi;
  const int middle = shortest == lo ? hi : lo;
  return {longest, middle, shortest};
}

int q_longest_edge(const QuadForm& q, const Triangle& t) { return q_edge_order(q, t)[0]; }

std::pair<Triangle, Triangle> bisect(const Triangle& t, int edge_index) {
  require_edge_index(edge_index);
  const int i = edge_index;
  const Point zi = t.vertex(i);
  const Point zn = t.vertex(next(i));
  const Point zp = t.vertex(prev(i));
  const Point m = midpoint(zn, zp);
  return {Triangle::oriented(zi, zn, m), Triangle::oriented(zi, m, zp)};
}

int child_containing_edge(int edge_index, int j) {
  require_edge_index(edge_index);
  require_edge_index(j);
  if (j == edge_index) throw GeometryError("the bisected edge is split between both children");
  return j == prev(edge_index) ? 0 : 1;
}

Triangle psi(const QuadForm& q, const Triangle& t) {
  require_positive_definite(q);
  const auto order = q_edge_order(q, t);
  auto children = bisect(t, order[0]);
  return child_containing_edge(order[0], order[2]) == 0 ? children.first : children.second;
}

double delta(const QuadForm& q, const Triangle& t1, const Triangle& t2) {
  require_positive_definite(q);
  auto v1 = q_values(q, t1);
  auto v2 = q_values(q, t2);
  std::sort(v1.begin(), v1.end(), std::greater<>());
  std::sort(v2.begin(), v2.end(), std::greater<>());
  double d = 0.0;
  for (std::size_t k = 0; k < 3; ++k) d = std::max(d, std::abs(v1[k] - v2[k]));
  return d;
}

bool is_near_longest(const QuadForm& q, const Triangle& t, int edge_index, double d) {
  const auto v = q_values(q, t);
  const double m = std::max({v[0], v[1], v[2]});
  return v[static_cast<std::size_t>(edge_index)] >= (1.0 - d) * m;
}

}  // namespace aniso
