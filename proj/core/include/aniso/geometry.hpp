#pragma once

// Triangles, quadratic forms and the shape measures built on them.
//
// Edge convention: edge i is opposite vertex z_i,
//   a = z2 - z1 (edge 0),  b = z0 - z2 (edge 1),  c = z1 - z0 (edge 2),
// so that a + b + c = 0.

#include <array>
#include <cmath>
#include <utility>

#include "aniso/error.hpp"

namespace aniso {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 u, Vec2 v) { return {u.x + v.x, u.y + v.y}; }
  friend constexpr Vec2 operator-(Vec2 u, Vec2 v) { return {u.x - v.x, u.y - v.y}; }
  friend constexpr Vec2 operator-(Vec2 u) { return {-u.x, -u.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend constexpr Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

using Point = Vec2;

constexpr double dot(Vec2 u, Vec2 v) { return u.x * v.x + u.y * v.y; }
constexpr double cross(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
constexpr Vec2 midpoint(Point p, Point q) { return 0.5 * (p + q); }

/// Row-major 2x2 matrix.
struct Mat2 {
  double xx = 1.0, xy = 0.0;
  double yx = 0.0, yy = 1.0;

  constexpr double det() const { return xx * yy - xy * yx; }
  constexpr Mat2 transposed() const { return {xx, yx, xy, yy}; }

  friend constexpr Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.xx * v.x + m.xy * v.y, m.yx * v.x + m.yy * v.y};
  }
  friend constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.xx * b.xx + a.xy * b.yx, a.xx * b.xy + a.xy * b.yy,
            a.yx * b.xx + a.yy * b.yx, a.yx * b.xy + a.yy * b.yy};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;

  static constexpr Mat2 identity() { return {}; }
  static constexpr Mat2 diag(double d0, double d1) { return {d0, 0.0, 0.0, d1}; }
};

enum class FormKind { positive_definite, negative_definite, mixed, degenerate };

/// Symmetric quadratic form q(x, y) = a20 x^2 + 2 a11 x y + a02 y^2.
struct QuadForm {
  double a20 = 0.0;
  double a11 = 0.0;
  double a02 = 0.0;

  constexpr double operator()(Vec2 v) const {
    return a20 * v.x * v.x + 2.0 * a11 * v.x * v.y + a02 * v.y * v.y;
  }
  /// a20 a02 - a11^2 with the products' rounding errors compensated (fma).
  double det() const {
    const double w = a11 * a11;
    const double e = std::fma(-a11, a11, w);
    return std::fma(a20, a02, -w) + e;
  }
  constexpr double trace() const { return a20 + a02; }
  /// Frobenius norm of the symmetric matrix; the scale for degeneracy tests.
  double scale() const { return std::sqrt(a20 * a20 + 2.0 * a11 * a11 + a02 * a02); }

  FormKind kind() const;
  bool is_degenerate() const { return kind() == FormKind::degenerate; }
  bool is_positive_definite() const { return kind() == FormKind::positive_definite; }
  bool is_definite() const {
    const auto k = kind();
    return k == FormKind::positive_definite || k == FormKind::negative_definite;
  }

  constexpr Mat2 matrix() const { return {a20, a11, a11, a02}; }
  static QuadForm from_matrix(const Mat2& m);

  /// The form u -> q(L u).
  QuadForm composed(const Mat2& l) const;

  constexpr QuadForm operator*(double s) const { return {s * a20, s * a11, s * a02}; }
  constexpr QuadForm operator+(const QuadForm& o) const {
    return {a20 + o.a20, a11 + o.a11, a02 + o.a02};
  }
  friend constexpr bool operator==(const QuadForm&, const QuadForm&) = default;

  static constexpr QuadForm identity() { return {1.0, 0.0, 1.0}; }
  static constexpr QuadForm diag(double d0, double d1) { return {d0, 0.0, d1}; }
};

/// |det q| below this multiple of scale^2 counts as degenerate.
inline constexpr double kDegenerateFormTol = 1e-14;
/// Two squared edge lengths within this relative gap are treated as tied.
inline constexpr double kEdgeTieTol = 1e-12;
/// Triangles with area below this multiple of diam^2 are rejected as flat.
inline constexpr double kFlatTriangleTol = 1e-14;

/// Symmetric eigen-decomposition of a form: q = sum_i lambda_i (v_i . u)^2.
struct EigenDecomposition {
  std::array<double, 2> values;   // descending
  std::array<Vec2, 2> vectors;    // orthonormal
};
EigenDecomposition eigen(const QuadForm& q);

class Triangle {
 public:
  /// Vertices must be counter-clockwise with positive area.
  Triangle(Point z0, Point z1, Point z2);

  /// Accepts either orientation and swaps z1/z2 if needed.
  static Triangle oriented(Point z0, Point z1, Point z2);

  const std::array<Point, 3>& vertices() const { return z_; }
  Point vertex(int i) const { return z_[static_cast<std::size_t>(i)]; }
  Point operator[](int i) const { return vertex(i); }

  /// Edge vector opposite vertex i.
  Vec2 edge(int i) const;
  double area() const { return 0.5 * cross(z_[1] - z_[0], z_[2] - z_[0]); }
  double diameter() const;
  Point barycenter() const { return (1.0 / 3.0) * (z_[0] + z_[1] + z_[2]); }

  /// Barycentric combination l0 z0 + l1 z1 + l2 z2.
  Point at(double l0, double l1, double l2) const {
    return l0 * z_[0] + l1 * z_[1] + l2 * z_[2];
  }

  /// Image under x -> offset + L x (re-oriented if L flips orientation).
  Triangle mapped(const Mat2& l, Vec2 offset = {}) const;

  /// Endpoints of edge i, in the order (z_{i+1}, z_{i+2}).
  std::pair<Point, Point> edge_endpoints(int i) const;

  friend bool operator==(const Triangle&, const Triangle&) = default;

 private:
  std::array<Point, 3> z_;
};

std::array<Vec2, 3> edges(const Triangle& t);

double q_metric(const QuadForm& q, Vec2 v);
QuadForm q_abs(const QuadForm& q);

struct CanonicalTransform {
  Mat2 l;
  int sign = 1;  // +1 / -1 for definite forms, 0 for mixed (target diag(1,-1))
};
/// L with L^T Q L = sign * I (definite) or diag(1, -1) (mixed).
CanonicalTransform canonical_transform(const QuadForm& q);

/// max |q(e)| / (|T| sqrt|det q|).
double rho(const QuadForm& q, const Triangle& t);
/// Sum of the two smallest q(e) over 4 |T| sqrt(det q); q positive definite.
double sigma(const QuadForm& q, const Triangle& t);

/// Edge indices sorted by decreasing q-length. Near-ties keep the lower index
/// first, so the last entry is the higher index among tied shortest edges.
std::array<int, 3> q_edge_order(const QuadForm& q, const Triangle& t);
int q_longest_edge(const QuadForm& q, const Triangle& t);

/// Children of the bisection from the midpoint of edge i to vertex z_i:
/// (z_i, z_{i+1}, m) and (z_i, m, z_{i+2}). Both stay counter-clockwise.
std::pair<Triangle, Triangle> bisect(const Triangle& t, int edge_index);

/// Index (0 or 1) of the child from bisect(t, edge_index) containing edge j != edge_index.
int child_containing_edge(int edge_index, int j);

/// Child of the q-longest-edge bisection holding the q-shortest edge.
Triangle psi(const QuadForm& q, const Triangle& t);

/// Max difference of rank-matched sorted q(e) values.
double delta(const QuadForm& q, const Triangle& t1, const Triangle& t2);

/// True when bisecting edge e is a delta-near q-longest edge bisection:
/// q(e) >= (1 - d) max q.
bool is_near_longest(const QuadForm& q, const Triangle& t, int edge_index, double d);

}  // namespace aniso
