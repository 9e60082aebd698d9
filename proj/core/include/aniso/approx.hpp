#pragma once

// Local affine approximation on a single triangle and the resulting
// L^p errors and edge decision functions.

#include <array>
#include <limits>
#include <string>

#include "aniso/fields.hpp"
#include "aniso/geometry.hpp"
#include "aniso/quadrature.hpp"

namespace aniso {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// pi(x, y) = c0 + c1 x + c2 y.
struct AffinePoly {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;

  double operator()(Point p) const { return c0 + c1 * p.x + c2 * p.y; }

  /// The affine function taking values v[i] at the vertices of t.
  static AffinePoly from_vertex_values(const Triangle& t, const std::array<double, 3>& v);
};

enum class OperatorKind { interpolation, l2_projection };

std::string to_string(OperatorKind op);
OperatorKind parse_operator(const std::string& s);

/// Validates 1 <= p <= inf.
void require_exponent(double p);
/// 1/tau = 1/p + 1.
double tau_from_p(double p);

/// Affine approximant stored by its vertex values; evaluates in barycentric form.
struct LocalApproximant {
  Triangle triangle;
  std::array<double, 3> vertex_values;

  double at(const Barycentric& l) const {
    return l[0] * vertex_values[0] + l[1] * vertex_values[1] + l[2] * vertex_values[2];
  }
  AffinePoly poly() const { return AffinePoly::from_vertex_values(triangle, vertex_values); }
};

void require_non_flat(const Triangle& t);

LocalApproximant approximate(const Triangle& t, const ScalarField& f, OperatorKind op,
                             const QuadratureRule& rule = error_rule());

AffinePoly interpolate(const Triangle& t, const ScalarField& f);
AffinePoly project_l2(const Triangle& t, const ScalarField& f,
                      const QuadratureRule& rule = error_rule());

/// ||f - A_T f||_{L^p(T)}; p = kInfinity samples the nodes of `rule` plus an
/// order-16 barycentric lattice.
double local_error(const Triangle& t, const ScalarField& f, double p, OperatorKind op,
                   const QuadratureRule& rule = error_rule());

/// Closed-form ||q - I_T q||_{L^1(T)} for a quadratic with semidefinite form.
double local_error_quadratic_exact(const Triangle& t, const QuadraticField& q);

/// Sum of the L^1 interpolation errors on the two children of bisecting `edge`.
double decision_l1(const Triangle& t, const ScalarField& f, int edge);

/// Exact L^1 gain of bisecting `edge` for convex f:
/// |T|/3 * ((f(z0) + f(z1))/2 - f((z0 + z1)/2)).
double decision_gain_convex(const Triangle& t, const ScalarField& f, int edge);

/// ||f - I_T f||_{L^1(T)} - decision_l1, by quadrature.
double decision_gain_quadrature(const Triangle& t, const ScalarField& f, int edge);

/// e_{T1}^p + e_{T2}^p for the children of `edge` (max of the two for p = inf).
double decision_lp_split(const Triangle& t, const ScalarField& f, double p, OperatorKind op,
                         int edge);

}  // namespace aniso
