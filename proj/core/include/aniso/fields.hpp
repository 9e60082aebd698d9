#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aniso/geometry.hpp"

namespace aniso {

/// Symmetric 2x2 matrix, stored like a QuadForm (a20, a11, a02) = (fxx, fxy, fyy).
using Hessian = QuadForm;

enum class Convexity { strictly_convex, convex, general };

struct ScalarField;

/// q(x,y) = a20 x^2 + 2 a11 xy + a02 y^2 + a10 x + a01 y + a00.
struct QuadraticField {
  double a20 = 0.0, a11 = 0.0, a02 = 0.0;
  double a10 = 0.0, a01 = 0.0, a00 = 0.0;

  QuadraticField() = default;
  QuadraticField(const QuadForm& form, double b10 = 0.0, double b01 = 0.0, double b00 = 0.0)
      : a20(form.a20), a11(form.a11), a02(form.a02), a10(b10), a01(b01), a00(b00) {}

  QuadForm form() const { return {a20, a11, a02}; }
  double operator()(Point p) const {
    return form()(p) + a10 * p.x + a01 * p.y + a00;
  }
  /// d^2 q = 2 Q.
  Hessian hessian() const { return form() * 2.0; }

  ScalarField to_field(std::string label = "quadratic") const;
};

/// A target function on R^2. Immutable; evaluation is pure.
struct ScalarField {
  std::string label;
  std::function<double(Point)> eval;
  std::function<Hessian(Point)> hessian;  // empty when no analytic hessian
  Convexity convexity = Convexity::general;
  double convexity_modulus = 0.0;  // m with d^2 f >= m I when strictly convex
  std::optional<QuadraticField> quadratic;  // set when f is an explicit quadratic

  double operator()(Point p) const { return eval(p); }
  bool has_hessian() const { return static_cast<bool>(hessian); }
  bool is_convex() const { return convexity != Convexity::general; }
};

/// Named test functions: disk, aniso-{2,10,100}, expbump, mixed-saddle,
/// gauss-ridge, affine.
std::vector<ScalarField> builtin_catalog();
std::optional<ScalarField> find_field(const std::string& label);
std::vector<std::string> catalog_labels();

/// Central second differences with step h.
Hessian hessian_fd(const ScalarField& f, Point x, double h);

}  // namespace aniso
