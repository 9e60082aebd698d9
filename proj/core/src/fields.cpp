#include "aniso/fields.hpp"

#include <algorithm>
#include <cmath>

namespace aniso {

ScalarField QuadraticField::to_field(std::string label) const {
  const QuadraticField q = *this;
  ScalarField f;
  f.label = std::move(label);
  f.quadratic = q;
  f.eval = [q](Point p) { return q(p); };
  const Hessian h = q.hessian();
  f.hessian = [h](Point) { return h; };
  switch (q.form().kind()) {
    case FormKind::positive_definite:
      f.convexity = Convexity::strictly_convex;
      f.convexity_modulus = eigen(h).values[1];
      break;
    case FormKind::degenerate:
      // Zero or rank-one form: convex exactly when the trace is non-negative.
      f.convexity = q.form().trace() >= 0.0 ? Convexity::convex : Convexity::general;
      break;
    default:
      f.convexity = Convexity::general;
      break;
  }
  return f;
}

namespace {

ScalarField aniso_k(double k) {
  auto f = QuadraticField(QuadForm::diag(1.0, k)).to_field();
  f.label = "aniso-" + std::to_string(static_cast<int>(k));
  return f;
}

ScalarField expbump() {
  ScalarField f;
  f.label = "expbump";
  f.eval = [](Point p) { return std::exp(p.x * p.x + 2.0 * p.y * p.y); };
  f.hessian = [](Point p) {
    const double e = std::exp(p.x * p.x + 2.0 * p.y * p.y);
    return Hessian{e * (2.0 + 4.0 * p.x * p.x), e * 8.0 * p.x * p.y,
                   e * (4.0 + 16.0 * p.y * p.y)};
  };
  // d^2 f = e^u (diag(2,4) + g g^T) with u >= 0, so d^2 f >= 2 I.
  f.convexity = Convexity::strictly_convex;
  f.convexity_modulus = 2.0;
  return f;
}

ScalarField gauss_ridge() {
  ScalarField f;
  f.label = "gauss-ridge";
  f.eval = [](Point p) {
    const double s = p.x - p.y;
    return std::exp(-s * s) + p.x * p.x + p.y * p.y;
  };
  f.hessian = [](Point p) {
    const double s = p.x - p.y;
    const double g2 = (4.0 * s * s - 2.0) * std::exp(-s * s);
    return Hessian{2.0 + g2, -g2, 2.0 + g2};
  };
  // Smallest eigenvalue 2 + 2 g'' reaches -2 on the ridge x = y.
  f.convexity = Convexity::general;
  return f;
}

ScalarField affine() {
  return QuadraticField(QuadForm{}, 2.0, -3.0, 1.0).to_field("affine");
}

}  // namespace

std::vector<ScalarField> builtin_catalog() {
  std::vector<ScalarField> out;
  out.push_back(QuadraticField(QuadForm::identity()).to_field("disk"));
  for (double k : {2.0, 10.0, 100.0}) out.push_back(aniso_k(k));
  out.push_back(expbump());
  out.push_back(QuadraticField(QuadForm::diag(1.0, -1.0)).to_field("mixed-saddle"));
  out.push_back(gauss_ridge());
  out.push_back(affine());
  return out;
}

std::optional<ScalarField> find_field(const std::string& label) {
  for (auto& f : builtin_catalog()) {
    if (f.label == label) return f;
  }
  return std::nullopt;
}

std::vector<std::string> catalog_labels() {
  std::vector<std::string> out;
  for (const auto& f : builtin_catalog()) out.push_back(f.label);
  return out;
}

Hessian hessian_fd(const ScalarField& f, Point x, double h) {
  const double f0 = f(x);
  const double fxx = (f({x.x + h, x.y}) - 2.0 * f0 + f({x.x - h, x.y})) / (h * h);
  const double fyy = (f({x.x, x.y + h}) - 2.0 * f0 + f({x.x, x.y - h})) / (h * h);
  const double fxy = (f({x.x + h, x.y + h}) - f({x.x + h, x.y - h}) -
                      f({x.x - h, x.y + h}) + f({x.x - h, x.y - h})) /
                     (4.0 * h * h);
  return {fxx, fxy, fyy};
}

}  // namespace aniso
