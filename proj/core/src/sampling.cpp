#include "aniso/sampling.hpp"

#include <cmath>
#include <numbers>

namespace aniso {

Mat2 rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c, -s, s, c};
}

Triangle Sampler::triangle() {
  for (;;) {
    Point z[3];
    for (auto& p : z) p = {uniform(0.0, 1.0), uniform(0.0, 1.0)};
    const double a = 0.5 * std::abs(cross(z[1] - z[0], z[2] - z[0]));
    if (a < 0.01) continue;
    const Triangle t = Triangle::oriented(z[0], z[1], z[2]);
    if (rho(QuadForm::identity(), t) > 100.0) continue;
    return t;
  }
}

QuadForm Sampler::pd_form() {
  const double theta = uniform(0.0, std::numbers::pi);
  const double l0 = std::pow(10.0, uniform(-3.0, 3.0));
  const double l1 = std::pow(10.0, uniform(-3.0, 3.0));
  const Mat2 r = rotation(theta);
  return QuadForm::diag(l0, l1).composed(r.transposed());
}

Mat2 Sampler::linear_map() {
  for (;;) {
    const Mat2 m{uniform(-2.0, 2.0), uniform(-2.0, 2.0), uniform(-2.0, 2.0), uniform(-2.0, 2.0)};
    if (std::abs(m.det()) > 0.1) return m;
  }
}

}  // namespace aniso
