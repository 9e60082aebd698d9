#include "aniso/quadrature.hpp"

namespace aniso {

namespace {

void add_orbit_1(QuadratureRule& r, double w) {
  r.nodes.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  r.weights.push_back(w);
}

void add_orbit_3(QuadratureRule& r, double w, double a, double b) {
  r.nodes.push_back({a, b, b});
  r.nodes.push_back({b, a, b});
  r.nodes.push_back({b, b, a});
  r.weights.insert(r.weights.end(), 3, w);
}

void add_orbit_6(QuadratureRule& r, double w, double a, double b, double c) {
  r.nodes.push_back({a, b, c});
  r.nodes.push_back({a, c, b});
  r.nodes.push_back({b, a, c});
  r.nodes.push_back({b, c, a});
  r.nodes.push_back({c, a, b});
  r.nodes.push_back({c, b, a});
  r.weights.insert(r.weights.end(), 6, w);
}

QuadratureRule make_degree8() {
  // Dunavant (1985), degree 8, 16 points.
  QuadratureRule r;
  r.degree = 8;
  add_orbit_1(r, 0.144315607677787);
  add_orbit_3(r, 0.095091634267285, 0.081414823414554, 0.459292588292723);
  add_orbit_3(r, 0.103217370534718, 0.658861384496480, 0.170569307751760);
  add_orbit_3(r, 0.032458497623198, 0.898905543365938, 0.050547228317031);
  add_orbit_6(r, 0.027230314174435, 0.008394777409958, 0.263112829634638,
              0.728492392955404);
  return r;
}

QuadratureRule make_midpoint() {
  QuadratureRule r;
  r.degree = 2;
  r.nodes = {{0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}, {0.5, 0.5, 0.0}};
  r.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return r;
}

}  // namespace

const QuadratureRule& symmetric_degree8() {
  static const QuadratureRule rule = make_degree8();
  return rule;
}

const QuadratureRule& edge_midpoint_rule() {
  static const QuadratureRule rule = make_midpoint();
  return rule;
}

QuadratureRule split4(const QuadratureRule& rule) {
  // Sub-triangles in barycentric coordinates of the parent.
  const Barycentric e0{1, 0, 0}, e1{0, 1, 0}, e2{0, 0, 1};
  const Barycentric m0{0, 0.5, 0.5}, m1{0.5, 0, 0.5}, m2{0.5, 0.5, 0};
  const std::array<std::array<Barycentric, 3>, 4> subs{{
      {e0, m2, m1}, {m2, e1, m0}, {m1, m0, e2}, {m0, m1, m2}}};
  QuadratureRule out;
  out.degree = rule.degree;
  for (const auto& s : subs) {
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const auto& l = rule.nodes[k];
      Barycentric p{};
      for (std::size_t c = 0; c < 3; ++c) {
        p[c] = l[0] * s[0][c] + l[1] * s[1][c] + l[2] * s[2][c];
      }
      out.nodes.push_back(p);
      out.weights.push_back(0.25 * rule.weights[k]);
    }
  }
  return out;
}

const QuadratureRule& error_rule() {
  static const QuadratureRule rule = split4(symmetric_degree8());
  return rule;
}

std::vector<Barycentric> barycentric_lattice(int order) {
  std::vector<Barycentric> out;
  const double n = order;
  for (int i = 0; i <= order; ++i) {
    for (int j = 0; j + i <= order; ++j) {
      const int k = order - i - j;
      out.push_back({i / n, j / n, k / n});
    }
  }
  return out;
}

const std::vector<Barycentric>& sup_samples() {
  static const std::vector<Barycentric> samples = [] {
    auto s = error_rule().nodes;
    const auto lattice = barycentric_lattice(16);
    s.insert(s.end(), lattice.begin(), lattice.end());
    return s;
  }();
  return samples;
}

}  // namespace aniso
