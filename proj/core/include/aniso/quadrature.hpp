#pragma once

#include <array>
#include <span>
#include <vector>

#include "aniso/geometry.hpp"

namespace aniso {

using Barycentric = std::array<double, 3>;

/// Rule on the reference triangle; weights sum to 1 and are scaled by |T|.
struct QuadratureRule {
  std::vector<Barycentric> nodes;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(const Triangle& t, F&& fn) const {
    double s = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const auto& l = nodes[k];
      s += weights[k] * fn(t.at(l[0], l[1], l[2]));
    }
    return t.area() * s;
  }
};

/// 16-point symmetric rule exact to degree 8.
const QuadratureRule& symmetric_degree8();
/// Edge-midpoint rule, exact to degree 2.
const QuadratureRule& edge_midpoint_rule();
/// Each node set replicated on the 4 congruent midpoint subtriangles.
QuadratureRule split4(const QuadratureRule& rule);
/// split4(symmetric_degree8()), shared.
const QuadratureRule& error_rule();

/// Barycentric lattice {(i, j, k) / n : i + j + k = n}.
std::vector<Barycentric> barycentric_lattice(int order);
/// Quadrature nodes of error_rule() plus the order-16 lattice; the p = inf sample set.
const std::vector<Barycentric>& sup_samples();

}  // namespace aniso
