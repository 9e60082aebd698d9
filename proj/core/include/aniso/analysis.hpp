#pragma once

// Empirical checks of the shape-decay and convergence behaviour of greedy
// refinement: sigma statistics, hessian tau-norms, N * error traces.

#include <array>
#include <cstdint>
#include <vector>

#include "aniso/fields.hpp"
#include "aniso/greedy.hpp"

namespace aniso {

/// Threshold above which a triangle counts as badly shaped.
inline constexpr double kSigmaThreshold = 5.0;
/// Contraction factor of the best of 8 grandchildren.
inline constexpr double kSigmaContraction = 0.69;
/// Constant of the delta-near perturbation bound (61/4).
inline constexpr double kPerturbationConstant = 61.0 / 4.0;

/// r0 = ln 2 / (ln 4 - ln 3).
double r0();
/// gamma(r, mu) = ((0.69 (1 + C2 mu))^r + 7 (1 + C2 mu)^r) / 8.
double gamma_factor(double r, double mu = 0.0);
/// sigma0^r gamma^n + M^r / (8 (1 - gamma)) with M = threshold (1 + C2 mu).
double sigma_power_bound(double sigma0, double r, int n, double mu = 0.0,
                         double threshold = kSigmaThreshold);

struct SigmaStats {
  int level = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double max = 0.0;
  double fraction_above = 0.0;
  double mean_pow_r0 = 0.0;  // average of sigma^r0
  double bound = 0.0;        // sigma_power_bound at this level
};

SigmaStats sigma_stats(const QuadForm& q, const std::vector<Triangle>& leaves,
                       double threshold = kSigmaThreshold);

/// Uniform refinement, 3 generations per reported level; stats for levels 0..n.
std::vector<SigmaStats> sigma_study(const QuadForm& q, const std::vector<Triangle>& roots,
                                    int levels, double threshold = kSigmaThreshold,
                                    std::size_t max_nodes = kDefaultMaxNodes);

/// (int_Omega |det d^2 f|^{tau/2})^{1/tau} over a uniform background mesh of
/// the given depth (euclidean longest-edge bisection of each root); cells where
/// det d^2 f changes sign are refined further.
double hessian_tau_norm(const ScalarField& f, const std::vector<Triangle>& roots, double tau,
                        int depth = 8);

struct ConvergencePoint {
  std::size_t n = 0;
  double error = 0.0;
  double product = 0.0;  // n * error
  double target = 0.0;   // || sqrt|det d^2 f| ||_{L^tau(Omega)}
  double ratio = 0.0;    // product / target (0 when the product vanishes)
  double max_diameter = 0.0;
};

std::vector<ConvergencePoint> convergence_study(const ScalarField& f, const GreedyConfig& config,
                                                const std::vector<std::size_t>& checkpoints);

struct EquivalenceBracket {
  std::array<double, 3> exponents{1.0, 2.0, kInfinity};
  std::array<double, 3> lower{};
  std::array<double, 3> upper{};
  double overall_lower = 0.0;
  double overall_upper = 0.0;
};

/// e_T(q)_p / (sigma_q(T) sqrt(det q) |T|^{1/tau}) for a single pair.
double equivalence_ratio(const QuadForm& q, const Triangle& t, double p, OperatorKind op);

/// Min/max of equivalence_ratio over random PD forms and triangles.
EquivalenceBracket equivalence_constant_probe(std::size_t samples, std::uint64_t seed,
                                              OperatorKind op = OperatorKind::interpolation);

struct NearBisectionCheck {
  QuadForm form;       // hessian at the barycenter
  double mu = 0.0;     // lambda_max / lambda_min - 1 of H(x) relative to the form
  int edge = -1;       // engine's choice
  bool near_longest = false;  // (1 + mu) q(e) >= max q
};

/// Measures hessian oscillation over t (sampled) and checks the engine's edge.
NearBisectionCheck check_near_bisection(const ScalarField& f, const Triangle& t,
                                        const GreedyConfig& config);

}  // namespace aniso
