// Acceptance checks: one PASS/FAIL line per criterion.
//
//   aniso_acceptance [--cli PATH] [criterion ...]
//
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "aniso/analysis.hpp"
#include "aniso/approx.hpp"
#include "aniso/greedy.hpp"
#include "aniso/quadrature.hpp"
#include "aniso/sampling.hpp"

#ifndef ANISO_CLI_PATH
#define ANISO_CLI_PATH "aniso"
#endif

using namespace aniso;
namespace fs = std::filesystem;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> check;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::array<double, 3> edge_q(const QuadForm& q, const Triangle& t) {
  return {q(t.edge(0)), q(t.edge(1)), q(t.edge(2))};
}

Outcome longest_edge_rule() {
  Sampler s(20240601);
  int compared = 0, skipped = 0, mismatches = 0, engine_mismatches = 0;
  GreedyConfig config;
  for (int k = 0; k < 1000; ++k) {
    const QuadForm q = s.pd_form();
    const Triangle t = s.triangle();
    const ScalarField f = QuadraticField(q).to_field();
    auto qe = edge_q(q, t);
    std::array<double, 3> sorted = qe;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (sorted[0] - sorted[1] <= 1e-6 * sorted[0]) {
      ++skipped;
      continue;
    }
    ++compared;
    const int longest = static_cast<int>(std::max_element(qe.begin(), qe.end()) - qe.begin());
    std::array<double, 3> d{};
    for (int e = 0; e < 3; ++e) d[e] = decision_l1(t, f, e);
    const int best = static_cast<int>(std::min_element(d.begin(), d.end()) - d.begin());
    mismatches += best != longest;
    engine_mismatches += select_edge(t, f, config) != longest;
  }
  return {mismatches == 0 && engine_mismatches == 0,
          std::to_string(compared) + " compared, " + std::to_string(skipped) + " near-ties skipped, " +
              std::to_string(mismatches) + " argmin mismatches, " +
              std::to_string(engine_mismatches) + " engine mismatches"};
}

Outcome exact_gain() {
  Sampler s(20240602);
  double worst_closed = 0.0, worst_quad = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const QuadForm q = s.pd_form();
    const Triangle t = s.triangle();
    const ScalarField f = QuadraticField(q).to_field();
    for (int e = 0; e < 3; ++e) {
      const double closed = t.area() * q(t.edge(e)) / 12.0;
      worst_closed = std::max(worst_closed, std::abs(decision_gain_convex(t, f, e) - closed) / closed);
      worst_quad = std::max(worst_quad, rel(decision_gain_quadrature(t, f, e), closed));
    }
  }
  return {worst_closed <= 1e-10 && worst_quad <= 1e-6,
          "max rel deviation: midpoint gap " + fmt(worst_closed) + " (<= 1e-10), child quadrature " +
              fmt(worst_quad) + " (<= 1e-6)"};
}

std::vector<Triangle> longest_edge_generations(const QuadForm& q, const Triangle& t, int n) {
  std::vector<Triangle> cur{t};
  for (int g = 0; g < n; ++g) {
    std::vector<Triangle> next;
    for (const auto& x : cur) {
      auto [a, b] = bisect(x, q_longest_edge(q, x));
      next.push_back(a);
      next.push_back(b);
    }
    cur = std::move(next);
  }
  return cur;
}

Outcome sigma_monotone() {
  Sampler s(20240603);
  int child_violations = 0, bound_violations = 0, disjunction_violations = 0;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const QuadForm q = s.pd_form();
    const Triangle t = s.triangle();
    const double st = sigma(q, t);
    for (const auto& c : longest_edge_generations(q, t, 1))
      child_violations += sigma(q, c) > st * (1 + 1e-12);
    bool some = false;
    for (const auto& c : longest_edge_generations(q, t, 3)) {
      const double sc = sigma(q, c);
      worst = std::max(worst, sc / st);
      bound_violations += sc > st * (1 + 1e-12);
      some |= sc <= kSigmaContraction * st || sc <= kSigmaThreshold;
    }
    disjunction_violations += !some;
  }
  return {child_violations + bound_violations + disjunction_violations == 0,
          "1000 samples: child increases " + std::to_string(child_violations) +
              ", 8-descendant bound " + std::to_string(bound_violations) + ", disjunction " +
              std::to_string(disjunction_violations) + " (max descendant/parent sigma " +
              fmt(worst) + ")"};
}

Outcome psi_inequalities() {
  Sampler s(20240604);
  int v58 = 0, vrho = 0, vthird = 0, third_active = 0;
  double worst58 = 0.0, worstrho = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const QuadForm q = s.pd_form();
    const Triangle t = s.triangle();
    const Triangle c = psi(q, t);
    const double r = rho(q, t);
    const double bound58 = 0.625 * r;
    const double boundrho = r / 2 * (1 + 16 / (r * r));
    worst58 = std::max(worst58, sigma(q, c) / bound58);
    worstrho = std::max(worstrho, rho(q, c) / boundrho);
    v58 += sigma(q, c) > bound58 * (1 + 1e-10);
    vrho += rho(q, c) > boundrho * (1 + 1e-10);
    const double s3 = sigma(q, psi(q, psi(q, c)));
    if (s3 >= kSigmaThreshold) {
      ++third_active;
      vthird += s3 > kSigmaContraction * sigma(q, t);
    }
  }
  return {v58 + vrho + vthird == 0,
          "violations 5/8 rule " + std::to_string(v58) + " (max ratio " + fmt(worst58) +
              "), rho decay " + std::to_string(vrho) + " (max ratio " + fmt(worstrho) +
              "), third iterate " + std::to_string(vthird) + " of " + std::to_string(third_active) +
              " active"};
}

Outcome degeneracy_washout() {
  const QuadForm q = QuadForm::diag(1, 10);
  const auto roots = reference_triangle_mesh();
  const auto stats = sigma_study(q, roots, 5);
  bool decreasing = true;
  for (std::size_t n = 2; n < stats.size(); ++n)
    decreasing &= stats[n].fraction_above < stats[n - 1].fraction_above;
  const bool small = stats[5].fraction_above <= 0.05;
  bool bounded = true;
  for (const auto& st : stats) bounded &= st.mean_pow_r0 <= st.bound;
  std::string fractions;
  for (const auto& st : stats) fractions += (fractions.empty() ? "" : ",") + fmt(st.fraction_above);
  return {decreasing && small && bounded,
          "sigma0=" + fmt(sigma(q, roots[0])) + " fraction_above(5) by level [" + fractions +
              "]; strictly decreasing for n>=2: " + (decreasing ? "yes" : "no") +
              "; <=0.05 at n=5: " + (small ? "yes" : "no") + "; mean sigma^r0 within bound: " +
              (bounded ? "yes" : "no")};
}

Outcome quadratic_rate() {
  const ScalarField f = *find_field("aniso-2");
  const QuadForm q = f.quadratic->form();
  const std::vector<std::size_t> checkpoints{256, 1024, 4096};
  bool ok = true;
  std::string detail;
  for (double p : {2.0, kInfinity}) {
    GreedyConfig config;
    config.p = p;
    config.initial = InitialMesh::reference_triangle;
    const auto pts = convergence_study(f, config, checkpoints);
    const double area = 0.5;
    const double norm = std::sqrt(q.det()) * std::pow(area, 1.0 / tau_from_p(p));
    double worst_step = 0.0, worst_ratio = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      worst_ratio = std::max(worst_ratio, pts[i].product / norm);
      if (i > 0) {
        const double a = pts[i].product, b = pts[i - 1].product;
        worst_step = std::max(worst_step, std::max(a, b) / std::min(a, b));
      }
    }
    ok &= worst_step <= 2.0 && worst_ratio <= 20.0;
    detail += std::string(detail.empty() ? "" : "; ") + "p=" + (std::isinf(p) ? "inf" : fmt(p)) +
              ": max step factor " + fmt(worst_step) + ", max N*err/||sqrt det q|| " +
              fmt(worst_ratio);
  }
  return {ok, detail};
}

Outcome strictly_convex_rate() {
  const ScalarField f = *find_field("expbump");
  GreedyConfig config;
  config.p = 2.0;
  const auto pts = convergence_study(f, config, {64, 256, 1024, 4096});
  double lo = kInfinity, hi = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    lo = std::min(lo, pts[i].product);
    hi = std::max(hi, pts[i].product);
  }
  const double spread = hi / lo;
  const double diam_ratio = pts.back().max_diameter / pts.front().max_diameter;
  return {spread <= 3.0 && diam_ratio < 0.25,
          "N*err max/min over {256,1024,4096} " + fmt(spread) + " (<= 3); diam(4096)/diam(64) " +
              fmt(diam_ratio) + " (< 0.25)"};
}

// f = q + k log cosh(u.x + c) with k = mu lambda_min(2Q) / |u|^2, so that
// d^2 q <= d^2 f <= (1 + mu) d^2 q everywhere.
ScalarField perturbed(const QuadForm& q, double mu, Vec2 u, double c) {
  const QuadraticField base{q};
  const double k = mu * eigen(base.hessian()).values[1] / dot(u, u);
  ScalarField f;
  f.label = "perturbed";
  f.eval = [=](Point p) { return base(p) + k * std::log(std::cosh(dot(u, p) + c)); };
  f.hessian = [=](Point p) {
    const double sech = 1.0 / std::cosh(dot(u, p) + c);
    const double w = k * sech * sech;
    return base.hessian() + QuadForm{w * u.x * u.x, w * u.x * u.y, w * u.y * u.y};
  };
  f.convexity = Convexity::strictly_convex;
  f.convexity_modulus = eigen(base.hessian()).values[1];
  return f;
}

Outcome perturbation_sandwich() {
  Sampler s(20240608);
  GreedyConfig config;
  int pairs = 0, pointwise = 0, edge = 0;
  for (double mu : {0.01, 0.1}) {
    for (int k = 0; k < 200; ++k, ++pairs) {
      const QuadForm q = s.pd_form();
      const Triangle t = s.triangle();
      Vec2 u{s.uniform(-1, 1), s.uniform(-1, 1)};
      u = (s.uniform(0.5, 5.0) / (norm(u) * t.diameter())) * u;
      const ScalarField f = perturbed(q, mu, u, s.uniform(-2, 2));
      const ScalarField qf = QuadraticField(q).to_field();
      const auto ifa = approximate(t, f, OperatorKind::interpolation);
      const auto iqa = approximate(t, qf, OperatorKind::interpolation);
      for (const auto& l : error_rule().nodes) {
        const Point z = t.at(l[0], l[1], l[2]);
        const double fz = f(z), qz = qf(z), ifz = ifa.at(l), iqz = iqa.at(l);
        const double gap = (ifz - fz) - (iqz - qz);
        const double slack = 64 * kEps * (std::abs(ifz) + std::abs(fz) + std::abs(iqz) + std::abs(qz));
        pointwise += gap < -slack || gap > mu * (iqz - qz) + slack;
      }
      const int e = select_edge(t, f, config);
      const auto qe = edge_q(q, t);
      edge += (1 + mu) * qe[e] < *std::max_element(qe.begin(), qe.end()) * (1 - 1e-12);
    }
  }
  return {pointwise == 0 && edge == 0,
          std::to_string(pairs) + " pairs (mu 0.01, 0.1): pointwise violations " +
              std::to_string(pointwise) + ", non-near edges " + std::to_string(edge)};
}

Outcome operator_axioms() {
  Sampler s(20240609);
  double worst_affine = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Triangle t = s.triangle();
    const double c0 = s.uniform(-5, 5), c1 = s.uniform(-5, 5), c2 = s.uniform(-5, 5);
    const ScalarField f = QuadraticField({}, c1, c2, c0).to_field("affine");
    for (auto op : {OperatorKind::interpolation, OperatorKind::l2_projection}) {
      const AffinePoly p = op == OperatorKind::interpolation ? interpolate(t, f) : project_l2(t, f);
      worst_affine = std::max({worst_affine, std::abs(p.c0 - c0), std::abs(p.c1 - c1),
                               std::abs(p.c2 - c2)});
    }
  }

  const ScalarField g{"smooth",
                      [](Point p) { return std::exp(0.5 * p.x) * std::cos(1.3 * p.y) + p.x * p.x * p.y; },
                      {}, Convexity::general, 0.0, {}};
  double worst_commute = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Triangle t = s.triangle();
    const Mat2 l = s.linear_map();
    const Vec2 off{s.uniform(-1, 1), s.uniform(-1, 1)};
    const ScalarField pulled{"pulled", [&](Point p) { return g(off + l * p); }, {},
                             Convexity::general, 0.0, {}};
    for (double p : {1.0, 2.0, kInfinity}) {
      for (auto op : {OperatorKind::interpolation, OperatorKind::l2_projection}) {
        const double lhs = local_error(t.mapped(l, off), g, p, op);
        const double scale = std::isinf(p) ? 1.0 : std::pow(std::abs(l.det()), 1.0 / p);
        worst_commute = std::max(worst_commute, rel(lhs, scale * local_error(t, pulled, p, op)));
      }
    }
  }

  double worst_orth = 0.0;
  const auto& rule = symmetric_degree8();
  for (int k = 0; k < 200; ++k) {
    const Triangle t = s.triangle();
    std::array<double, 6> c{};
    for (auto& x : c) x = s.uniform(-3, 3);
    const ScalarField poly{"poly",
                           [c](Point p) {
                             return c[0] * p.x * p.x * p.x * p.y + c[1] * std::pow(p.y, 5) +
                                    c[2] * p.x * p.x + c[3] * std::pow(p.x, 7) + c[4] * p.x * p.y +
                                    c[5];
                           },
                           {}, Convexity::general, 0.0, {}};
    const AffinePoly pp = project_l2(t, poly);
    for (int b = 0; b < 3; ++b) {
      auto basis = [b](Point z) { return b == 0 ? 1.0 : (b == 1 ? z.x : z.y); };
      const double r = rule.integrate(t, [&](Point z) { return (poly(z) - pp(z)) * basis(z); });
      const double mag = rule.integrate(t, [&](Point z) { return std::abs(poly(z) * basis(z)); });
      worst_orth = std::max(worst_orth, std::abs(r) / mag);
    }
  }
  return {worst_affine <= 1e-12 && worst_commute <= 1e-8 && worst_orth <= 1e-10,
          "affine reproduction " + fmt(worst_affine) + " (<= 1e-12), commutation " +
              fmt(worst_commute) + " (<= 1e-8), orthogonality residual " + fmt(worst_orth) +
              " (<= 1e-10)"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

Outcome determinism(const std::string& cli) {
  const fs::path dir = fs::temp_directory_path() / ("aniso-acceptance-" +
                                                    std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  fs::create_directories(dir);
  auto run_all = [&](const std::string& tag) {
    const auto p = [&](const std::string& name) { return quote((dir / (name + tag)).string()); };
    const std::string base = quote(cli);
    const std::string cmds[] = {
        base + " run --field expbump --p 2 --target-n 3000 --out-mesh " + p("mesh") +
            " --out-trace " + p("trace"),
        base + " converge --field aniso-10 --initial triangle --checkpoints 64,256,1024 --out-csv " +
            p("conv"),
        base + " sigma-study --field aniso-100 --levels 3 --out-csv " + p("sigma"),
    };
    int failures = 0;
    for (const auto& c : cmds) failures += std::system((c + " > /dev/null").c_str()) != 0;
    return failures;
  };
  const int failures = run_all("-a") + run_all("-b");
  int differing = 0;
  for (const char* name : {"mesh", "trace", "conv", "sigma"}) {
    const auto a = slurp(dir / (std::string(name) + "-a"));
    const auto b = slurp(dir / (std::string(name) + "-b"));
    differing += a.empty() || a != b;
  }
  fs::remove_all(dir);
  return {failures == 0 && differing == 0,
          "2 x 3 CLI invocations, " + std::to_string(failures) + " failed; " +
              std::to_string(differing) + " of 4 outputs differ"};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = ANISO_CLI_PATH;
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else {
      selected.push_back(std::atoi(a.c_str()));
    }
  }

  const std::vector<Criterion> criteria{
      {1, "longest-q-edge rule", 30, longest_edge_rule},
      {2, "exact gain formula", 60, exact_gain},
      {3, "sigma monotonicity", 60, sigma_monotone},
      {4, "psi inequalities", 60, psi_inequalities},
      {5, "degeneracy washout", 120, degeneracy_washout},
      {6, "quadratic optimal rate", 240, quadratic_rate},
      {7, "strictly convex rate", 300, strictly_convex_rate},
      {8, "perturbation sandwich", 60, perturbation_sandwich},
      {9, "operator axioms", 60, operator_axioms},
      {10, "determinism", 120, [&] { return determinism(cli); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail += "; exceeded time limit " + fmt(c.limit_seconds) + " s";
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name
              << "): " << o.detail << " [" << fmt(secs) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
