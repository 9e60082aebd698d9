#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "aniso/analysis.hpp"
#include "aniso/error.hpp"
#include "aniso/greedy.hpp"
#include "aniso/mesh_io.hpp"
#include "aniso/report.hpp"
#include "aniso/svg.hpp"

namespace aniso::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr const char* kFooter = R"(CSV schemas (comma separated, '.' decimal point, LF line endings):
  run --out-trace     n,global_error,max_leaf_error,max_diameter,sigma_mean,sigma_max,sigma_fraction_above
  converge --out-csv  n,error,product,target,ratio,max_diameter
  sigma-study         level,triangles,sigma_mean,sigma_max,fraction_above,mean_sigma_r0,bound
Mesh files use the 'aniso-mesh v1' text format.
Exit codes: 0 ok, 1 failure (I/O, parse, geometry), 2 usage, 3 node cap exceeded.)";

struct CommonFlags {
  std::string field = "disk";
  std::string p = "2";
  std::string op = "interpolation";
  std::string decision = "l1-interp";
  std::string initial = "square";
  std::size_t max_nodes = kDefaultMaxNodes;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--field", flags.field, "Catalog field label")->capture_default_str();
  cmd->add_option("--p", flags.p, "Error exponent, 1 <= p, or 'inf'")->capture_default_str();
  cmd->add_option("--operator", flags.op, "interpolation | l2-projection")->capture_default_str();
  cmd->add_option("--decision", flags.decision, "l1-interp | lp-split")->capture_default_str();
  cmd->add_option("--initial", flags.initial, "triangle | square")->capture_default_str();
  cmd->add_option("--max-nodes", flags.max_nodes, "Node cap before aborting")->capture_default_str();
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return kInfinity;
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("invalid exponent '" + s + "'");
  }
  if (used != s.size() || !(v >= 1.0)) throw UsageError("invalid exponent '" + s + "'");
  return v;
}

ScalarField lookup_field(const std::string& label) {
  auto f = find_field(label);
  if (!f) {
    std::string known;
    for (const auto& l : catalog_labels()) known += (known.empty() ? "" : ", ") + l;
    throw UsageError("unknown field '" + label + "' (known: " + known + ")");
  }
  return *f;
}

GreedyConfig make_config(const CommonFlags& flags) {
  GreedyConfig c;
  c.p = parse_p(flags.p);
  c.op = parse_operator(flags.op);
  c.decision = parse_decision(flags.decision);
  c.initial = parse_initial_mesh(flags.initial);
  c.max_nodes = flags.max_nodes;
  return c;
}

QuadForm parse_form(const std::string& s) {
  std::array<double, 3> v{};
  std::stringstream ss(s);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k == 3) throw UsageError("--form takes three values a20,a11,a02");
    try {
      v[k++] = std::stod(item);
    } catch (const std::exception&) {
      throw UsageError("invalid --form value '" + item + "'");
    }
  }
  if (k != 3) throw UsageError("--form takes three values a20,a11,a02");
  return {v[0], v[1], v[2]};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Greedy anisotropic bisection: meshes, traces and studies", "aniso"};
  app.footer(kFooter);
  app.require_subcommand(1);

  CommonFlags run_flags, conv_flags, sigma_flags;

  auto* run_cmd = app.add_subcommand("run", "Greedy refinement; writes mesh and trace");
  add_common(run_cmd, run_flags);
  std::optional<std::size_t> target_n;
  std::optional<double> eta;
  std::optional<int> run_levels;
  std::string out_mesh = "mesh.txt", out_trace = "trace.csv";
  run_cmd->add_option("--target-n", target_n, "Stop at this many triangles");
  run_cmd->add_option("--eta", eta, "Stop when every local error is <= eta");
  run_cmd->add_option("--levels", run_levels, "Refine every triangle this many generations");
  run_cmd->add_option("--out-mesh", out_mesh, "Mesh output path")->capture_default_str();
  run_cmd->add_option("--out-trace", out_trace, "Trace CSV output path")->capture_default_str();

  auto* conv_cmd = app.add_subcommand("converge", "N * error at checkpoints; writes CSV");
  add_common(conv_cmd, conv_flags);
  std::vector<std::size_t> checkpoints{64, 256, 1024};
  std::string conv_csv = "converge.csv";
  conv_cmd->add_option("--checkpoints", checkpoints, "Comma separated increasing leaf counts")
      ->delimiter(',')
      ->capture_default_str();
  conv_cmd->add_option("--out-csv", conv_csv, "CSV output path")->capture_default_str();

  auto* sigma_cmd = app.add_subcommand("sigma-study", "Sigma statistics under uniform refinement");
  add_common(sigma_cmd, sigma_flags);
  int sigma_levels = 5;
  double threshold = kSigmaThreshold;
  std::string sigma_out = "sigma.csv";
  sigma_cmd->add_option("--levels", sigma_levels, "Reported levels (3 generations each)")
      ->capture_default_str();
  sigma_cmd->add_option("--threshold", threshold, "Sigma threshold")->capture_default_str();
  sigma_cmd->add_option("--out-csv", sigma_out, "CSV output path")->capture_default_str();

  auto* render_cmd = app.add_subcommand("render", "Render a mesh file to SVG");
  std::string mesh_path, svg_path, color = "none", form_str, render_field;
  std::string render_p = "2", render_op = "interpolation";
  render_cmd->add_option("mesh", mesh_path, "Mesh file")->required();
  render_cmd->add_option("--out-svg", svg_path, "SVG output path (default: <mesh>.svg)");
  render_cmd->add_option("--color", color, "none | sigma | error")->capture_default_str();
  render_cmd->add_option("--form", form_str, "a20,a11,a02 for sigma coloring");
  render_cmd->add_option("--field", render_field, "Catalog field for error coloring");
  render_cmd->add_option("--p", render_p, "Exponent for error coloring")->capture_default_str();
  render_cmd->add_option("--operator", render_op, "Operator for error coloring")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (run_cmd->parsed()) {
      const ScalarField f = lookup_field(run_flags.field);
      GreedyConfig config = make_config(run_flags);
      const int given = target_n.has_value() + eta.has_value() + run_levels.has_value();
      if (given != 1) throw UsageError("give exactly one of --target-n, --eta, --levels");
      if (target_n) config.stop = StopRule::target(*target_n);
      if (eta) config.stop = StopRule::threshold(*eta);
      if (run_levels) config.stop = StopRule::generations(*run_levels);
      config.validate(initial_mesh(config.initial).size());
      const GreedyResult result = greedy_run(f, config);
      write_file_atomic(out_mesh, mesh_to_string(result.forest));
      write_file_atomic(out_trace, trace_csv(result.trace));
      out << "N=" << result.forest.leaf_count()
          << " global_error=" << format_double(cached_global_error(result.forest, config.p)) << "\n";
    } else if (conv_cmd->parsed()) {
      const ScalarField f = lookup_field(conv_flags.field);
      const GreedyConfig config = make_config(conv_flags);
      if (!f.is_convex()) throw UsageError("converge needs a convex field; '" + f.label + "' is not");
      if (checkpoints.empty()) throw UsageError("--checkpoints is empty");
      const auto points = convergence_study(f, config, checkpoints);
      write_file_atomic(conv_csv, convergence_csv(points));
      const auto& last = points.back();
      out << "N=" << last.n << " product=" << format_double(last.product)
          << " ratio=" << format_double(last.ratio) << "\n";
    } else if (sigma_cmd->parsed()) {
      const ScalarField f = lookup_field(sigma_flags.field);
      if (!f.quadratic || !f.quadratic->form().is_positive_definite())
        throw UsageError("sigma-study needs a quadratic field with positive definite form");
      const GreedyConfig config = make_config(sigma_flags);
      if (sigma_levels < 0) throw UsageError("--levels must be >= 0");
      const auto stats = sigma_study(f.quadratic->form(), initial_mesh(config.initial),
                                     sigma_levels, threshold, config.max_nodes);
      write_file_atomic(sigma_out, sigma_csv(stats));
      out << "level=" << stats.back().level
          << " fraction_above=" << format_double(stats.back().fraction_above) << "\n";
    } else if (render_cmd->parsed()) {
      SvgOptions opts;
      opts.color = parse_color_by(color);
      if (!form_str.empty()) opts.form = parse_form(form_str);
      if (!render_field.empty()) opts.field = lookup_field(render_field);
      opts.p = parse_p(render_p);
      opts.op = parse_operator(render_op);
      if (opts.color == ColorBy::sigma && !opts.form) throw UsageError("--color sigma needs --form");
      if (opts.color == ColorBy::error && !opts.field) throw UsageError("--color error needs --field");
      std::istringstream in(read_file(mesh_path));
      RefinementForest forest = read_mesh(in);
      const std::string svg = render_svg(forest, opts);
      if (svg_path.empty()) svg_path = mesh_path + ".svg";
      write_file_atomic(svg_path, svg);
      out << "wrote " << svg_path << " (" << forest.leaf_count() << " triangles)\n";
    }
  } catch (const RunawayRefinement& e) {
    err << "error: " << e.what() << "\n";
    return kRunaway;
  } catch (const ParseError& e) {
    err << "parse error: " << mesh_path << ": " << e.what() << "\n";
    return kFailure;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace aniso::cli
