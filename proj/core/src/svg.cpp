#include "aniso/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace aniso {

ColorBy parse_color_by(const std::string& s) {
  if (s == "none") return ColorBy::none;
  if (s == "sigma") return ColorBy::sigma;
  if (s == "error") return ColorBy::error;
  throw std::invalid_argument("unknown color mode '" + s + "'");
}

namespace {

constexpr double kView = 1000.0;

// Five-stop approximation of viridis.
std::string color_at(double s) {
  static constexpr std::array<std::array<double, 3>, 5> stops{{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  s = std::clamp(s, 0.0, 1.0) * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(s), stops.size() - 2);
  const double w = s - static_cast<double>(i);
  char buf[8];
  std::array<int, 3> c{};
  for (std::size_t k = 0; k < 3; ++k)
    c[k] = static_cast<int>(std::lround((1 - w) * stops[i][k] + w * stops[i + 1][k]));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

std::string fmt(double v, const char* spec = "%.3f") {
  char buf[32];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string render_svg(const RefinementForest& forest, const SvgOptions& options) {
  std::vector<double> values;
  const auto leaves = forest.leaf_triangles();
  if (options.color == ColorBy::sigma) {
    if (!options.form) throw std::invalid_argument("coloring by sigma needs a quadratic form");
    for (const auto& t : leaves) values.push_back(sigma(*options.form, t));
  } else if (options.color == ColorBy::error) {
    if (!options.field) throw std::invalid_argument("coloring by error needs a field");
    for (const auto& t : leaves) values.push_back(local_error(t, *options.field, options.p, options.op));
  }

  double xmin = kInfinity, ymin = kInfinity, xmax = -kInfinity, ymax = -kInfinity;
  for (NodeId id : forest.roots()) {
    for (const auto& z : forest.node(id).triangle.vertices()) {
      xmin = std::min(xmin, z.x);
      xmax = std::max(xmax, z.x);
      ymin = std::min(ymin, z.y);
      ymax = std::max(ymax, z.y);
    }
  }
  const double sx = kView / (xmax - xmin);
  const double sy = kView / (ymax - ymin);

  // Log scale when the range spans more than a decade.
  double lo = 0.0, hi = 1.0;
  bool log_scale = false;
  if (!values.empty()) {
    lo = *std::min_element(values.begin(), values.end());
    hi = *std::max_element(values.begin(), values.end());
    log_scale = lo > 0.0 && hi > 10.0 * lo;
  }
  auto normalized = [&](double v) {
    if (hi <= lo) return 0.5;
    if (log_scale) return std::log(v / lo) / std::log(hi / lo);
    return (v - lo) / (hi - lo);
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
     << "width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n"
     << "<g id=\"mesh\" stroke=\"#000000\" stroke-width=\"0.5\" stroke-linejoin=\"round\">\n";
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    os << "<polygon points=\"";
    for (int i = 0; i < 3; ++i) {
      const Point z = leaves[k][i];
      os << (i ? " " : "") << fmt((z.x - xmin) * sx) << ',' << fmt(kView - (z.y - ymin) * sy);
    }
    os << "\" fill=\"" << (values.empty() ? std::string("#ffffff") : color_at(normalized(values[k])))
       << "\"/>\n";
  }
  os << "</g>\n";
  if (!values.empty()) {
    const char* name = options.color == ColorBy::sigma ? "sigma" : "local error";
    os << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"14\">\n"
       << "<rect x=\"770\" y=\"10\" width=\"220\" height=\"150\" fill=\"#ffffff\" "
          "fill-opacity=\"0.85\" stroke=\"#000000\"/>\n"
       << "<text x=\"780\" y=\"30\">" << name << (log_scale ? " (log)" : "") << "</text>\n";
    for (int i = 0; i < 5; ++i) {
      const double s = i / 4.0;
      const double v = log_scale ? lo * std::pow(hi / lo, s) : lo + s * (hi - lo);
      const int y = 40 + 22 * i;
      os << "<rect x=\"780\" y=\"" << y << "\" width=\"30\" height=\"18\" fill=\"" << color_at(s)
         << "\"/>\n"
         << "<text x=\"820\" y=\"" << y + 14 << "\">" << fmt(v, "%.4g")
         << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace aniso
