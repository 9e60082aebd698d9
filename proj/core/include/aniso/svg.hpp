#pragma once

#include <optional>
#include <string>

#include "aniso/approx.hpp"
#include "aniso/fields.hpp"
#include "aniso/forest.hpp"

namespace aniso {

enum class ColorBy { none, sigma, error };

ColorBy parse_color_by(const std::string& s);

struct SvgOptions {
  ColorBy color = ColorBy::none;
  std::optional<QuadForm> form;       // required for ColorBy::sigma
  std::optional<ScalarField> field;   // required for ColorBy::error
  double p = 2.0;
  OperatorKind op = OperatorKind::interpolation;
};

/// SVG 1.1 document: one <polygon> per leaf, the bounding box of the roots
/// mapped onto a 1000x1000 viewBox with y pointing up. A legend (<rect>
/// swatches and <text>) is added when coloring is enabled.
std::string render_svg(const RefinementForest& forest, const SvgOptions& options = {});

}  // namespace aniso
