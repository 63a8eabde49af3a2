#pragma once

#include "spc/dataset.hpp"
#include "spc/eval.hpp"

#include <filesystem>
#include <string>

namespace spc {

/// Standalone SVG scatter of a 2-D dataset, one color per label, fixed
/// 640x480 viewport. Output is a pure function of the inputs.
std::string render_scatter_svg(const Dataset& x, const Partition& labels);
void emit_scatter_svg(const Dataset& x, const Partition& labels, const std::filesystem::path& path);

}  // namespace spc
