#pragma once

#include <filesystem>
#include <string>

#include "dtmfilt/persistence.hpp"

namespace dtmf {

/// Standalone SVG scatter plot of (birth, death) with the diagonal.
/// Dimension 0 is red, 1 green, 2 and above blue. Essential points sit on
/// the top border as upward triangles.
std::string render_svg(const PersistenceDiagram& diagram);
void save_svg(const std::filesystem::path& path, const PersistenceDiagram& diagram);

}  // namespace dtmf
