#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace polyembed::cli {

/// Write through a temporary file in the same directory and rename it into
/// place, creating parent directories as needed.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Header line plus one row per point, values in shortest round-trip form.
std::string to_csv(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows);

struct SvgLayer {
    std::vector<std::array<double, 2>> points;
    std::string color;
    /// Closed polygon outlines drawn under the points.
    std::vector<std::vector<std::array<double, 2>>> outlines;
};

/// Scatter plot of the layers, y axis pointing up, fitted to a square canvas.
std::string to_svg(const std::vector<SvgLayer>& layers, const std::string& title);

}  // namespace polyembed::cli
