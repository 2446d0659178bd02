#pragma once

#include <span>
#include <string>
#include <string_view>

#include "recmean/simulator.hpp"

namespace recmean::cli {

/// Self-contained SVG scatter of Nelson-Aalen (x) against the proposed mean
/// (y) with the identity line. Output depends only on the inputs.
std::string scatter_svg(std::span<const ReplicateSummary> rows, std::string_view title);

}  // namespace recmean::cli
