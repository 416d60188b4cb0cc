#pragma once

#include <functional>
#include <span>
#include <string>

#include "obscbf/simloop.hpp"

namespace obscbf {

struct LabeledTrace {
    std::string label;
    std::reference_wrapper<const SimTrace> trace;
};

/// Standalone 800x500 SVG line plot of one trace column against t, one
/// polyline per trace, with axes, tick labels, a y = 0 line and a legend.
/// Output is deterministic. Throws std::invalid_argument for an empty
/// series list or unknown column.
std::string emit_plot(std::span<const LabeledTrace> traces, const std::string& quantity);

}  // namespace obscbf
