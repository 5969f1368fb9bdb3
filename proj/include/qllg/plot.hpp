#pragma once
//
// Static SVG line charts for TimeSeries — a convenience output next to the
// CSV contract. Byte-deterministic for fixed input: no timestamps, fixed
// palette, fixed float formatting.
//

#include <string>

#include "qllg/timeseries.hpp"

namespace qllg {

// Self-contained SVG: one polyline per column, labeled axes (t in ps), legend
// from column names. Throws std::invalid_argument when the series has no
// columns or no rows.
std::string render_svg(const TimeSeries& series, const std::string& title = "");

void write_svg_file(const TimeSeries& series, const std::string& title,
                    const std::string& path);

}  // namespace qllg
