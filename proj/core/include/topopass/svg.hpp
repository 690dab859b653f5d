#pragma once

#include <string>
#include <vector>

#include "topopass/table.hpp"

namespace topopass {

struct PlotSpec {
    enum class Kind {
        Lines,        // one polyline per `series` column against `x`
        HeatmapWide,  // rows of the image are the `series` columns, columns follow `x`
        HeatmapLong,  // cell (x, y) coloured by `value`
    };

    Kind kind = Kind::Lines;
    std::string suffix;  // appended to the table name to form the file name
    std::string title;
    std::string x;
    std::vector<std::string> series;
    std::string y;
    std::string value;
};

/// Renders a table as a standalone SVG document. Reads the table only.
std::string render_svg(const ResultTable& table, const PlotSpec& spec);

}  // namespace topopass
