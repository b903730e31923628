#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lppl {

struct PlotCurve {
    std::string name;
    std::vector<double> t;
    std::vector<double> v;
    bool dashed = false;
};

struct PlotSpec {
    std::string title;
    std::vector<PlotCurve> curves;
    std::optional<double> vline;  // e.g. t_c marker
    int width = 900;
    int height = 520;
};

// Self-contained polyline SVG, no external renderer needed.
void write_svg(const std::filesystem::path& path, const PlotSpec& spec);

// Tidy CSV: header "t,<name1>,<name2>,..."; curves sampled on their own
// grids are written as separate blocks of rows with empty cells elsewhere.
void write_plot_csv(const std::filesystem::path& path,
                    const std::vector<PlotCurve>& curves);

// write-temp-then-rename
void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace lppl
