#include "logperiod/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lppl {

void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_svg(const std::filesystem::path& path, const PlotSpec& spec) {
    double t_min = std::numeric_limits<double>::infinity();
    double t_max = -t_min, v_min = t_min, v_max = t_max;
    for (const PlotCurve& c : spec.curves) {
        for (double t : c.t) {
            t_min = std::min(t_min, t);
            t_max = std::max(t_max, t);
        }
        for (double v : c.v) {
            v_min = std::min(v_min, v);
            v_max = std::max(v_max, v);
        }
    }
    if (spec.vline) {
        t_min = std::min(t_min, *spec.vline);
        t_max = std::max(t_max, *spec.vline);
    }
    if (!(t_min < t_max)) t_max = t_min + 1.0;
    if (!(v_min < v_max)) v_max = v_min + 1.0;

    const double ml = 70, mr = 20, mt = 40, mb = 45;
    const double pw = spec.width - ml - mr;
    const double ph = spec.height - mt - mb;
    auto px = [&](double t) { return ml + (t - t_min) / (t_max - t_min) * pw; };
    auto py = [&](double v) {
        return mt + (1.0 - (v - v_min) / (v_max - v_min)) * ph;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        svg << "<text x=\"" << spec.width / 2
            << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"15\">"
            << spec.title << "</text>\n";

    // axes with a few ticks
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
        << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    const int n_ticks = 6;
    for (int i = 0; i <= n_ticks; ++i) {
        const double t = t_min + (t_max - t_min) * i / n_ticks;
        const double v = v_min + (v_max - v_min) * i / n_ticks;
        svg << "<text x=\"" << px(t) << "\" y=\"" << spec.height - mb + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << fmt(t) << "</text>\n";
        svg << "<text x=\"" << ml - 6 << "\" y=\"" << py(v) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << fmt(v) << "</text>\n";
    }

    std::size_t color_i = 0;
    for (const PlotCurve& c : spec.curves) {
        const char* color = kPalette[color_i % 6];
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.4\"";
        if (c.dashed) svg << " stroke-dasharray=\"6,4\"";
        svg << " points=\"";
        for (std::size_t i = 0; i < c.t.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt(px(c.t[i])) << ',' << fmt(py(c.v[i]));
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 + 16 * color_i
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << color << "\">" << c.name << "</text>\n";
        ++color_i;
    }

    if (spec.vline) {
        const double x = px(*spec.vline);
        svg << "<line x1=\"" << x << "\" y1=\"" << mt << "\" x2=\"" << x
            << "\" y2=\"" << mt + ph
            << "\" stroke=\"#999\" stroke-width=\"1\" "
               "stroke-dasharray=\"2,3\"/>\n";
        svg << "<text x=\"" << x + 4 << "\" y=\"" << mt + 14
            << "\" font-family=\"sans-serif\" font-size=\"11\" "
               "fill=\"#666\">t_c=" << fmt(*spec.vline) << "</text>\n";
    }
    svg << "</svg>\n";
    atomic_write_text(path, svg.str());
}

void write_plot_csv(const std::filesystem::path& path,
                    const std::vector<PlotCurve>& curves) {
    // union of time grids; empty cell where a curve has no sample at t
    std::map<double, std::vector<std::string>> rows;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        for (std::size_t i = 0; i < curves[c].t.size(); ++i) {
            auto& row = rows[curves[c].t[i]];
            row.resize(curves.size());
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.12g", curves[c].v[i]);
            row[c] = buf;
        }
    }
    std::ostringstream out;
    out << "t";
    for (const PlotCurve& c : curves) out << ',' << c.name;
    out << '\n';
    for (auto& [t, row] : rows) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.12g", t);
        out << buf;
        row.resize(curves.size());
        for (const std::string& cell : row) out << ',' << cell;
        out << '\n';
    }
    atomic_write_text(path, out.str());
}

}  // namespace lppl
