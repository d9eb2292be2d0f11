// Copyright 2026 The purisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "purisim/plots.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "purisim/matrix_io.h"

namespace purisim {

namespace {

constexpr double kCellX = 34;   // horizontal half-width of a floor cell
constexpr double kCellY = 17;   // vertical half-height of a floor cell
constexpr double kBar = 0.7;    // bar footprint as a fraction of the cell
constexpr double kScale = 160;  // pixels per unit of matrix entry
constexpr double kPanelW = 340;
constexpr double kPanelH = 360;

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

struct Point {
    double x;
    double y;
};

Point floor_point(double ox, double oy, double row, double col) {
    return {ox + (col - row) * kCellX, oy + (col + row) * kCellY};
}

std::string polygon(const std::vector<Point> &pts, const char *fill) {
    std::string s = "<polygon points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        s += (i ? " " : "") + fmt("%.2f", pts[i].x) + "," + fmt("%.2f", pts[i].y);
    }
    return s + "\" fill=\"" + fill + "\" stroke=\"#333\" stroke-width=\"0.6\"/>\n";
}

// One panel: a 4x4 floor and a bar per entry, drawn back to front.
std::string panel(const Matrix4 &rho, bool imaginary, double ox, double oy, const std::string &label) {
    std::string s;
    for (int r = 0; r <= 4; ++r) {
        const Point a = floor_point(ox, oy, r, 0), b = floor_point(ox, oy, r, 4);
        s += "<line x1=\"" + fmt("%.2f", a.x) + "\" y1=\"" + fmt("%.2f", a.y) + "\" x2=\"" + fmt("%.2f", b.x) +
             "\" y2=\"" + fmt("%.2f", b.y) + "\" stroke=\"#bbb\"/>\n";
    }
    for (int c = 0; c <= 4; ++c) {
        const Point a = floor_point(ox, oy, 0, c), b = floor_point(ox, oy, 4, c);
        s += "<line x1=\"" + fmt("%.2f", a.x) + "\" y1=\"" + fmt("%.2f", a.y) + "\" x2=\"" + fmt("%.2f", b.x) +
             "\" y2=\"" + fmt("%.2f", b.y) + "\" stroke=\"#bbb\"/>\n";
    }
    const double pad = (1 - kBar) / 2;
    for (int depth = 0; depth <= 6; ++depth) {
        for (int r = 0; r < 4; ++r) {
            const int c = depth - r;
            if (c < 0 || c > 3) {
                continue;
            }
            const double v = imaginary ? rho(r, c).imag() : rho(r, c).real();
            const double h = v * kScale;
            const bool positive = v >= 0;
            const Point p00 = floor_point(ox, oy, r + pad, c + pad);
            const Point p01 = floor_point(ox, oy, r + pad, c + 1 - pad);
            const Point p11 = floor_point(ox, oy, r + 1 - pad, c + 1 - pad);
            const Point p10 = floor_point(ox, oy, r + 1 - pad, c + pad);
            auto up = [h](Point p) { return Point{p.x, p.y - h}; };
            const char *top = positive ? "#4f81bd" : "#c0504d";
            const char *side_l = positive ? "#3a6391" : "#8f3b39";
            const char *side_r = positive ? "#2c4b6e" : "#6e2d2c";
            s += polygon({p10, p11, up(p11), up(p10)}, side_l);
            s += polygon({p11, p01, up(p01), up(p11)}, side_r);
            s += polygon({up(p00), up(p01), up(p11), up(p10)}, top);
        }
    }
    s += "<text x=\"" + fmt("%.1f", ox) + "\" y=\"" + fmt("%.1f", oy - 150) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + label + "</text>\n";
    const char *ket[4] = {"00", "01", "10", "11"};
    for (int i = 0; i < 4; ++i) {
        const Point row_label = floor_point(ox, oy, i + 0.5, -0.3);
        const Point col_label = floor_point(ox, oy, 4.3, i + 0.5);
        s += "<text x=\"" + fmt("%.1f", row_label.x) + "\" y=\"" + fmt("%.1f", row_label.y) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">|" + ket[i] + "&gt;</text>\n";
        s += "<text x=\"" + fmt("%.1f", col_label.x) + "\" y=\"" + fmt("%.1f", col_label.y + 10) +
             "\" font-family=\"sans-serif\" font-size=\"10\">&lt;" + ket[i] + "|</text>\n";
    }
    return s;
}

void collect(const nlohmann::json &node, const std::string &prefix,
             std::vector<std::pair<std::string, Matrix4>> &out) {
    if (!node.is_object()) {
        return;
    }
    if (node.contains("dim") && node.contains("entries")) {
        const ComplexMatrix m = matrix_from_json(node);
        if (m.rows() == 4) {
            out.emplace_back(prefix, Matrix4(m));
        }
        return;
    }
    for (const auto &[key, value] : node.items()) {
        collect(value, prefix.empty() ? key : prefix + "_" + key, out);
    }
}

}  // namespace

std::string bar_heights_csv(const Matrix4 &rho) {
    std::string s = "row,col,re,im\n";
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            s += std::to_string(r) + "," + std::to_string(c) + "," + fmt("%.17g", rho(r, c).real()) + "," +
                 fmt("%.17g", rho(r, c).imag()) + "\n";
        }
    }
    return s;
}

std::string render_density_svg(const Matrix4 &rho, const std::string &title) {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * kPanelW << "\" height=\"" << kPanelH
      << "\" viewBox=\"0 0 " << 2 * kPanelW << " " << kPanelH << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << kPanelW << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"16\">" << title << "</text>\n";
    const double oy = 190;
    s << panel(rho, false, kPanelW / 2, oy, "Re");
    s << panel(rho, true, kPanelW * 1.5, oy, "Im");
    s << "</svg>\n";
    return s.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::vector<std::filesystem::path> emit_plots(const nlohmann::json &report, const std::filesystem::path &out_dir) {
    std::vector<std::pair<std::string, Matrix4>> matrices;
    for (const char *section : {"exact", "sampled"}) {
        if (report.contains(section)) {
            collect(report.at(section), section, matrices);
        }
    }
    std::vector<std::filesystem::path> written;
    for (const auto &[stem, rho] : matrices) {
        const auto svg = out_dir / (stem + ".svg");
        const auto csv = out_dir / (stem + ".csv");
        write_text_file(svg, render_density_svg(rho, stem));
        write_text_file(csv, bar_heights_csv(rho));
        written.push_back(svg);
        written.push_back(csv);
    }
    return written;
}

}  // namespace purisim
