#include "dtmfilt/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "dtmfilt/errors.hpp"

namespace dtmf {

namespace {

constexpr double kSize = 400.0;
constexpr double kMargin = 48.0;

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

const char* colour(int dim) {
    if (dim == 0) return "#d62728";
    if (dim == 1) return "#2ca02c";
    return "#1f77b4";
}

}  // namespace

std::string render_svg(const PersistenceDiagram& diagram) {
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (const auto& pt : diagram.points) {
        lo = std::min(lo, pt.birth);
        hi = std::max(hi, pt.birth);
        if (!pt.essential()) hi = std::max(hi, pt.death);
        any = true;
    }
    if (diagram.censor_value) hi = std::max(hi, *diagram.censor_value);
    if (!any || hi <= lo) hi = lo + 1.0;
    hi += 0.05 * (hi - lo);

    const double span = kSize - 2.0 * kMargin;
    auto sx = [&](double v) { return kMargin + (v - lo) / (hi - lo) * span; };
    auto sy = [&](double v) { return kSize - kMargin - (v - lo) / (hi - lo) * span; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"400\" height=\"400\" fill=\"white\"/>\n";
    const std::string left = fixed(kMargin), right = fixed(kSize - kMargin);
    out += "<line x1=\"" + left + "\" y1=\"" + right + "\" x2=\"" + right + "\" y2=\"" + right +
           "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + left + "\" y1=\"" + right + "\" x2=\"" + left + "\" y2=\"" + left +
           "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + left + "\" y1=\"" + right + "\" x2=\"" + right + "\" y2=\"" + left +
           "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    out += "<line x1=\"" + left + "\" y1=\"" + left + "\" x2=\"" + right + "\" y2=\"" + left +
           "\" stroke=\"gray\" stroke-width=\"0.5\"/>\n";
    out += "<text x=\"200\" y=\"390\" font-size=\"12\" text-anchor=\"middle\">birth</text>\n";
    out += "<text x=\"14\" y=\"200\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 200)\">death</text>\n";
    out += "<text x=\"" + left + "\" y=\"" + fixed(kSize - kMargin + 14) + "\" font-size=\"10\">" + fixed(lo) +
           "</text>\n";
    out += "<text x=\"" + right + "\" y=\"" + fixed(kSize - kMargin + 14) +
           "\" font-size=\"10\" text-anchor=\"end\">" + fixed(hi) + "</text>\n";
    out += "<text x=\"" + fixed(kMargin - 4) + "\" y=\"" + fixed(kMargin - 6) +
           "\" font-size=\"10\" text-anchor=\"end\">inf</text>\n";

    std::vector<DiagramPoint> points = diagram.points;
    std::sort(points.begin(), points.end());
    for (const auto& pt : points) {
        const double x = sx(pt.birth);
        if (pt.essential()) {
            const double y = kMargin;
            out += "<polygon points=\"" + fixed(x) + "," + fixed(y - 5) + " " + fixed(x - 4.5) + "," + fixed(y + 3) +
                   " " + fixed(x + 4.5) + "," + fixed(y + 3) + "\" fill=\"" + colour(pt.dim) + "\"/>\n";
        } else {
            out += "<circle cx=\"" + fixed(x) + "\" cy=\"" + fixed(sy(pt.death)) + "\" r=\"3\" fill=\"" +
                   colour(pt.dim) + "\" fill-opacity=\"0.8\"/>\n";
        }
    }
    out += "<text x=\"300\" y=\"70\" font-size=\"11\" fill=\"#d62728\">H0</text>\n";
    out += "<text x=\"300\" y=\"84\" font-size=\"11\" fill=\"#2ca02c\">H1</text>\n";
    out += "<text x=\"300\" y=\"98\" font-size=\"11\" fill=\"#1f77b4\">H2+</text>\n";
    out += "</svg>\n";
    return out;
}

void save_svg(const std::filesystem::path& path, const PersistenceDiagram& diagram) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << render_svg(diagram);
}

}  // namespace dtmf
