#include "pettiest/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

#include "pettiest/error.hpp"

namespace pettiest {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 32.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Pale yellow -> dark red.
std::string graded_colour(std::size_t k, std::size_t count) {
    const double t = count <= 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(count - 1);
    const auto mix = [t](int a, int b) {
        return static_cast<int>(a + (b - a) * t + 0.5);
    };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(255, 128), mix(237, 0), mix(160, 38));
    return buf;
}

}  // namespace

std::string render_boxes_svg(const Dataset& points, std::span<const Box> boxes) {
    if (points.p() != 2) fail(ErrorKind::usage, "box plots need exactly 2 plotted dimensions");
    for (const auto& b : boxes) {
        if (b.rank() != 2 || b.dims()[0] != 0 || b.dims()[1] != 1) {
            fail(ErrorKind::usage, "plotted boxes must constrain dimensions 0 and 1");
        }
    }

    double x0 = std::numeric_limits<double>::infinity();
    double y0 = x0;
    double x1 = -x0;
    double y1 = -x0;
    for (std::size_t i = 0; i < points.n(); ++i) {
        x0 = std::min(x0, points(i, 0));
        x1 = std::max(x1, points(i, 0));
        y0 = std::min(y0, points(i, 1));
        y1 = std::max(y1, points(i, 1));
    }
    for (const auto& b : boxes) {
        x0 = std::min(x0, b.intervals()[0].lower);
        x1 = std::max(x1, b.intervals()[0].upper);
        y0 = std::min(y0, b.intervals()[1].lower);
        y1 = std::max(y1, b.intervals()[1].upper);
    }
    const double sx = (kWidth - 2 * kMargin) / std::max(x1 - x0, 1e-12);
    const double sy = (kHeight - 2 * kMargin) / std::max(y1 - y0, 1e-12);
    const auto px = [&](double x) { return kMargin + (x - x0) * sx; };
    const auto py = [&](double y) { return kHeight - kMargin - (y - y0) * sy; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
           fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
    out += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + fmt(kWidth) + "\" height=\"" +
           fmt(kHeight) + "\" fill=\"white\"/>\n";
    out += "<g class=\"points\" fill=\"#4a4a4a\" fill-opacity=\"0.6\">\n";
    for (std::size_t i = 0; i < points.n(); ++i) {
        out += "<circle cx=\"" + fmt(px(points(i, 0))) + "\" cy=\"" + fmt(py(points(i, 1))) +
               "\" r=\"1.5\"/>\n";
    }
    out += "</g>\n<g class=\"boxes\" fill=\"none\" stroke-width=\"1.5\">\n";
    for (std::size_t k = 0; k < boxes.size(); ++k) {
        const auto& ix = boxes[k].intervals()[0];
        const auto& iy = boxes[k].intervals()[1];
        out += "<rect class=\"box\" data-step=\"" + std::to_string(k + 1) + "\" x=\"" +
               fmt(px(ix.lower)) + "\" y=\"" + fmt(py(iy.upper)) + "\" width=\"" +
               fmt(ix.width() * sx) + "\" height=\"" + fmt(iy.width() * sy) + "\" stroke=\"" +
               graded_colour(k, boxes.size()) + "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::string render_covering_svg(const Dataset& data, const CoveringReport& report) {
    if (data.p() < 2) fail(ErrorKind::usage, "box plots need exactly 2 plotted dimensions");
    const std::size_t plotted[] = {0, 1};
    const Dataset points = data.select_columns(plotted);
    std::vector<Box> boxes;
    for (const auto& rec : report.boxes) {
        boxes.push_back(rec.box.project(plotted));
    }
    return render_boxes_svg(points, boxes);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::invalid_input, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(ErrorKind::invalid_input, "failed writing '" + path + "'");
}

}  // namespace pettiest
