#include "hfrac/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace hfrac {

namespace {

constexpr double width = 640.0;
constexpr double height = 480.0;
constexpr double left = 70.0;
constexpr double right = 20.0;
constexpr double top = 40.0;
constexpr double bottom = 50.0;

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

void write_svg(std::ostream& os, const PlotSpec& plot) {
    if (plot.x.empty())
        throw std::invalid_argument("write_svg: no x values");
    for (const auto& s : plot.series)
        if (s.y.size() != plot.x.size())
            throw std::invalid_argument("write_svg: series '" + s.label + "' length differs from x");

    double x0 = *std::min_element(plot.x.begin(), plot.x.end());
    double x1 = *std::max_element(plot.x.begin(), plot.x.end());
    double y0 = 0.0;
    double y1 = 0.0;
    bool first = true;
    for (const auto& s : plot.series)
        for (double v : s.y) {
            y0 = first ? v : std::min(y0, v);
            y1 = first ? v : std::max(y1, v);
            first = false;
        }
    if (x1 == x0)
        x1 = x0 + 1.0;
    if (y1 == y0) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto sx = [&](double v) { return left + (v - x0) / (x1 - x0) * pw; };
    auto sy = [&](double v) { return top + (y1 - v) / (y1 - y0) * ph; };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << px(width / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
       << escape(plot.title) << "</text>\n";

    // axes
    os << "<g stroke=\"black\" stroke-width=\"1\">\n"
       << "<line x1=\"" << px(left) << "\" y1=\"" << px(top + ph) << "\" x2=\"" << px(left + pw) << "\" y2=\""
       << px(top + ph) << "\"/>\n"
       << "<line x1=\"" << px(left) << "\" y1=\"" << px(top) << "\" x2=\"" << px(left) << "\" y2=\"" << px(top + ph)
       << "\"/>\n"
       << "</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<text x=\"" << px(left) << "\" y=\"" << px(top + ph + 18) << "\" text-anchor=\"middle\">" << num(x0)
       << "</text>\n"
       << "<text x=\"" << px(left + pw) << "\" y=\"" << px(top + ph + 18) << "\" text-anchor=\"middle\">" << num(x1)
       << "</text>\n"
       << "<text x=\"" << px(left - 6) << "\" y=\"" << px(top + ph) << "\" text-anchor=\"end\">" << num(y0)
       << "</text>\n"
       << "<text x=\"" << px(left - 6) << "\" y=\"" << px(top + 4) << "\" text-anchor=\"end\">" << num(y1)
       << "</text>\n"
       << "<text x=\"" << px(left + pw / 2) << "\" y=\"" << px(height - 12) << "\" text-anchor=\"middle\">"
       << escape(plot.x_label) << "</text>\n"
       << "<text x=\"16\" y=\"" << px(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << px(top + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n"
       << "</g>\n";

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        const char* colour = palette[k % std::size(palette)];
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < plot.x.size(); ++i)
            os << (i ? " " : "") << px(sx(plot.x[i])) << ',' << px(sy(s.y[i]));
        os << "\"/>\n";
        os << "<text x=\"" << px(left + pw - 4) << "\" y=\"" << px(top + 16 + 16 * static_cast<double>(k))
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << colour << "\">"
           << escape(s.label) << "</text>\n";
    }
    os << "</svg>\n";
}

} // namespace hfrac
