#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace setprop::cli {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kBandColors[] = {"#1f77b4", "#2ca02c", "#9467bd"};
const char* const kLineColors[] = {"#d62728", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const std::string& title, const std::vector<Band>& bands, const std::vector<Line>& lines) {
    double t0 = std::numeric_limits<double>::infinity();
    double t1 = -t0;
    double y0 = t0;
    double y1 = -t0;
    for (const auto& b : bands) {
        for (std::size_t k = 0; k < b.lo.size(); ++k) {
            t0 = std::min(t0, b.t_lo[k]);
            t1 = std::max(t1, b.t_hi[k]);
            y0 = std::min(y0, b.lo[k]);
            y1 = std::max(y1, b.hi[k]);
        }
    }
    for (const auto& l : lines) {
        for (std::size_t k = 0; k < l.t.size(); ++k) {
            t0 = std::min(t0, l.t[k]);
            t1 = std::max(t1, l.t[k]);
            y0 = std::min(y0, l.y[k]);
            y1 = std::max(y1, l.y[k]);
        }
    }
    if (!(t1 > t0)) {
        t1 = t0 + 1.0;
    }
    if (!(y1 > y0)) {
        const double pad = std::max(1.0, std::abs(y0)) * 1e-3;
        y0 -= pad;
        y1 += pad;
    }
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double t) { return kLeft + (t - t0) / (t1 - t0) * pw; };
    auto sy = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"15\">" << escape(title) << "</text>\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double t = t0 + (t1 - t0) * i / 4.0;
        const double y = y0 + (y1 - y0) * i / 4.0;
        os << "<text x=\"" << num(sx(t)) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">"
           << label(t) << "</text>\n";
        os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(sy(y) + 4) << "\" text-anchor=\"end\">" << label(y)
           << "</text>\n";
    }
    os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 10) << "\" text-anchor=\"middle\">t</text>\n";

    int legend = 0;
    auto legend_entry = [&](const std::string& text, const char* color, bool filled) {
        const double y = kTop + 10 + 18 * legend++;
        const double x = kLeft + pw + 12;
        if (filled) {
            os << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 8) << "\" width=\"16\" height=\"10\" fill=\"" << color
               << "\" fill-opacity=\"0.35\" stroke=\"" << color << "\"/>\n";
        } else {
            os << "<line x1=\"" << num(x) << "\" y1=\"" << num(y - 3) << "\" x2=\"" << num(x + 16) << "\" y2=\""
               << num(y - 3) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        }
        os << "<text x=\"" << num(x + 22) << "\" y=\"" << num(y) << "\">" << escape(text) << "</text>\n";
    };

    for (std::size_t i = 0; i < bands.size(); ++i) {
        const auto& b = bands[i];
        const char* color = kBandColors[i % 3];
        os << "<path fill=\"" << color << "\" fill-opacity=\"0.35\" stroke=\"" << color
           << "\" stroke-width=\"0.5\" d=\"";
        for (std::size_t k = 0; k < b.hi.size(); ++k) {
            os << (k == 0 ? "M" : "L") << num(sx(b.t_lo[k])) << ',' << num(sy(b.hi[k])) << 'L' << num(sx(b.t_hi[k]))
               << ',' << num(sy(b.hi[k]));
        }
        for (std::size_t k = b.lo.size(); k-- > 0;) {
            os << 'L' << num(sx(b.t_hi[k])) << ',' << num(sy(b.lo[k])) << 'L' << num(sx(b.t_lo[k])) << ','
               << num(sy(b.lo[k]));
        }
        os << "Z\"/>\n";
        legend_entry(b.label, color, true);
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const char* color = kLineColors[i % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t k = 0; k < l.t.size(); ++k) {
            os << num(sx(l.t[k])) << ',' << num(sy(l.y[k])) << ' ';
        }
        os << "\"/>\n";
        legend_entry(l.label, color, false);
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace setprop::cli
