#include "sns/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sns/io.hpp"

namespace sns {

namespace {

struct Mapper {
    double x0, x1, y0, y1;          // data ranges (log10)
    double px0, px1, py0, py1;      // pixel ranges

    double x(double logv) const { return px0 + (logv - x0) / (x1 - x0) * (px1 - px0); }
    double y(double logv) const { return py0 + (logv - y0) / (y1 - y0) * (py1 - py0); }
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << v;
    return os.str();
}

std::string sci(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << v;
    return os.str();
}

}  // namespace

std::string convergence_svg(const ErrorReport& report) {
    const int W = 640, H = 480;
    const double ml = 80, mr = 30, mt = 40, mb = 60;

    double lxmin = 1e300, lxmax = -1e300, lymin = 1e300, lymax = -1e300;
    for (const LevelStats& l : report.levels) {
        const double lx = std::log10(l.dt);
        lxmin = std::min(lxmin, lx);
        lxmax = std::max(lxmax, lx);
        const double hi = l.mse_mean + 2.0 * l.mse_stderr;
        double lo = l.mse_mean - 2.0 * l.mse_stderr;
        if (lo <= 0.0) lo = l.mse_mean * 1e-2;
        lymin = std::min(lymin, std::log10(lo));
        lymax = std::max(lymax, std::log10(hi));
    }
    lxmin -= 0.15;
    lxmax += 0.15;
    lymin -= 0.3;
    lymax += 0.3;

    Mapper map{lxmin, lxmax, lymax, lymin, ml, W - mr, mt, H - mb};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
          "font-family=\"sans-serif\">mean-square temporal error vs dt (log-log)</text>\n";

    // frame
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (W - ml - mr)
       << "\" height=\"" << (H - mt - mb)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // decade ticks
    for (int e = static_cast<int>(std::floor(lxmin)); e <= static_cast<int>(std::ceil(lxmax));
         ++e) {
        if (e < lxmin || e > lxmax) continue;
        const double x = map.x(e);
        os << "<line x1=\"" << num(x) << "\" y1=\"" << (H - mb) << "\" x2=\"" << num(x)
           << "\" y2=\"" << (H - mb + 6) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(x) << "\" y=\"" << (H - mb + 22)
           << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">1e" << e
           << "</text>\n";
    }
    for (int e = static_cast<int>(std::floor(lymin)); e <= static_cast<int>(std::ceil(lymax));
         ++e) {
        if (e < lymin || e > lymax) continue;
        const double y = map.y(e);
        os << "<line x1=\"" << (ml - 6) << "\" y1=\"" << num(y) << "\" x2=\"" << ml << "\" y2=\""
           << num(y) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << (ml - 10) << "\" y=\"" << num(y + 4)
           << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">1e" << e
           << "</text>\n";
    }
    os << "<text x=\"" << W / 2 << "\" y=\"" << (H - 14)
       << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">dt</text>\n";
    os << "<text x=\"18\" y=\"" << H / 2
       << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
          "transform=\"rotate(-90 18 "
       << H / 2 << ")\">mse</text>\n";

    // order-1/2 guide (slope 1 for mse) anchored near the coarsest level
    if (!report.levels.empty()) {
        const LevelStats& anchor = report.levels.front();
        const double la = std::log10(anchor.dt), lv = std::log10(anchor.mse_mean) - 0.2;
        const double g0x = lxmin + 0.05, g1x = lxmax - 0.05;
        const double g0y = lv + (g0x - la), g1y = lv + (g1x - la);
        os << "<line x1=\"" << num(map.x(g0x)) << "\" y1=\"" << num(map.y(g0y)) << "\" x2=\""
           << num(map.x(g1x)) << "\" y2=\"" << num(map.y(g1y))
           << "\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n";
        os << "<text x=\"" << num(map.x(g1x) - 4) << "\" y=\"" << num(map.y(g1y) - 6)
           << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\" "
              "fill=\"#666\">order 1/2 (mse ~ dt)</text>\n";
    }

    // error bars and points
    std::ostringstream poly;
    for (const LevelStats& l : report.levels) {
        const double x = map.x(std::log10(l.dt));
        const double y = map.y(std::log10(l.mse_mean));
        const double hi = l.mse_mean + 2.0 * l.mse_stderr;
        double lo = l.mse_mean - 2.0 * l.mse_stderr;
        if (lo <= 0.0) lo = l.mse_mean * 1e-2;
        const double yh = map.y(std::log10(hi)), yl = map.y(std::log10(lo));
        os << "<line x1=\"" << num(x) << "\" y1=\"" << num(yh) << "\" x2=\"" << num(x)
           << "\" y2=\"" << num(yl) << "\" stroke=\"#1f77b4\"/>\n";
        os << "<line x1=\"" << num(x - 4) << "\" y1=\"" << num(yh) << "\" x2=\"" << num(x + 4)
           << "\" y2=\"" << num(yh) << "\" stroke=\"#1f77b4\"/>\n";
        os << "<line x1=\"" << num(x - 4) << "\" y1=\"" << num(yl) << "\" x2=\"" << num(x + 4)
           << "\" y2=\"" << num(yl) << "\" stroke=\"#1f77b4\"/>\n";
        os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y)
           << "\" r=\"3.5\" fill=\"#1f77b4\"/>\n";
        os << "<title>M=" << l.level << " mse=" << sci(l.mse_mean) << "</title>\n";
        poly << num(x) << ',' << num(y) << ' ';
    }
    os << "<polyline points=\"" << poly.str()
       << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";

    os << "<text x=\"" << (W - mr - 6) << "\" y=\"" << (mt + 18)
       << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">alpha_fit = "
       << num(report.alpha_fit) << " (" << report.samples << " samples)</text>\n";
    os << "</svg>\n";
    return os.str();
}

void write_convergence_svg(const std::string& path, const ErrorReport& report) {
    write_text_file(path, convergence_svg(report));
}

}  // namespace sns
