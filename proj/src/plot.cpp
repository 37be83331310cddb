#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "parse_util.hpp"
#include "vtolctl/errors.hpp"
#include "vtolctl/sim.hpp"

namespace vtolctl {

namespace {

using detail::fmt17;

constexpr int kWidth = 960;
constexpr int kHeight = 540;
constexpr double kLeft = 70.0, kRight = 936.0, kTop = 46.0, kBottom = 492.0;

struct Series {
    std::string name;
    std::string color;
    std::vector<double> y;
};

std::string f2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fg(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

double nice_step(double range) {
    const double raw = range / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    if (norm < 1.5) return mag;
    if (norm < 3.5) return 2.0 * mag;
    if (norm < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

void render(const std::string& path, const std::string& title, const std::string& y_label,
            const std::vector<double>& t, const std::vector<Series>& series) {
    double x_lo = t.front(), x_hi = t.back();
    if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
    double y_lo = series[0].y[0], y_hi = y_lo;
    for (const Series& s : series) {
        for (double v : s.y) {
            if (!std::isfinite(v)) continue;
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    }
    if (!(y_hi > y_lo)) {
        const double pad = std::max(1e-9, std::abs(y_lo) * 1e-3);
        y_lo -= pad;
        y_hi += pad;
    }
    const double y_pad = 0.04 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * (kRight - kLeft); };
    auto py = [&](double y) { return kBottom - (y - y_lo) / (y_hi - y_lo) * (kBottom - kTop); };

    std::ofstream out(path);
    if (!out) throw IoError("cannot write plot file: " + path);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<metadata>\n";
    for (const Series& s : series) {
        double lo = s.y[0], hi = s.y[0];
        for (double v : s.y) {
            if (!std::isfinite(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        out << "series " << s.name << " min " << fmt17(lo) << " max " << fmt17(hi) << "\n";
    }
    out << "</metadata>\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

    // grid + ticks
    const double xs = nice_step(x_hi - x_lo);
    for (double x = std::ceil(x_lo / xs) * xs; x <= x_hi + 1e-9 * xs; x += xs) {
        const std::string c = f2(px(x));
        out << "<line x1=\"" << c << "\" y1=\"" << f2(kTop) << "\" x2=\"" << c << "\" y2=\""
            << f2(kBottom) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << c << "\" y=\"" << f2(kBottom + 18.0)
            << "\" font-family=\"Helvetica,Arial,sans-serif\" font-size=\"12\" "
               "text-anchor=\"middle\">"
            << fg(x) << "</text>\n";
    }
    const double ys = nice_step(y_hi - y_lo);
    for (double y = std::ceil(y_lo / ys) * ys; y <= y_hi + 1e-9 * ys; y += ys) {
        const std::string c = f2(py(y));
        out << "<line x1=\"" << f2(kLeft) << "\" y1=\"" << c << "\" x2=\"" << f2(kRight)
            << "\" y2=\"" << c << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << f2(kLeft - 8.0) << "\" y=\"" << f2(py(y) + 4.0)
            << "\" font-family=\"Helvetica,Arial,sans-serif\" font-size=\"12\" "
               "text-anchor=\"end\">"
            << fg(y) << "</text>\n";
    }
    out << "<rect x=\"" << f2(kLeft) << "\" y=\"" << f2(kTop) << "\" width=\""
        << f2(kRight - kLeft) << "\" height=\"" << f2(kBottom - kTop)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    for (const Series& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) out << ' ';
            out << f2(px(t[i])) << ',' << f2(py(s.y[i]));
        }
        out << "\"/>\n";
    }

    // title, axis labels, legend
    out << "<text x=\"" << f2(kLeft) << "\" y=\"28\" font-family=\"Helvetica,Arial,sans-serif\" "
           "font-size=\"16\">"
        << title << "</text>\n";
    out << "<text x=\"" << f2((kLeft + kRight) / 2.0) << "\" y=\"" << f2(kHeight - 10.0)
        << "\" font-family=\"Helvetica,Arial,sans-serif\" font-size=\"13\" "
           "text-anchor=\"middle\">t [s]</text>\n";
    out << "<text x=\"18\" y=\"" << f2((kTop + kBottom) / 2.0)
        << "\" font-family=\"Helvetica,Arial,sans-serif\" font-size=\"13\" "
           "text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << f2((kTop + kBottom) / 2.0) << ")\">" << y_label << "</text>\n";
    double ly = kTop + 16.0;
    for (const Series& s : series) {
        out << "<rect x=\"" << f2(kRight - 150.0) << "\" y=\"" << f2(ly - 9.0)
            << "\" width=\"12\" height=\"12\" fill=\"" << s.color << "\"/>\n";
        out << "<text x=\"" << f2(kRight - 132.0) << "\" y=\"" << f2(ly + 2.0)
            << "\" font-family=\"Helvetica,Arial,sans-serif\" font-size=\"12\">" << s.name
            << "</text>\n";
        ly += 18.0;
    }
    out << "</svg>\n";
    if (!out) throw IoError("failed writing plot file: " + path);
}

const char* kBlue = "#1f77b4";
const char* kRed = "#d62728";
const char* kGreen = "#2ca02c";

} // namespace

void plot(const RunLog& log, const std::string& out_dir) {
    if (log.records.empty()) throw ValidationError("cannot plot an empty log");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create plot directory: " + out_dir + " (" + ec.message() + ")");

    const std::size_t n = log.records.size();
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = log.records[i].t;

    auto column = [&](auto getter) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = getter(log.records[i]);
        return out;
    };
    const Vec3 p_r = log.config.p_r;

    const auto dir = std::filesystem::path(out_dir);
    render((dir / "position_error.svg").string(), "position error", "e_p [m]", t,
           {{"e_p_x", kBlue, column([&](const LogRecord& r) { return r.p.x - p_r.x; })},
            {"e_p_y", kRed, column([&](const LogRecord& r) { return r.p.y - p_r.y; })},
            {"e_p_z", kGreen, column([&](const LogRecord& r) { return r.p.z - p_r.z; })}});
    render((dir / "velocity.svg").string(), "velocity", "v [m/s]", t,
           {{"v_x", kBlue, column([](const LogRecord& r) { return r.v.x; })},
            {"v_y", kRed, column([](const LogRecord& r) { return r.v.y; })},
            {"v_z", kGreen, column([](const LogRecord& r) { return r.v.z; })}});
    render((dir / "angular_velocity.svg").string(), "commanded angular velocity",
           "omega [rad/s]", t,
           {{"omega_x", kBlue, column([](const LogRecord& r) { return r.omega_cmd.x; })},
            {"omega_y", kRed, column([](const LogRecord& r) { return r.omega_cmd.y; })},
            {"omega_z", kGreen, column([](const LogRecord& r) { return r.omega_cmd.z; })}});
    const double mass = log.config.plant.mass;
    render((dir / "thrust.svg").string(), "thrust force", "T [N]", t,
           {{"T", kBlue, column([&](const LogRecord& r) { return r.u_t * mass; })}});
}

} // namespace vtolctl
