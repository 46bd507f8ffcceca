#include "tdoslab/svg.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdoslab {
namespace {

// Fixed canvas; coordinates derive only from the input data, so output
// bytes are a pure function of the rows.
constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 64;
constexpr double kRight = 24;
constexpr double kTop = 48;
constexpr double kBottom = 56;

double plot_w() { return kWidth - kLeft - kRight; }
double plot_h() { return kHeight - kTop - kBottom; }

std::string num(double v) { return format_double(v); }

void open_svg(std::string& s, const std::string& title) {
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    s += "<rect width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         title + "</text>\n";
}

void y_axis(std::string& s, const std::string& label) {
    for (int i = 0; i <= 5; ++i) {
        const double frac = i / 5.0;
        const double y = kTop + plot_h() * (1.0 - frac);
        s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" +
             num(kWidth - kRight) + "\" y2=\"" + num(y) +
             "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(frac) +
             "</text>\n";
    }
    s += "<text x=\"16\" y=\"" + num(kTop + plot_h() / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 16 " +
         num(kTop + plot_h() / 2) + ")\">" + label + "</text>\n";
    s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(kTop + plot_h()) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + plot_h()) + "\" x2=\"" +
         num(kWidth - kRight) + "\" y2=\"" + num(kTop + plot_h()) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

void bar(std::string& s, double x, double y, double w, double h, const std::string& fill) {
    s += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
         num(h) + "\" fill=\"" + fill + "\"/>\n";
}

void legend(std::string& s, const std::vector<std::pair<std::string, std::string>>& items) {
    double x = kLeft;
    const double y = kHeight - 18;
    for (const auto& [label, color] : items) {
        bar(s, x, y - 10, 12, 12, color);
        s += "<text x=\"" + num(x + 16) + "\" y=\"" + num(y) +
             "\" font-family=\"sans-serif\" font-size=\"12\">" + label + "</text>\n";
        x += 26 + 9.0 * static_cast<double>(label.size());
    }
}

void require_rows(const std::vector<RunRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("chart: no rows to plot");
}

std::vector<RunRow> sorted_by_share(std::vector<RunRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const RunRow& a, const RunRow& b) {
        return a.attacker_share < b.attacker_share;
    });
    return rows;
}

std::string share_label(double share) { return num(share * 100.0) + "%"; }

}  // namespace

std::string availability_chart_svg(const std::string& title, const std::vector<RunRow>& rows_in) {
    require_rows(rows_in);
    const auto rows = sorted_by_share(rows_in);

    std::string s;
    open_svg(s, title);
    y_axis(s, "proportion of honest calls");

    const double slot = plot_w() / static_cast<double>(rows.size());
    const double bw = slot * 0.55;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const double x = kLeft + slot * (static_cast<double>(i) + 0.5) - bw / 2;
        const double h_complete = plot_h() * r.complete_mean;
        const double h_incomplete = plot_h() * r.incomplete_mean;
        const double h_unsuccessful = plot_h() * r.unsuccessful_mean;
        double y = kTop + plot_h();
        y -= h_complete;
        bar(s, x, y, bw, h_complete, "#2e7d32");
        y -= h_incomplete;
        bar(s, x, y, bw, h_incomplete, "#f9a825");
        y -= h_unsuccessful;
        bar(s, x, y, bw, h_unsuccessful, "#c62828");
        s += "<text x=\"" + num(x + bw / 2) + "\" y=\"" + num(kTop + plot_h() + 16) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
             share_label(r.attacker_share) + "</text>\n";
    }
    s += "<text x=\"" + num(kLeft + plot_w() / 2) + "\" y=\"" + num(kTop + plot_h() + 34) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">attacker share "
         "of total call rate</text>\n";
    legend(s, {{"complete", "#2e7d32"}, {"incomplete", "#f9a825"}, {"unsuccessful", "#c62828"}});
    s += "</svg>\n";
    return s;
}

std::string avg_incall_chart_svg(const std::string& title, const std::vector<RunRow>& rows_in) {
    require_rows(rows_in);
    const auto rows = sorted_by_share(rows_in);

    std::string s;
    open_svg(s, title);
    y_axis(s, "mean talked fraction of interrupted calls");

    const double slot = plot_w() / static_cast<double>(rows.size());
    const double bw = slot * 0.55;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const double x = kLeft + slot * (static_cast<double>(i) + 0.5) - bw / 2;
        const double h = plot_h() * r.avg_incall_mean;
        bar(s, x, kTop + plot_h() - h, bw, h, "#1565c0");
        s += "<text x=\"" + num(x + bw / 2) + "\" y=\"" + num(kTop + plot_h() + 16) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
             share_label(r.attacker_share) + "</text>\n";
    }
    s += "<text x=\"" + num(kLeft + plot_w() / 2) + "\" y=\"" + num(kTop + plot_h() + 34) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">attacker share "
         "of total call rate</text>\n";
    s += "</svg>\n";
    return s;
}

std::string occupancy_chart_svg(const std::string& title,
                                const std::vector<std::pair<double, double>>& series) {
    if (series.empty()) throw std::invalid_argument("chart: no samples to plot");

    std::string s;
    open_svg(s, title);
    y_axis(s, "attacker slots / capacity");

    const double t_max = std::max(series.back().first, 1e-9);
    std::string points;
    for (const auto& [t, v] : series) {
        const double x = kLeft + plot_w() * (t / t_max);
        const double y = kTop + plot_h() * (1.0 - v);
        points += num(x) + "," + num(y) + " ";
    }
    if (!points.empty()) points.pop_back();
    s += "<polyline fill=\"none\" stroke=\"#c62828\" stroke-width=\"1.5\" points=\"" + points +
         "\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double frac = i / 4.0;
        s += "<text x=\"" + num(kLeft + plot_w() * frac) + "\" y=\"" + num(kTop + plot_h() + 16) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
             num(t_max * frac) + "</text>\n";
    }
    s += "<text x=\"" + num(kLeft + plot_w() / 2) + "\" y=\"" + num(kTop + plot_h() + 34) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">time</text>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace tdoslab
