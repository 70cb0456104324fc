// Copyright 2026 The qreuse authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qreuse/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace qreuse {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr char kCsvHeader[] =
    "L,xi0,trials,emp_P0,se_P0,emp_R,analytic_R,emp_success_rate,mean_cycles,mean_reuses,"
    "qram_queries_per_success";

ordered_json estimate_json(const Estimate& est) {
    return ordered_json{{"value", est.value}, {"se", est.radius}, {"reliable", est.reliable}};
}

ordered_json row_json(const ReportRow& row) {
    const SweepStats& s = row.stats;
    ordered_json j;
    j["L"] = row.reliability;
    j["xi0"] = row.xi0;
    j["trials"] = s.trials;
    j["emp_P0"] = estimate_json(s.p0);
    j["emp_R"] = estimate_json(s.reusability);
    j["emp_success_rate"] = estimate_json(s.success_rate);
    j["mean_cycles"] = estimate_json(s.mean_cycles);
    j["mean_reuses"] = estimate_json(s.mean_reuses);
    j["q_consistent"] = {estimate_json(s.q_consistent[0]), estimate_json(s.q_consistent[1])};
    j["q_inconsistent"] = {estimate_json(s.q_inconsistent[0]), estimate_json(s.q_inconsistent[1])};
    j["qram_queries_per_success"] = s.qram_queries_per_success;
    j["single_qram_query"] = s.single_qram_query;
    j["successes"] = s.successes;
    j["misclassified"] = s.misclassified;
    const AnalyticStats& a = s.analytic;
    j["analytic"] = ordered_json{{"P", {a.p_alpha[0], a.p_alpha[1]}},
                                 {"Q_consistent", {a.q_consistent[0], a.q_consistent[1]}},
                                 {"Q_inconsistent", {a.q_inconsistent[0], a.q_inconsistent[1]}},
                                 {"R", a.reusability},
                                 {"success_per_cycle", a.success_per_cycle},
                                 {"expected_cycles", a.expected_cycles},
                                 {"bound", a.bound}};
    return j;
}

double plot_x(double reliability) { return 70.0 + reliability * 540.0; }
double plot_y(double r) { return 20.0 + (1.0 - std::min(std::max(r, 0.0), 1.0)) * 400.0; }

void append_svg_line(std::string& out, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    out += buf;
    out += '\n';
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string csv_report(const std::vector<ReportRow>& rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const ReportRow& row : rows) {
        const SweepStats& s = row.stats;
        out += format_number(row.reliability);
        out += ',';
        out += format_number(row.xi0);
        out += ',';
        out += std::to_string(s.trials);
        out += ',';
        out += format_number(s.p0.value);
        out += ',';
        out += format_number(s.p0.radius);
        out += ',';
        out += format_number(s.reusability.value);
        out += ',';
        out += format_number(s.analytic.reusability);
        out += ',';
        out += format_number(s.success_rate.value);
        out += ',';
        out += format_number(s.mean_cycles.value);
        out += ',';
        out += format_number(s.mean_reuses.value);
        out += ',';
        out += format_number(s.qram_queries_per_success);
        out += '\n';
    }
    return out;
}

std::string json_report(const std::vector<ReportRow>& rows) {
    ordered_json j;
    j["rows"] = ordered_json::array();
    for (const ReportRow& row : rows) {
        j["rows"].push_back(row_json(row));
    }
    return j.dump(2) + "\n";
}

std::string csv_bound_report(const BoundSweepResult& r) {
    std::string out =
        "points,samples,witnesses,violations,witness_violations,max_candidate,max_excess,"
        "max_saturation_gap\n";
    out += std::to_string(r.points) + ',' + std::to_string(r.samples) + ',' +
           std::to_string(r.witnesses) + ',' + std::to_string(r.violations) + ',' +
           std::to_string(r.witness_violations) + ',' + format_number(r.max_candidate) + ',' +
           format_number(r.max_excess) + ',' + format_number(r.max_saturation_gap) + '\n';
    return out;
}

std::string json_bound_report(const BoundSweepResult& r) {
    ordered_json j{{"points", r.points},
                   {"samples", r.samples},
                   {"witnesses", r.witnesses},
                   {"violations", r.violations},
                   {"witness_violations", r.witness_violations},
                   {"max_candidate", r.max_candidate},
                   {"max_excess", r.max_excess},
                   {"max_saturation_gap", r.max_saturation_gap}};
    return j.dump(2) + "\n";
}

std::string svg_reusability_plot(const std::vector<ReportRow>& rows) {
    std::string out;
    out.reserve(4096);
    append_svg_line(out,
                    "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
                    "viewBox=\"0 0 640 480\">");
    append_svg_line(out, "<rect width=\"640\" height=\"480\" fill=\"white\"/>");

    for (int i = 0; i <= 5; ++i) {
        const double v = i / 5.0;
        append_svg_line(out,
                        "<line x1=\"%.1f\" y1=\"420\" x2=\"%.1f\" y2=\"20\" stroke=\"#dddddd\"/>",
                        plot_x(v), plot_x(v));
        append_svg_line(out,
                        "<line x1=\"70\" y1=\"%.1f\" x2=\"610\" y2=\"%.1f\" stroke=\"#dddddd\"/>",
                        plot_y(v), plot_y(v));
        append_svg_line(out,
                        "<text x=\"%.1f\" y=\"438\" font-size=\"12\" text-anchor=\"middle\" "
                        "font-family=\"sans-serif\">%.1f</text>",
                        plot_x(v), v);
        append_svg_line(out,
                        "<text x=\"62\" y=\"%.1f\" font-size=\"12\" text-anchor=\"end\" "
                        "font-family=\"sans-serif\">%.1f</text>",
                        plot_y(v) + 4.0, v);
    }
    append_svg_line(out, "<line x1=\"70\" y1=\"420\" x2=\"610\" y2=\"420\" stroke=\"black\"/>");
    append_svg_line(out, "<line x1=\"70\" y1=\"20\" x2=\"70\" y2=\"420\" stroke=\"black\"/>");
    append_svg_line(out,
                    "<text x=\"340\" y=\"466\" font-size=\"14\" text-anchor=\"middle\" "
                    "font-family=\"sans-serif\">oracle reliability L</text>");
    append_svg_line(out,
                    "<text x=\"20\" y=\"220\" font-size=\"14\" text-anchor=\"middle\" "
                    "font-family=\"sans-serif\" transform=\"rotate(-90 20 220)\">reusability "
                    "R</text>");

    append_svg_line(out,
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#888888\" "
                    "stroke-dasharray=\"6 3\"/>",
                    plot_x(0.0), plot_y(1.0), plot_x(1.0), plot_y(0.0));
    append_svg_line(out,
                    "<text x=\"480\" y=\"40\" font-size=\"12\" fill=\"#555555\" "
                    "font-family=\"sans-serif\">analytic R = 1 - L</text>");

    for (const ReportRow& row : rows) {
        const double x = plot_x(row.reliability);
        const double r = row.stats.reusability.value;
        const double se = row.stats.reusability.radius;
        if (std::isfinite(r)) {
            if (std::isfinite(se) && se > 0.0) {
                append_svg_line(out,
                                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                                "stroke=\"#1f6fb4\"/>",
                                x, plot_y(r - se), x, plot_y(r + se));
            }
            append_svg_line(out, "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"#1f6fb4\"/>", x,
                            plot_y(r));
        }
    }
    append_svg_line(out, "</svg>");
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("failed while writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ec2;
        fs::remove(tmp, ec2);
        throw IoError("cannot rename temporary file onto '" + path + "': " + ec.message());
    }
}

}  // namespace qreuse
