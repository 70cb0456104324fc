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

#include "qreuse/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>

#include "CLI11.hpp"

#include "qreuse/analysis.hpp"
#include "qreuse/errors.hpp"
#include "qreuse/protocol.hpp"
#include "qreuse/report.hpp"
#include "qreuse/rng.hpp"
#include "qreuse/statevec.hpp"

namespace qreuse {
namespace {

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception&) {
        throw UsageError(what + ": invalid number '" + text + "'");
    }
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    try {
        if (!text.empty() && text[0] == '-') {
            throw std::invalid_argument(text);
        }
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(text, &pos);
        if (pos != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception&) {
        throw UsageError(what + ": invalid unsigned integer '" + text + "'");
    }
}

bool parse_bool(const std::string& text, const std::string& what) {
    if (text == "true" || text == "1") {
        return true;
    }
    if (text == "false" || text == "0") {
        return false;
    }
    throw UsageError(what + ": expected true/false, got '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

// The config file must be known before CLI11 parses, so it is located by a
// plain scan over argv; both "--config path" and "--config=path" count.
std::string find_config_path(int argc, const char* const* argv) {
    std::string path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config") {
            if (i + 1 >= argc) {
                throw UsageError("--config requires a file path");
            }
            path = argv[i + 1];
        } else if (arg.rfind("--config=", 0) == 0) {
            path = arg.substr(9);
        }
    }
    return path;
}

std::string find_subcommand(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "run" || arg == "sweep" || arg == "verify-bounds") {
            return arg;
        }
    }
    return {};
}

std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config file '" + path + "'");
    }
    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config file '" + path + "' line " + std::to_string(line_no) +
                             ": expected key=value");
        }
        const std::string key = trim(text.substr(0, eq));
        if (key.empty()) {
            throw UsageError("config file '" + path + "' line " + std::to_string(line_no) +
                             ": empty key");
        }
        entries[key] = trim(text.substr(eq + 1));
    }
    return entries;
}

void check_unit_interval(double v, const std::string& what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw UsageError(what + ": value " + format_number(v) + " not in [0, 1]");
    }
}

void apply_dimension_override() {
    const char* raw = std::getenv("QREUSE_MAX_DIM");
    if (raw == nullptr || *raw == '\0') {
        return;
    }
    const std::uint64_t value = parse_u64(raw, "QREUSE_MAX_DIM");
    if (value < 2) {
        throw UsageError("QREUSE_MAX_DIM: must be at least 2");
    }
    max_state_dimension() = static_cast<std::size_t>(value);
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        std::fflush(stdout);
        return;
    }
    write_atomic(path, content);
}

std::string plot_path(const std::string& output_path) {
    std::filesystem::path p(output_path);
    p.replace_extension(".svg");
    if (p.string() == output_path) {
        p += ".svg";
    }
    return p.string();
}

int execute_runs(const ExperimentSpec& spec) {
    std::optional<ConceptDataset> file_dataset;
    std::vector<double> xi_values = spec.xi0_grid;
    if (!spec.dataset_path.empty()) {
        file_dataset = load_dataset(spec.dataset_path);
        xi_values = {partition(*file_dataset).xi0};
    }

    std::vector<ReportRow> rows;
    rows.reserve(spec.reliability_grid.size() * xi_values.size());
    std::uint64_t point_index = 0;
    for (const double reliability : spec.reliability_grid) {
        for (const double xi0 : xi_values) {
            ProtocolConfig cfg;
            cfg.reliability = reliability;
            cfg.dataset = file_dataset
                              ? *file_dataset
                              : two_class_dataset(xi0, static_cast<std::size_t>(spec.n_bits));
            cfg.mode = spec.mode;
            cfg.max_cycles = spec.max_cycles;
            cfg.trials = spec.trials;
            cfg.master_seed = derive_seed(spec.seed, point_index);
            rows.push_back(ReportRow{reliability, xi0, monte_carlo(cfg)});
            ++point_index;
        }
    }

    emit(spec.output_path,
         spec.format == ReportFormat::kCsv ? csv_report(rows) : json_report(rows));
    if (spec.plot) {
        emit(plot_path(spec.output_path), svg_reusability_plot(rows));
    }
    return 0;
}

int execute_verify(const ExperimentSpec& spec) {
    BoundSweepResult result;
    if (spec.fixed_point) {
        BoundPoint point;
        point.xi0 = spec.xi0_grid.front();
        point.reliability = spec.reliability_grid.front();
        result = verify_bound(point, spec.trials, spec.seed);
    } else {
        const std::size_t points = 128;
        const std::size_t per_point = static_cast<std::size_t>((spec.trials + points - 1) / points);
        result = verify_bound_random(points, per_point, spec.seed);
    }

    emit(spec.output_path,
         spec.format == ReportFormat::kCsv ? csv_bound_report(result) : json_bound_report(result));
    return (result.violations > 0 || result.witness_violations > 0) ? 2 : 0;
}

}  // namespace

ReportFormat parse_report_format(const std::string& text) {
    if (text == "csv") {
        return ReportFormat::kCsv;
    }
    if (text == "json") {
        return ReportFormat::kJson;
    }
    throw UsageError("--format: expected 'csv' or 'json', got '" + text + "'");
}

std::vector<double> parse_grid(const std::string& text, const std::string& flag_name) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw UsageError(flag_name + ": expected start:stop:step, got '" + text + "'");
        }
        const double start = parse_double(parts[0], flag_name);
        const double stop = parse_double(parts[1], flag_name);
        const double step = parse_double(parts[2], flag_name);
        if (!(step > 0.0)) {
            throw UsageError(flag_name + ": step must be positive");
        }
        if (stop < start) {
            throw UsageError(flag_name + ": stop must not be below start");
        }
        for (std::size_t k = 0;; ++k) {
            const double v = start + static_cast<double>(k) * step;
            if (v > stop + 1e-9) {
                break;
            }
            values.push_back(std::min(v, stop));
            if (values.size() > 100000) {
                throw UsageError(flag_name + ": grid too large");
            }
        }
    } else {
        for (const std::string& part : split(text, ',')) {
            const std::string item = trim(part);
            if (item.empty()) {
                throw UsageError(flag_name + ": empty grid entry in '" + text + "'");
            }
            values.push_back(parse_double(item, flag_name));
        }
    }
    if (values.empty()) {
        throw UsageError(flag_name + ": empty grid");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        check_unit_interval(values[i], flag_name);
        if (i > 0 && !(values[i] > values[i - 1])) {
            throw UsageError(flag_name + ": grid values must be strictly ascending");
        }
    }
    return values;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t point_index) {
    std::uint64_t state = master_seed ^ (0x9E3779B97F4A7C15ull * (point_index + 1));
    return splitmix64(state);
}

std::optional<ExperimentSpec> parse_args(int argc, const char* const* argv) {
    double reliability = 0.5;
    std::string reliability_grid_text = "0.1:0.9:0.1";
    double xi0 = 0.5;
    std::string xi0_grid_text = "0.5";
    std::string dataset_path;
    int n_bits = 1;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::string mode_text = "reduced";
    std::uint64_t max_cycles = 10000;
    std::string output_path;
    std::string format_text = "csv";
    bool plot = false;
    std::string config_path_opt;  // bound for --help only; the prescan reads the value

    const std::string config_path = find_config_path(argc, argv);
    const std::string sub_name = find_subcommand(argc, argv);
    bool reliability_in_config = false;

    // Config values become the new defaults, then CLI11 parses the real flags
    // over them; that realizes the CLI > config > defaults precedence.
    if (!config_path.empty() && !sub_name.empty()) {
        using Setter = std::function<void(const std::string&)>;
        std::map<std::string, Setter> setters;
        const std::string ctx = "config file '" + config_path + "'";
        if (sub_name == "run" || sub_name == "verify-bounds") {
            setters["reliability"] = [&](const std::string& v) {
                reliability = parse_double(v, ctx + ": reliability");
                check_unit_interval(reliability, ctx + ": reliability");
                reliability_in_config = true;
            };
            setters["xi0"] = [&](const std::string& v) {
                xi0 = parse_double(v, ctx + ": xi0");
                check_unit_interval(xi0, ctx + ": xi0");
            };
        }
        if (sub_name == "sweep") {
            setters["reliability-grid"] = [&](const std::string& v) { reliability_grid_text = v; };
            setters["xi0"] = [&](const std::string& v) { xi0_grid_text = v; };
        }
        if (sub_name != "verify-bounds") {
            setters["dataset"] = [&](const std::string& v) { dataset_path = v; };
            setters["n-bits"] = [&](const std::string& v) {
                const std::uint64_t b = parse_u64(v, ctx + ": n-bits");
                if (b < 1 || b > 20) {
                    throw UsageError(ctx + ": n-bits must be in [1, 20]");
                }
                n_bits = static_cast<int>(b);
            };
            setters["mode"] = [&](const std::string& v) {
                if (v != "reduced" && v != "full") {
                    throw UsageError(ctx + ": mode must be 'reduced' or 'full'");
                }
                mode_text = v;
            };
            setters["max-cycles"] = [&](const std::string& v) {
                max_cycles = parse_u64(v, ctx + ": max-cycles");
                if (max_cycles < 1 || max_cycles > 0xFFFFFFFFull) {
                    throw UsageError(ctx + ": max-cycles out of range");
                }
            };
            setters["plot"] = [&](const std::string& v) { plot = parse_bool(v, ctx + ": plot"); };
        }
        setters["trials"] = [&](const std::string& v) {
            trials = parse_u64(v, ctx + ": trials");
            if (trials < 1) {
                throw UsageError(ctx + ": trials must be positive");
            }
        };
        setters["seed"] = [&](const std::string& v) { seed = parse_u64(v, ctx + ": seed"); };
        setters["output"] = [&](const std::string& v) { output_path = v; };
        setters["format"] = [&](const std::string& v) {
            if (v != "csv" && v != "json") {
                throw UsageError(ctx + ": format must be 'csv' or 'json'");
            }
            format_text = v;
        };

        for (const auto& [key, value] : load_config(config_path)) {
            const auto it = setters.find(key);
            if (it == setters.end()) {
                throw UsageError(ctx + ": unknown key '" + key + "' for command '" + sub_name +
                                 "'");
            }
            it->second(value);
        }
    }

    CLI::App app{"Monte Carlo harness for learning from an unreliable oracle"};
    app.require_subcommand(1);
    app.add_option("--config", config_path_opt,
                   "flat key=value config file; CLI flags take precedence");

    CLI::App* run = app.add_subcommand("run", "Monte Carlo at a single (L, xi0) point");
    CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo over an (L, xi0) grid");
    CLI::App* verify =
        app.add_subcommand("verify-bounds", "adversarial sweep over random recovery unitaries");

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--trials", trials, "number of Monte Carlo trials")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "master RNG seed");
        cmd->add_option("--output", output_path, "report path (default: stdout)");
        cmd->add_option("--format", format_text, "report format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--config", config_path_opt,
                        "flat key=value config file; CLI flags take precedence");
    };
    const auto add_model = [&](CLI::App* cmd) {
        cmd->add_option("--dataset", dataset_path,
                        "dataset CSV path; overrides --xi0 and --n-bits");
        cmd->add_option("--n-bits", n_bits, "data register width of the synthetic dataset")
            ->check(CLI::Range(1, 20));
        cmd->add_option("--mode", mode_text, "simulation mode: reduced or full")
            ->check(CLI::IsMember({"reduced", "full"}));
        cmd->add_option("--max-cycles", max_cycles, "per-trial cycle cap")
            ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{0xFFFFFFFFull}));
        cmd->add_flag("--plot", plot, "also write an SVG plot of R vs L next to --output");
    };

    run->add_option("--reliability", reliability, "oracle reliability L")
        ->check(CLI::Range(0.0, 1.0));
    run->add_option("--xi0", xi0, "class-0 weight of the synthetic dataset")
        ->check(CLI::Range(0.0, 1.0));
    add_model(run);
    add_common(run);

    sweep->add_option("--reliability-grid", reliability_grid_text,
                      "L grid: start:stop:step or a comma list");
    sweep->add_option("--xi0", xi0_grid_text, "xi0 grid: start:stop:step or a comma list");
    add_model(sweep);
    add_common(sweep);

    verify->add_option("--reliability", reliability,
                       "pin the sweep to this L (default: random points)")
        ->check(CLI::Range(0.0, 1.0));
    verify->add_option("--xi0", xi0, "xi0 of the pinned point")->check(CLI::Range(0.0, 1.0));
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    ExperimentSpec spec;
    if (run->parsed()) {
        spec.command = Command::kRun;
        spec.reliability_grid = {reliability};
        spec.xi0_grid = {xi0};
    } else if (sweep->parsed()) {
        spec.command = Command::kSweep;
        spec.reliability_grid = parse_grid(reliability_grid_text, "--reliability-grid");
        spec.xi0_grid = parse_grid(xi0_grid_text, "--xi0");
    } else {
        spec.command = Command::kVerifyBounds;
        spec.reliability_grid = {reliability};
        spec.xi0_grid = {xi0};
        spec.fixed_point = reliability_in_config || verify->count("--reliability") > 0;
    }
    spec.dataset_path = dataset_path;
    spec.n_bits = n_bits;
    spec.trials = trials;
    spec.seed = seed;
    spec.mode = parse_sim_mode(mode_text);
    spec.max_cycles = static_cast<std::uint32_t>(max_cycles);
    spec.output_path = output_path;
    spec.format = parse_report_format(format_text);
    spec.plot = plot;
    if (spec.plot && spec.output_path.empty()) {
        throw UsageError("--plot requires --output");
    }
    return spec;
}

int execute(const ExperimentSpec& spec) {
    apply_dimension_override();
    if (spec.command == Command::kVerifyBounds) {
        return execute_verify(spec);
    }
    return execute_runs(spec);
}

int run_cli(int argc, const char* const* argv) {
    try {
        const auto spec = parse_args(argc, argv);
        if (!spec) {
            return 0;
        }
        return execute(*spec);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace qreuse
