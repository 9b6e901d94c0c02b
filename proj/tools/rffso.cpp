// rffso: secrecy metrics of the RF-FSO relay link, swept over one parameter, as CSV.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rffso/cli/config.hpp"
#include "rffso/cli/sweep.hpp"
#include "rffso/errors.hpp"

using namespace rffso;
using namespace rffso::cli;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(' ');
        const auto e = item.find_last_not_of(' ');
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy outage / SPSC sweeps for the RF-FSO relay link"};
    app.allow_extras(false);

    std::string config_path, preset, axis, metrics, evaluators, out_path = "-";
    std::optional<double> start, stop;
    std::optional<int> points;
    std::optional<std::uint64_t> mc_samples, seed;

    auto* cfg_opt = app.add_option("--config", config_path, "key=value config file ([scenario] / [sweep])");
    std::string preset_help = "named preset:";
    for (const auto& n : preset_names()) preset_help += " " + n;
    app.add_option("--preset", preset, preset_help)->excludes(cfg_opt);
    app.add_option("--axis", axis, "phi_sr_db | phi_se_db | Ud_db | Ue_db | target_rate | eps");
    app.add_option("--start", start, "first axis value");
    app.add_option("--stop", stop, "last axis value");
    app.add_option("--points", points, "number of axis points (>= 2)");
    app.add_option("--metrics", metrics, "comma list of sop1, sop2, spsc1, spsc2");
    app.add_option("--evaluators", evaluators, "comma list of closed, asymptotic, exact_quadrature, mc");
    app.add_option("--mc-samples", mc_samples, "Monte Carlo samples per cell (>= 10000)");
    app.add_option("--seed", seed, "Monte Carlo seed");
    app.add_option("--out", out_path, "CSV destination, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    RunSpec run;
    try {
        if (!config_path.empty())
            run = load_config(config_path);
        else if (!preset.empty())
            run = named_preset(preset);
        else {
            run.name = "default";
            run.curves.push_back({"default", ScenarioSpec{}});
        }
        SweepSpec& w = run.sweep;
        if (!axis.empty()) w.axis = parse_axis(axis);
        if (start) w.start = *start;
        if (stop) w.stop = *stop;
        if (points) w.points = *points;
        if (!metrics.empty()) {
            w.metrics.clear();
            for (const auto& m : split(metrics)) w.metrics.push_back(parse_metric(m));
        }
        if (!evaluators.empty()) {
            w.evaluators.clear();
            for (const auto& e : split(evaluators)) w.evaluators.push_back(parse_evaluator(e));
        }
        if (mc_samples) w.mc_samples = *mc_samples;
        if (seed) w.seed = *seed;
        validate_run(run);
    } catch (const UnsupportedCaseError& e) {
        std::cerr << "rffso: unsupported case: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "rffso: configuration error: " << e.what() << "\n";
        return kExitConfig;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (out_path != "-") {
        file.open(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "rffso: cannot write '" << out_path << "'\n";
            return kExitConfig;
        }
        out = &file;
    }

    const auto rows = run_sweep(run);
    write_csv_header(*out);
    int failures = 0, clamped = 0;
    for (const auto& r : rows) {
        write_csv_row(*out, r);
        if (r.error_flag == "error") {
            ++failures;
            std::cerr << "rffso: " << r.curve << " " << to_string(r.axis) << "=" << format_double(r.axis_value) << " "
                      << to_string(r.metric) << "/" << to_string(r.evaluator) << ": " << r.message << "\n";
        }
        clamped += r.error_flag == "clamped";
    }
    out->flush();

    std::cerr << "rffso: " << run.name << ": " << run.curves.size() << " curve(s), " << run.sweep.points
              << " point(s) on " << to_string(run.sweep.axis) << ", " << rows.size() << " row(s)";
    if (clamped) std::cerr << ", " << clamped << " clamped";
    if (failures) std::cerr << ", " << failures << " failed";
    std::cerr << "\n";
    return failures ? kExitPartial : 0;
}
