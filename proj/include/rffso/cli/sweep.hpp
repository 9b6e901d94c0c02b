#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rffso/cli/config.hpp"

namespace rffso::cli {

struct ResultRow {
    std::string curve;
    Axis axis = Axis::UdDb;
    double axis_value = 0.0;
    MetricName metric = MetricName::Sop1;
    Evaluator evaluator = Evaluator::Closed;
    double value = 0.0;
    std::optional<double> std_error;  // mc only
    std::optional<std::uint64_t> n_samples;
    std::string error_flag = "ok";  // ok | clamped | error
    std::string message;            // error text, not written to the CSV
};

struct SweepOptions {
    unsigned threads = 0;    // 0: hardware concurrency
    unsigned mc_streams = 8;  // RNG streams per mc cell (fixed, so results do not depend on threads)
};

// Cells are (curve, axis point, metric, evaluator) in that nesting order; the asymptotic
// evaluator exists only for sop1/sop2 and is skipped for the spsc metrics.
std::vector<ResultRow> run_sweep(const RunSpec& run, const SweepOptions& opt = {});

// evaluates a single cell; never throws (errors land in error_flag / message)
ResultRow evaluate_cell(const ScenarioSpec& scenario, MetricName metric, Evaluator evaluator,
                        const SweepSpec& sweep, std::uint64_t cell_index, unsigned mc_streams);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ResultRow& r);

// shortest round-trip decimal form
std::string format_double(double v);

}  // namespace rffso::cli
