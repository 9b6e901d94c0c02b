#include "rffso/cli/sweep.hpp"

#include <atomic>
#include <charconv>
#include <thread>

#include "rffso/errors.hpp"
#include "rffso/montecarlo/estimators.hpp"
#include "rffso/secrecy/metrics.hpp"

namespace rffso::cli {

namespace {

struct CellSpec {
    std::size_t curve;
    double x;
    MetricName metric;
    Evaluator evaluator;
    std::uint64_t index;  // rng stream block for mc
};

bool applicable(MetricName m, Evaluator e) {
    return !(e == Evaluator::Asymptotic && (m == MetricName::Spsc1 || m == MetricName::Spsc2));
}

void take(ResultRow& row, const secrecy::Metric& m) {
    row.value = m.value;
    if (m.clamp_flagged) row.error_flag = "clamped";
}

std::string exception_name(const std::exception& e) {
    if (dynamic_cast<const AccuracyError*>(&e)) return "accuracy";
    if (dynamic_cast<const DegenerateParameterError*>(&e)) return "degenerate";
    if (dynamic_cast<const UnsupportedCaseError*>(&e)) return "unsupported";
    if (dynamic_cast<const InvalidParameterError*>(&e)) return "invalid";
    return "error";
}

}  // namespace

ResultRow evaluate_cell(const ScenarioSpec& s, MetricName metric, Evaluator ev, const SweepSpec& sweep,
                        std::uint64_t cell_index, unsigned mc_streams) {
    ResultRow row;
    row.metric = metric;
    row.evaluator = ev;
    row.axis = sweep.axis;
    try {
        const bool first = metric == MetricName::Sop1 || metric == MetricName::Spsc1;
        std::optional<secrecy::Scenario1Config> c1;
        std::optional<secrecy::Scenario2Config> c2;
        if (first)
            c1 = scenario1(s);
        else
            c2 = scenario2(s);
        switch (ev) {
            case Evaluator::Closed:
                switch (metric) {
                    case MetricName::Sop1: take(row, secrecy::sop1_lower(*c1)); break;
                    case MetricName::Sop2: take(row, secrecy::sop2_lower(*c2)); break;
                    case MetricName::Spsc1: take(row, secrecy::spsc1(*c1)); break;
                    case MetricName::Spsc2: take(row, secrecy::spsc2(*c2)); break;
                }
                break;
            case Evaluator::Asymptotic:
                if (metric == MetricName::Sop1)
                    take(row, secrecy::sop1_asymptotic(*c1));
                else
                    take(row, secrecy::sop2_asymptotic(*c2));
                break;
            case Evaluator::ExactQuadrature:
                // spsc is the complement of the exact outage event at zero rate
                if (metric == MetricName::Spsc1 || metric == MetricName::Spsc2) {
                    if (c1) c1->target_rate = 0.0;
                    if (c2) c2->target_rate = 0.0;
                    const auto m = first ? secrecy::sop1_exact_quadrature(*c1) : secrecy::sop2_exact_quadrature(*c2);
                    row.value = 1.0 - m.value;
                    if (m.clamp_flagged) row.error_flag = "clamped";
                } else {
                    take(row, first ? secrecy::sop1_exact_quadrature(*c1) : secrecy::sop2_exact_quadrature(*c2));
                }
                break;
            case Evaluator::Mc: {
                montecarlo::ParallelPlan plan;
                plan.seed = sweep.seed;
                plan.streams = mc_streams;
                plan.stream_offset = cell_index * mc_streams;
                plan.threads = 1;
                plan.exact_event = sweep.mc_exact_event;
                montecarlo::MetricKind kind{};
                switch (metric) {
                    case MetricName::Sop1: kind = montecarlo::MetricKind::Sop1; break;
                    case MetricName::Sop2: kind = montecarlo::MetricKind::Sop2; break;
                    case MetricName::Spsc1: kind = montecarlo::MetricKind::Spsc1; break;
                    case MetricName::Spsc2: kind = montecarlo::MetricKind::Spsc2; break;
                }
                const auto e = montecarlo::estimate_parallel(kind, c1 ? &*c1 : nullptr, c2 ? &*c2 : nullptr,
                                                             sweep.mc_samples, plan);
                row.value = e.value;
                row.std_error = e.std_error;
                row.n_samples = e.n_samples;
                break;
            }
        }
    } catch (const std::exception& e) {
        row.value = 0.0;
        row.std_error.reset();
        row.n_samples.reset();
        row.error_flag = "error";
        row.message = exception_name(e) + ": " + e.what();
    }
    return row;
}

std::vector<ResultRow> run_sweep(const RunSpec& run, const SweepOptions& opt) {
    run.sweep.validate();
    const auto grid = run.sweep.grid();
    std::vector<CellSpec> cells;
    std::uint64_t block = 0;  // one rng block per (curve, point, metric), shared by nothing else
    for (std::size_t c = 0; c < run.curves.size(); ++c)
        for (double x : grid)
            for (MetricName m : run.sweep.metrics) {
                for (Evaluator e : run.sweep.evaluators)
                    if (applicable(m, e)) cells.push_back({c, x, m, e, block});
                ++block;
            }

    std::vector<ResultRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const CellSpec& cs = cells[i];
            ScenarioSpec s = run.curves[cs.curve].scenario;
            set_axis(s, run.sweep.axis, cs.x);
            rows[i] = evaluate_cell(s, cs.metric, cs.evaluator, run.sweep, cs.index, opt.mc_streams);
            rows[i].curve = run.curves[cs.curve].label;
            rows[i].axis_value = cs.x;
        }
    };
    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, cells.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, p);
}

void write_csv_header(std::ostream& out) {
    out << "axis_name,axis_value,metric,evaluator,value,std_error,n_samples,error_flag,curve\n";
}

void write_csv_row(std::ostream& out, const ResultRow& r) {
    out << to_string(r.axis) << ',' << format_double(r.axis_value) << ',' << to_string(r.metric) << ','
        << to_string(r.evaluator) << ',';
    if (r.error_flag != "error") out << format_double(r.value);
    out << ',';
    if (r.std_error) out << format_double(*r.std_error);
    out << ',';
    if (r.n_samples) out << *r.n_samples;
    out << ',' << r.error_flag << ',';
    // labels are generated without commas or quotes, but user text is escaped anyway
    if (r.curve.find_first_of(",\"\n") != std::string::npos) {
        out << '"';
        for (char ch : r.curve) out << (ch == '"' ? "\"\"" : std::string(1, ch));
        out << '"';
    } else {
        out << r.curve;
    }
    out << '\n';
}

}  // namespace rffso::cli
