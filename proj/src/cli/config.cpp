#include "rffso/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rffso/channels/special_cases.hpp"
#include "rffso/errors.hpp"

namespace rffso::cli {

using channels::Detection;
using channels::DggLink;
using channels::DggParams;
using channels::EtaMuLink;

namespace {

double from_db(double db) { return std::pow(10.0, db / 10.0); }

Detection detection(int s) { return s == 1 ? Detection::HD : Detection::IMDD; }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_real(const std::string& v, const std::string& key, int line) {
    double x = 0.0;
    const char* b = v.data();
    const char* e = b + v.size();
    auto [p, ec] = std::from_chars(b, e, x);
    if (ec != std::errc() || p != e || !std::isfinite(x))
        throw ConfigError("key '" + key + "': '" + v + "' is not a finite number", line);
    return x;
}

long long parse_integer(const std::string& v, const std::string& key, int line) {
    const double x = parse_real(v, key, line);
    if (x != std::floor(x) || std::abs(x) > 9.0e15)
        throw ConfigError("key '" + key + "': '" + v + "' is not an integer", line);
    return static_cast<long long>(x);
}

struct Entry {
    std::string value;
    int line;
};

const std::set<std::string> kScenarioKeys{
    "turbulence", "eps",       "s0",        "se",    "eta0",        "mu0", "eta_e", "mu_e", "rf_model",
    "phi_sr_db",  "phi_se_db", "Ud_db",     "Ue_db", "target_rate", "a1",  "a2",    "b1",   "b2",
    "omega1",     "omega2",    "lambda1",   "lambda2"};
const std::set<std::string> kSweepKeys{"axis",       "start", "stop",    "points", "metrics",
                                       "evaluators", "mc_samples", "seed", "mc_event"};

void apply_scenario(ScenarioSpec& s, const std::map<std::string, Entry>& kv) {
    auto real = [&](const char* k, double& dst) {
        if (auto it = kv.find(k); it != kv.end()) dst = parse_real(it->second.value, k, it->second.line);
    };
    auto integer = [&](const char* k, int& dst) {
        if (auto it = kv.find(k); it != kv.end())
            dst = static_cast<int>(parse_integer(it->second.value, k, it->second.line));
    };
    // the turbulence preset goes first so explicit shape keys can refine it
    if (auto it = kv.find("turbulence"); it != kv.end()) {
        const std::string& t = it->second.value;
        if (t != "st" && t != "mt" && t != "wt")
            throw ConfigError("turbulence must be st, mt or wt (or give a1..lambda2 explicitly)", it->second.line);
        s.fso = channels::turbulence_preset(t, s.fso.eps);
        s.turbulence = t;
    }
    bool custom = false;
    for (const char* k : {"a1", "a2", "b1", "b2", "omega1", "omega2", "lambda1", "lambda2"}) custom |= kv.count(k) > 0;
    if (custom) s.turbulence = "custom";
    real("a1", s.fso.a1);
    real("a2", s.fso.a2);
    real("b1", s.fso.b1);
    real("b2", s.fso.b2);
    real("omega1", s.fso.omega1);
    real("omega2", s.fso.omega2);
    integer("lambda1", s.fso.lambda1);
    integer("lambda2", s.fso.lambda2);
    real("eps", s.fso.eps);
    integer("s0", s.s0);
    integer("se", s.se);
    real("eta0", s.eta0);
    integer("mu0", s.mu0);
    real("eta_e", s.eta_e);
    integer("mu_e", s.mu_e);
    if (auto it = kv.find("rf_model"); it != kv.end()) {
        if (it->second.value != "eta_mu" && it->second.value != "rayleigh")
            throw ConfigError("rf_model must be eta_mu or rayleigh", it->second.line);
        s.rf_model = it->second.value;
    }
    real("phi_sr_db", s.phi_sr_db);
    real("phi_se_db", s.phi_se_db);
    real("Ud_db", s.Ud_db);
    real("Ue_db", s.Ue_db);
    real("target_rate", s.target_rate);

    auto check = [&](bool ok, const char* key, const std::string& msg) {
        if (ok) return;
        const auto it = kv.find(key);
        throw ConfigError(msg, it == kv.end() ? 0 : it->second.line);
    };
    check(s.s0 == 1 || s.s0 == 2, "s0", "s0 must be 1 (heterodyne) or 2 (IM/DD)");
    check(s.se == 1 || s.se == 2, "se", "se must be 1 (heterodyne) or 2 (IM/DD)");
    check(s.fso.eps > 0.0, "eps", "eps must be positive");
    check(s.target_rate >= 0.0, "target_rate", "target_rate must be non-negative");
    check(s.mu0 >= 1, "mu0", "mu0 must be a positive integer");
    check(s.mu_e >= 1, "mu_e", "mu_e must be a positive integer");
    check(s.eta0 > 0.0, "eta0", "eta0 must be positive");
    check(s.eta_e > 0.0, "eta_e", "eta_e must be positive");
    check(s.fso.lambda1 >= 1 && s.fso.lambda2 >= 1, kv.count("lambda1") ? "lambda1" : "lambda2",
          "lambda1 and lambda2 must be positive integers");
}

void apply_sweep(SweepSpec& w, const std::map<std::string, Entry>& kv) {
    auto wrap = [&](const char* k, auto fn) {
        if (auto it = kv.find(k); it != kv.end()) {
            try {
                fn(it->second);
            } catch (const ConfigError& e) {
                if (e.line > 0) throw;
                throw ConfigError(e.what(), it->second.line);  // parse_axis etc. know no line
            } catch (const Error& e) {
                throw ConfigError(e.what(), it->second.line);
            }
        }
    };
    wrap("axis", [&](const Entry& e) { w.axis = parse_axis(e.value); });
    wrap("start", [&](const Entry& e) { w.start = parse_real(e.value, "start", e.line); });
    wrap("stop", [&](const Entry& e) { w.stop = parse_real(e.value, "stop", e.line); });
    wrap("points", [&](const Entry& e) { w.points = static_cast<int>(parse_integer(e.value, "points", e.line)); });
    wrap("metrics", [&](const Entry& e) {
        w.metrics.clear();
        for (const auto& m : split_list(e.value)) w.metrics.push_back(parse_metric(m));
    });
    wrap("evaluators", [&](const Entry& e) {
        w.evaluators.clear();
        for (const auto& m : split_list(e.value)) w.evaluators.push_back(parse_evaluator(m));
    });
    wrap("mc_samples", [&](const Entry& e) {
        const long long n = parse_integer(e.value, "mc_samples", e.line);
        if (n <= 0) throw ConfigError("mc_samples must be positive", e.line);
        w.mc_samples = static_cast<std::uint64_t>(n);
    });
    wrap("seed", [&](const Entry& e) {
        const long long n = parse_integer(e.value, "seed", e.line);
        if (n < 0) throw ConfigError("seed must be non-negative", e.line);
        w.seed = static_cast<std::uint64_t>(n);
    });
    wrap("mc_event", [&](const Entry& e) {
        if (e.value != "lower" && e.value != "exact") throw ConfigError("mc_event must be lower or exact", e.line);
        w.mc_exact_event = e.value == "exact";
    });
}

Curve curve(const std::string& label, const ScenarioSpec& s) { return {label, s}; }

// turbulence x detection (s0 = se) families of the detection figures
std::vector<Curve> turbulence_by_detection(const ScenarioSpec& base) {
    std::vector<Curve> out;
    for (const char* t : {"st", "mt", "wt"})
        for (int s : {1, 2}) {
            ScenarioSpec c = base;
            c.fso = channels::turbulence_preset(t, base.fso.eps);
            c.turbulence = t;
            c.s0 = c.se = s;
            out.push_back(curve(std::string(t) + " s=" + std::to_string(s), c));
        }
    return out;
}

std::vector<Curve> turbulence_by_eps(const ScenarioSpec& base) {
    std::vector<Curve> out;
    for (const char* t : {"st", "mt", "wt"})
        for (double eps : {1.0, 6.7}) {
            ScenarioSpec c = base;
            c.fso = channels::turbulence_preset(t, eps);
            c.turbulence = t;
            std::ostringstream label;
            label << t << " eps=" << eps;
            out.push_back(curve(label.str(), c));
        }
    return out;
}

// special-case rows of the overlay figures; the lognormal row is left out (unsupported)
std::vector<Curve> special_case_rows(const ScenarioSpec& base) {
    std::vector<Curve> out;
    const double eps = base.fso.eps;
    ScenarioSpec c = base;
    c.rf_model = "rayleigh";
    c.eta0 = c.eta_e = 1.0;
    c.mu0 = c.mu_e = 1;
    c.turbulence = "custom";
    c.fso = {1.0, 1.0, 1.0, 1.8, 1.0, 1.0, 1, 1, eps};
    out.push_back(curve("rayleigh-k", c));
    c.fso = {2.1, 2.1, 1.0, 1.0, 1.07, 1.06, 1, 1, eps};
    out.push_back(curve("rayleigh-double-weibull", c));
    c = base;
    c.rf_model = "eta_mu";
    c.eta0 = c.eta_e = 20.0;
    c.mu0 = c.mu_e = 2;
    c.turbulence = "mt";
    c.fso = channels::turbulence_preset("mt", eps);
    out.push_back(curve("nakagami-dgg", c));
    c.eta0 = c.eta_e = 100.0;
    c.turbulence = "custom";
    c.fso = {1.0, 1.0, 2.296, 1.822, 1.0, 1.0, 1, 1, eps};
    out.push_back(curve("etamu-gamma-gamma", c));
    return out;
}

}  // namespace

ScenarioSpec::ScenarioSpec() : fso(channels::turbulence_preset("wt", 1.0)) {}

std::string to_string(Axis a) {
    switch (a) {
        case Axis::PhiSrDb: return "phi_sr_db";
        case Axis::PhiSeDb: return "phi_se_db";
        case Axis::UdDb: return "Ud_db";
        case Axis::UeDb: return "Ue_db";
        case Axis::TargetRate: return "target_rate";
        case Axis::Eps: return "eps";
    }
    return "?";
}

std::string to_string(MetricName m) {
    switch (m) {
        case MetricName::Sop1: return "sop1";
        case MetricName::Sop2: return "sop2";
        case MetricName::Spsc1: return "spsc1";
        case MetricName::Spsc2: return "spsc2";
    }
    return "?";
}

std::string to_string(Evaluator e) {
    switch (e) {
        case Evaluator::Closed: return "closed";
        case Evaluator::Asymptotic: return "asymptotic";
        case Evaluator::ExactQuadrature: return "exact_quadrature";
        case Evaluator::Mc: return "mc";
    }
    return "?";
}

Axis parse_axis(const std::string& s) {
    for (Axis a : {Axis::PhiSrDb, Axis::PhiSeDb, Axis::UdDb, Axis::UeDb, Axis::TargetRate, Axis::Eps})
        if (to_string(a) == s) return a;
    throw ConfigError("unknown axis '" + s + "' (phi_sr_db, phi_se_db, Ud_db, Ue_db, target_rate, eps)");
}

MetricName parse_metric(const std::string& s) {
    for (MetricName m : {MetricName::Sop1, MetricName::Sop2, MetricName::Spsc1, MetricName::Spsc2})
        if (to_string(m) == s) return m;
    throw ConfigError("unknown metric '" + s + "' (sop1, sop2, spsc1, spsc2)");
}

Evaluator parse_evaluator(const std::string& s) {
    for (Evaluator e : {Evaluator::Closed, Evaluator::Asymptotic, Evaluator::ExactQuadrature, Evaluator::Mc})
        if (to_string(e) == s) return e;
    throw ConfigError("unknown evaluator '" + s + "' (closed, asymptotic, exact_quadrature, mc)");
}

std::vector<double> SweepSpec::grid() const {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = start + (stop - start) * i / (points - 1);
    g.back() = stop;
    return g;
}

void SweepSpec::validate() const {
    if (!(start < stop)) throw ConfigError("sweep: start must be below stop");
    if (points < 2 || points > 100000) throw ConfigError("sweep: points must be in [2, 100000]");
    if (metrics.empty()) throw ConfigError("sweep: no metrics selected");
    if (evaluators.empty()) throw ConfigError("sweep: no evaluators selected");
    const bool mc = std::find(evaluators.begin(), evaluators.end(), Evaluator::Mc) != evaluators.end();
    if (mc && mc_samples < 10000) throw ConfigError("sweep: mc_samples must be at least 10000");
    if (axis == Axis::TargetRate && start < 0.0) throw ConfigError("sweep: target_rate axis must start at >= 0");
    if (axis == Axis::Eps && !(start > 0.0)) throw ConfigError("sweep: eps axis must start above 0");
}

void set_axis(ScenarioSpec& s, Axis axis, double v) {
    switch (axis) {
        case Axis::PhiSrDb: s.phi_sr_db = v; break;
        case Axis::PhiSeDb: s.phi_se_db = v; break;
        case Axis::UdDb: s.Ud_db = v; break;
        case Axis::UeDb: s.Ue_db = v; break;
        case Axis::TargetRate: s.target_rate = v; break;
        case Axis::Eps: s.fso.eps = v; break;
    }
}

EtaMuLink rf_main_link(const ScenarioSpec& s) {
    if (s.rf_model == "rayleigh") return channels::rayleigh(from_db(s.phi_sr_db));
    return EtaMuLink(s.eta0, s.mu0, from_db(s.phi_sr_db));
}

EtaMuLink rf_eve_link(const ScenarioSpec& s) {
    if (s.rf_model == "rayleigh") return channels::rayleigh(from_db(s.phi_se_db));
    return EtaMuLink(s.eta_e, s.mu_e, from_db(s.phi_se_db));
}

DggLink fso_main_link(const ScenarioSpec& s) { return DggLink(s.fso, detection(s.s0), from_db(s.Ud_db)); }
DggLink fso_eve_link(const ScenarioSpec& s) { return DggLink(s.fso, detection(s.se), from_db(s.Ue_db)); }

secrecy::Scenario1Config scenario1(const ScenarioSpec& s) {
    return {rf_main_link(s), rf_eve_link(s), fso_main_link(s), s.target_rate};
}

secrecy::Scenario2Config scenario2(const ScenarioSpec& s) {
    return {rf_main_link(s), fso_main_link(s), fso_eve_link(s), s.target_rate};
}

std::vector<std::string> preset_names() {
    std::vector<std::string> n{"st", "mt", "wt"};
    for (int i = 1; i <= 10; ++i) n.push_back("fig" + std::to_string(i));
    n.push_back("table3-lognormal");
    return n;
}

RunSpec named_preset(const std::string& name) {
    RunSpec r;
    r.name = name;
    ScenarioSpec b;
    SweepSpec& w = r.sweep;
    if (name == "st" || name == "mt" || name == "wt") {
        b.fso = channels::turbulence_preset(name, 1.0);
        b.turbulence = name;
        r.curves.push_back(curve(name, b));
        return r;
    }
    if (name == "table3-lognormal") channels::lognormal();  // throws

    w.evaluators = {Evaluator::Closed, Evaluator::Mc};
    if (name == "fig1") {
        b.eta0 = b.eta_e = 20.0;
        b.mu0 = b.mu_e = 2;
        b.s0 = b.se = 1;
        b.Ud_db = 10.0;
        w.axis = Axis::PhiSrDb;
        w.metrics = {MetricName::Spsc1};
        for (double se : {10.0, 0.0, -10.0}) {
            ScenarioSpec c = b;
            c.phi_se_db = se;
            std::ostringstream label;
            label << "phi_se_db=" << se;
            r.curves.push_back(curve(label.str(), c));
        }
    } else if (name == "fig2" || name == "fig8") {
        // the RF hop does not enter spsc2; its parameters follow the other scenario-2 figures
        b.eta0 = b.eta_e = 5.0;
        b.mu0 = b.mu_e = 1;
        b.phi_sr_db = 12.0;
        b.s0 = b.se = 1;
        w.metrics = {MetricName::Spsc2};
        if (name == "fig2") {
            b.fso = channels::turbulence_preset("st", 1.0);
            b.turbulence = "st";
            for (double ue : {30.0, 10.0, -10.0}) {
                ScenarioSpec c = b;
                c.Ue_db = ue;
                std::ostringstream label;
                label << "Ue_db=" << ue;
                r.curves.push_back(curve(label.str(), c));
            }
        } else {
            b.Ue_db = -10.0;
            r.curves = turbulence_by_eps(b);
        }
    } else if (name == "fig3") {
        b.eta0 = b.eta_e = 50.0;
        b.mu0 = b.mu_e = 3;
        b.phi_sr_db = 10.0;
        b.phi_se_db = 0.0;
        w.metrics = {MetricName::Sop1};
        r.curves = turbulence_by_detection(b);
    } else if (name == "fig4") {
        b.eta0 = b.eta_e = 25.0;
        b.mu0 = b.mu_e = 2;
        b.phi_sr_db = 5.0;
        b.phi_se_db = 0.0;
        w.metrics = {MetricName::Spsc1};
        r.curves = turbulence_by_detection(b);
    } else if (name == "fig5") {
        b.eta0 = b.eta_e = 5.0;
        b.mu0 = b.mu_e = 1;
        b.phi_sr_db = 12.0;
        b.Ue_db = -10.0;
        w.metrics = {MetricName::Sop2};
        r.curves = turbulence_by_detection(b);
    } else if (name == "fig6") {
        b.eta0 = b.eta_e = 25.0;
        b.mu0 = b.mu_e = 4;
        b.phi_sr_db = 5.0;
        b.phi_se_db = 0.0;
        b.s0 = b.se = 1;
        w.metrics = {MetricName::Sop1};
        w.evaluators = {Evaluator::Closed, Evaluator::Asymptotic, Evaluator::Mc};
        r.curves = turbulence_by_eps(b);
    } else if (name == "fig7") {
        b.eta0 = b.eta_e = 2.0;
        b.mu0 = b.mu_e = 1;
        b.phi_sr_db = 10.0;
        b.s0 = b.se = 1;
        b.Ue_db = -12.0;
        w.metrics = {MetricName::Sop2};
        w.evaluators = {Evaluator::Closed, Evaluator::Asymptotic, Evaluator::Mc};
        r.curves = turbulence_by_eps(b);
    } else if (name == "fig9") {
        b.phi_se_db = -5.0;
        b.s0 = b.se = 1;
        b.Ud_db = 5.0;
        b.fso.eps = 6.7;
        w.axis = Axis::PhiSrDb;
        w.metrics = {MetricName::Sop1};
        r.curves = special_case_rows(b);
    } else if (name == "fig10") {
        b.phi_sr_db = 12.0;
        b.s0 = b.se = 1;
        b.Ue_db = -5.0;
        b.fso.eps = 1.0;
        w.metrics = {MetricName::Sop2};
        r.curves = special_case_rows(b);
    } else {
        std::string known;
        for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
        throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
    }
    return r;
}

RunSpec parse_config(std::istream& in) {
    std::string line;
    int lineno = 0;
    std::string section;
    std::map<std::string, Entry> scen, sweep;
    std::string preset;
    bool any_key = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header", lineno);
            section = trim(line.substr(1, line.size() - 2));
            if (section != "scenario" && section != "sweep")
                throw ConfigError("unknown section [" + section + "] (expected [scenario] or [sweep])", lineno);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError("expected key = value", lineno);
        if (section.empty()) {
            if (key != "preset") throw ConfigError("key '" + key + "' outside a section (only preset may be)", lineno);
            if (any_key || !preset.empty()) throw ConfigError("preset must be the first key", lineno);
            preset = value;
            any_key = true;
            continue;
        }
        any_key = true;
        auto& dst = section == "scenario" ? scen : sweep;
        const auto& allowed = section == "scenario" ? kScenarioKeys : kSweepKeys;
        if (!allowed.count(key)) {
            std::string hint;
            if (section == "scenario" && allowed.count(key + "_db")) hint = " (SNR keys take dB values: use " + key + "_db)";
            throw ConfigError("unknown key '" + key + "' in [" + section + "]" + hint, lineno);
        }
        if (dst.count(key)) throw ConfigError("duplicate key '" + key + "'", lineno);
        dst[key] = {value, lineno};
    }

    RunSpec run;
    if (!preset.empty()) {
        try {
            run = named_preset(preset);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what(), 1);
        }
    } else {
        run.name = "config";
        run.curves.push_back(curve("config", ScenarioSpec{}));
    }
    for (auto& c : run.curves) {
        try {
            apply_scenario(c.scenario, scen);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }
    apply_sweep(run.sweep, sweep);
    run.sweep.validate();
    return run;
}

RunSpec load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return parse_config(f);
    } catch (const ConfigError& e) {
        if (e.line > 0) throw ConfigError(path + ":" + std::to_string(e.line) + ": " + e.what(), e.line);
        throw ConfigError(path + ": " + e.what());
    }
}

void validate_run(const RunSpec& run) {
    run.sweep.validate();
    if (run.curves.empty()) throw ConfigError("run has no curves");
    for (const auto& c : run.curves) {
        for (double x : run.sweep.grid()) {
            ScenarioSpec s = c.scenario;
            set_axis(s, run.sweep.axis, x);
            try {
                scenario1(s).validate();
                scenario2(s).validate();
            } catch (const UnsupportedCaseError&) {
                throw;
            } catch (const Error& e) {
                std::ostringstream msg;
                msg << "curve '" << c.label << "' at " << to_string(run.sweep.axis) << "=" << x << ": " << e.what();
                throw ConfigError(msg.str());
            }
        }
    }
}

}  // namespace rffso::cli
