#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "rffso/channels/dgg.hpp"
#include "rffso/channels/eta_mu.hpp"
#include "rffso/secrecy/scenario.hpp"

namespace rffso::cli {

// One physical setup covering both eavesdropping scenarios. SNRs in dB.
struct ScenarioSpec {
    std::string turbulence = "wt";  // st | mt | wt | custom (explicit a1..lambda2)
    channels::DggParams fso;        // eps lives here
    std::string rf_model = "eta_mu";  // eta_mu | rayleigh
    double eta0 = 20.0;
    int mu0 = 2;
    double eta_e = 20.0;
    int mu_e = 2;
    int s0 = 1;
    int se = 1;
    double phi_sr_db = 10.0;
    double phi_se_db = 0.0;
    double Ud_db = 20.0;
    double Ue_db = -10.0;
    double target_rate = 0.5;

    ScenarioSpec();
};

enum class Axis { PhiSrDb, PhiSeDb, UdDb, UeDb, TargetRate, Eps };
enum class MetricName { Sop1, Sop2, Spsc1, Spsc2 };
enum class Evaluator { Closed, Asymptotic, ExactQuadrature, Mc };

std::string to_string(Axis a);
std::string to_string(MetricName m);
std::string to_string(Evaluator e);
Axis parse_axis(const std::string& s);
MetricName parse_metric(const std::string& s);
Evaluator parse_evaluator(const std::string& s);

struct SweepSpec {
    Axis axis = Axis::UdDb;
    double start = 0.0;
    double stop = 40.0;
    int points = 21;
    std::vector<MetricName> metrics{MetricName::Sop1, MetricName::Sop2, MetricName::Spsc1, MetricName::Spsc2};
    std::vector<Evaluator> evaluators{Evaluator::Closed};
    std::uint64_t mc_samples = 100000;
    std::uint64_t seed = 1;
    bool mc_exact_event = false;  // mc counts the lower-bound event unless set

    std::vector<double> grid() const;
    void validate() const;  // throws ConfigError
};

struct Curve {
    std::string label;
    ScenarioSpec scenario;
};

struct RunSpec {
    std::string name;
    std::vector<Curve> curves;
    SweepSpec sweep;
};

void set_axis(ScenarioSpec& s, Axis axis, double value);

channels::EtaMuLink rf_main_link(const ScenarioSpec& s);
channels::EtaMuLink rf_eve_link(const ScenarioSpec& s);
channels::DggLink fso_main_link(const ScenarioSpec& s);
channels::DggLink fso_eve_link(const ScenarioSpec& s);
secrecy::Scenario1Config scenario1(const ScenarioSpec& s);
secrecy::Scenario2Config scenario2(const ScenarioSpec& s);

// st | mt | wt | fig1..fig10 | table3-lognormal (always throws UnsupportedCaseError)
RunSpec named_preset(const std::string& name);
std::vector<std::string> preset_names();

// key=value text; an optional leading `preset = NAME` line seeds the run, later keys
// override every curve. Throws ConfigError carrying the offending line.
RunSpec parse_config(std::istream& in);
RunSpec load_config(const std::string& path);

// builds every link on the sweep grid so bad parameters surface before any evaluation
void validate_run(const RunSpec& run);

}  // namespace rffso::cli
