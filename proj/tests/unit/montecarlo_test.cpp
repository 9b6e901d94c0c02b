#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rffso/channels/special_cases.hpp"
#include "rffso/errors.hpp"
#include "rffso/montecarlo/estimators.hpp"
#include "rffso/secrecy/metrics.hpp"
#include "stats.hpp"

using namespace rffso;
using namespace rffso::channels;
using namespace rffso::montecarlo;
using namespace rffso::secrecy;

namespace {

double db(double x) { return std::pow(10.0, x / 10.0); }

Scenario1Config s1(double phi_se_db = 0.0, const char* turb = "wt") {
    return {EtaMuLink(20.0, 2, db(10.0)), EtaMuLink(20.0, 2, db(phi_se_db)),
            DggLink(turbulence_preset(turb, 1.0), Detection::HD, db(15.0)), 0.5};
}

Scenario2Config s2_identical() {
    const DggLink l(turbulence_preset("wt", 1.0), Detection::IMDD, db(5.0));
    return {EtaMuLink(5.0, 1, db(12.0)), l, l, 0.0};
}

}  // namespace

TEST(MonteCarlo, FromCount) {
    const auto e = from_count(2500, 10000);
    EXPECT_DOUBLE_EQ(e.value, 0.25);
    EXPECT_DOUBLE_EQ(e.std_error, std::sqrt(0.25 * 0.75 / 10000));
    EXPECT_FALSE(e.wilson);
    EXPECT_NEAR(e.ci95_low, 0.25 - 1.96 * e.std_error, 1e-3 * e.std_error);
    const auto few = from_count(3, 100000);
    EXPECT_TRUE(few.wilson);
    EXPECT_GT(few.ci95_low, 0.0);
    EXPECT_LT(few.ci95_low, few.value);
    EXPECT_GT(few.ci95_high, few.value);
    const auto none = from_count(0, 100000);
    EXPECT_EQ(none.ci95_low, 0.0);
    EXPECT_GT(none.ci95_high, 0.0);
    EXPECT_THROW(from_count(5, 4), InvalidParameterError);
}

TEST(MonteCarlo, SampleFloor) {
    RngStream rng(1, 0);
    EXPECT_THROW(estimate_sop1(s1(), 500, rng, false), InvalidParameterError);
    McOptions o;
    o.allow_small_n = true;
    EXPECT_NO_THROW(estimate_sop1(s1(), 500, rng, false, o));
}

TEST(MonteCarlo, StdErrorShrinksAsRootN) {
    RngStream a(3, 0), b(3, 1);
    const auto small = estimate_sop1(s1(), 20000, a, false);
    const auto large = estimate_sop1(s1(), 320000, b, false);
    EXPECT_NEAR(small.std_error / large.std_error, 4.0, 0.4);
}

TEST(MonteCarlo, ParallelEqualsStreamsBackToBack) {
    const auto cfg = s1();
    ParallelPlan plan;
    plan.seed = 17;
    plan.streams = 3;
    plan.stream_offset = 5;
    plan.threads = 3;
    const std::uint64_t n = 30001;
    const auto par = estimate_parallel(MetricKind::Sop1, &cfg, nullptr, n, plan);
    std::uint64_t events = 0;
    for (unsigned i = 0; i < 3; ++i) {
        RngStream rng(17, 5 + i);
        events += count_sop1(cfg, n / 3 + (i < n % 3), rng, false, FsoSampler::Physical);
    }
    EXPECT_EQ(par.events, events);
    EXPECT_EQ(par.n_samples, n);
    plan.threads = 1;
    EXPECT_EQ(estimate_parallel(MetricKind::Sop1, &cfg, nullptr, n, plan).events, events);
    EXPECT_THROW(estimate_parallel(MetricKind::Sop2, &cfg, nullptr, n, plan), InvalidParameterError);
}

TEST(MonteCarlo, AgreesWithClosedForm) {
    const auto cfg = s1();
    ParallelPlan plan;
    plan.seed = 2024;
    for (auto [kind, closed] : {std::pair{MetricKind::Sop1, sop1_lower(cfg).value},
                                std::pair{MetricKind::Spsc1, spsc1(cfg).value}}) {
        const auto e = estimate_parallel(kind, &cfg, nullptr, 400000, plan);
        EXPECT_LE(std::abs(e.value - closed), 4.0 * e.std_error) << e.value << " " << closed;
    }
}

TEST(MonteCarlo, ExactEventDominatesLowerEvent) {
    const auto cfg = s1();
    RngStream a(8, 0), b(8, 0);
    const auto lower = count_sop1(cfg, 50000, a, false, FsoSampler::Physical);
    const auto exact = count_sop1(cfg, 50000, b, true, FsoSampler::Physical);
    EXPECT_LE(lower, exact);
}

TEST(MonteCarlo, SymmetricFsoLinks) {
    const auto cfg = s2_identical();
    ParallelPlan plan;
    plan.seed = 4;
    const auto e = estimate_parallel(MetricKind::Spsc2, nullptr, &cfg, 200000, plan);
    EXPECT_LE(std::abs(e.value - 0.5), 4.0 * e.std_error);
}

TEST(MonteCarlo, VanishingEavesdropper) {
    const auto cfg = s1(-70.0);
    RngStream rng(6, 0);
    EXPECT_GT(estimate_spsc1(cfg, 20000, rng).value, 0.999);
}

TEST(MonteCarlo, InverseCdfSamplerAgrees) {
    const auto cfg = s1(0.0, "mt");
    McOptions o;
    o.fso_sampler = FsoSampler::InverseCdf;
    RngStream rng(12, 0);
    const auto e = estimate_sop1(cfg, 200000, rng, false, o);
    EXPECT_LE(std::abs(e.value - sop1_lower(cfg).value), 4.0 * e.std_error);
}

// simulator built only on <random>: eta-mu as the sum of two Gamma(mu) powers,
// DGG from the reference sampler
TEST(MonteCarlo, ReducedSimulatorMatchesClosedForm) {
    const double eta = 20.0, avg0 = db(10.0), avge = db(0.0);
    const int mu = 2;
    const auto p = turbulence_preset("wt", 1.0);
    oracle::DggReferenceSampler fso(p.a1, p.a2, p.b1, p.b2, p.omega1, p.omega2, p.eps, 1, db(15.0), 77);
    std::mt19937 gen(78);
    std::gamma_distribution<double> g(mu, 1.0);
    auto etamu = [&](double avg) { return avg * (eta * g(gen) + g(gen)) / (mu * (1.0 + eta)); };
    const int n = 300000;
    const double phi = std::exp2(0.5);
    int events = 0;
    for (int i = 0; i < n; ++i) {
        const double r0 = etamu(avg0), d0 = fso(), re = etamu(avge);
        events += std::min(r0, d0) <= phi * re;
    }
    const double p_hat = double(events) / n;
    const double se = std::sqrt(p_hat * (1 - p_hat) / n);
    EXPECT_LE(std::abs(p_hat - sop1_lower(s1()).value), 4.0 * se);
}
