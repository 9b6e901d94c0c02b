#include <gtest/gtest.h>

#include <cmath>

#include "rffso/channels/special_cases.hpp"
#include "rffso/errors.hpp"
#include "rffso/secrecy/metrics.hpp"

using namespace rffso;
using namespace rffso::channels;
using namespace rffso::secrecy;

namespace {

double db(double x) { return std::pow(10.0, x / 10.0); }

Scenario1Config s1(const char* turb, Detection det, double eps, double ud_db, double phi_se_db = 0.0,
                   double rate = 0.5) {
    return {EtaMuLink(20.0, 2, db(10.0)), EtaMuLink(20.0, 2, db(phi_se_db)),
            DggLink(turbulence_preset(turb, eps), det, db(ud_db)), rate};
}

Scenario2Config s2(const char* turb, Detection det, double eps, double ud_db, double ue_db = -10.0,
                   double rate = 0.5) {
    return {EtaMuLink(5.0, 1, db(12.0)), DggLink(turbulence_preset(turb, eps), det, db(ud_db)),
            DggLink(turbulence_preset(turb, eps), Detection::HD, db(ue_db)), rate};
}

}  // namespace

TEST(Secrecy, ZeroRateComplementScenario1) {
    for (const char* t : {"wt", "st"})
        for (double ud : {0.0, 20.0}) {
            const auto c = s1(t, Detection::IMDD, 1.0, ud, 0.0, 0.0);
            EXPECT_NEAR(sop1_lower(c).raw, 1.0 - spsc1(c).raw, 1e-8) << t << " " << ud;
        }
}

TEST(Secrecy, ZeroRateComplementScenario2) {
    for (const char* t : {"wt", "mt"})
        for (double ud : {0.0, 20.0}) {
            const auto c = s2(t, Detection::HD, 6.7, ud, -10.0, 0.0);
            EXPECT_NEAR(sop2_lower(c).raw, 1.0 - spsc2(c).raw, 1e-8) << t << " " << ud;
        }
}

TEST(Secrecy, LowerBoundBelowExact) {
    for (double rate : {0.0, 0.5, 2.0}) {
        const auto c = s1("wt", Detection::HD, 1.0, 10.0, 0.0, rate);
        EXPECT_LE(sop1_lower(c).value, sop1_exact_quadrature(c).value + 1e-7) << rate;
        const auto d = s2("wt", Detection::IMDD, 1.0, 15.0, -10.0, rate);
        EXPECT_LE(sop2_lower(d).value, sop2_exact_quadrature(d).value + 1e-7) << rate;
    }
}

TEST(Secrecy, ExactEqualsLowerAtZeroRate) {
    const auto c = s1("wt", Detection::HD, 1.0, 10.0, 0.0, 0.0);
    EXPECT_NEAR(sop1_lower(c).value, sop1_exact_quadrature(c).value, 1e-7);
}

TEST(Secrecy, IdenticalFsoLinksGiveHalf) {
    for (const char* t : {"wt", "st", "mt"})
        for (Detection det : {Detection::HD, Detection::IMDD}) {
            const DggLink l(turbulence_preset(t, 1.0), det, db(7.0));
            const Scenario2Config c{EtaMuLink(5.0, 1, db(12.0)), l, l, 0.0};
            EXPECT_NEAR(spsc2(c).value, 0.5, 1e-8) << t;
            EXPECT_NEAR(fso_ratio_probability(l, l, 1.0), 0.5, 1e-8) << t;
        }
}

TEST(Secrecy, VanishingEavesdropper) {
    const auto c = s1("wt", Detection::HD, 1.0, 30.0, -60.0);
    // sop1 tends to Pr{min(r0, d0) < phi}, spsc1 to 1
    EXPECT_NEAR(spsc1(c).value, 1.0, 1e-4);
    const double phi = c.phi1();
    const double ref = 1.0 - c.rf_main.ccdf(phi) * c.fso_main.ccdf(phi);
    EXPECT_GE(sop1_lower(c).value, 0.0);
    EXPECT_LE(sop1_lower(c).value, ref + 1e-9);
    const auto d = s2("wt", Detection::HD, 1.0, 30.0, -80.0, 0.0);
    EXPECT_NEAR(spsc2(d).value, 1.0, 1e-6);
}

TEST(Secrecy, MonotoneInMainLinkSnr) {
    double prev1 = 2.0, prev2 = 2.0;
    for (double ud = 0.0; ud <= 40.0; ud += 10.0) {
        const double a = sop1_lower(s1("st", Detection::HD, 1.0, ud)).value;
        const double b = sop2_lower(s2("st", Detection::HD, 1.0, ud)).value;
        EXPECT_LE(a, prev1 + 1e-12) << ud;
        EXPECT_LE(b, prev2 + 1e-12) << ud;
        prev1 = a;
        prev2 = b;
    }
}

TEST(Secrecy, MonotoneInRate) {
    double prev = -1.0;
    for (double r : {0.0, 0.25, 0.5, 1.0, 2.0}) {
        const double v = sop1_lower(s1("wt", Detection::IMDD, 6.7, 10.0, 0.0, r)).value;
        EXPECT_GE(v, prev - 1e-12) << r;
        prev = v;
    }
}

TEST(Secrecy, AsymptoteApproachesBoundAtHighSnr) {
    const auto lo = sop1_lower(s1("wt", Detection::HD, 1.0, 80.0));
    const auto as = sop1_asymptotic(s1("wt", Detection::HD, 1.0, 80.0));
    EXPECT_LT(std::abs(as.gap) / lo.value, 0.01);
    EXPECT_NEAR(as.raw - lo.raw, as.gap, 1e-9 * lo.value + 1e-15);
}

TEST(Secrecy, MetricsAreProbabilities) {
    for (double ud : {-10.0, 20.0, 60.0}) {
        for (const Metric& m : {sop1_lower(s1("mt", Detection::IMDD, 1.0, ud)), spsc1(s1("mt", Detection::IMDD, 1.0, ud)),
                                sop2_lower(s2("mt", Detection::IMDD, 1.0, ud)), spsc2(s2("mt", Detection::IMDD, 1.0, ud))}) {
            EXPECT_GE(m.value, 0.0);
            EXPECT_LE(m.value, 1.0);
            EXPECT_EQ(m.clamp_flagged, m.clamp_excess > kClampFlagThreshold);
        }
    }
}

TEST(Secrecy, ScenarioValidation) {
    auto c = s1("wt", Detection::HD, 1.0, 10.0);
    c.target_rate = -1.0;
    EXPECT_THROW(sop1_lower(c), InvalidParameterError);
    const Scenario2Config bad{EtaMuLink(5.0, 1, 10.0), DggLink(turbulence_preset("wt"), Detection::HD, 10.0),
                              DggLink(turbulence_preset("st"), Detection::HD, 1.0), 0.5};
    EXPECT_THROW(sop2_lower(bad), InvalidParameterError);
}
