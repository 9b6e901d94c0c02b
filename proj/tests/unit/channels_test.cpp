#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "gamma_gamma.hpp"
#include "integrate.hpp"
#include "rffso/channels/dgg.hpp"
#include "rffso/channels/eta_mu.hpp"
#include "rffso/channels/special_cases.hpp"
#include "rffso/errors.hpp"
#include "stats.hpp"

using namespace rffso;
using namespace rffso::channels;

namespace {

// central difference of whichever tail is smaller, against the density
template <class Link>
double derivative_mismatch(const Link& link, double g) {
    const double h = 1e-4;
    const bool upper = link.cdf(g) > 0.5;
    auto F = [&](double x) { return upper ? -link.ccdf(x) : link.cdf(x); };
    const double d = (F(g * (1 + h)) - F(g * (1 - h))) / (2 * h * g);
    return std::abs(d - link.pdf(g)) / link.pdf(g);
}

std::vector<double> quantile_points(const std::function<double(double)>& cdf) {
    // gammas where the cdf is 0.05, 0.25, 0.5, 0.75, 0.95, by bisection in log space
    std::vector<double> out;
    for (double q : {0.05, 0.25, 0.5, 0.75, 0.95}) {
        double lo = -60, hi = 60;
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (lo + hi);
            (cdf(std::exp(mid)) < q ? lo : hi) = mid;
        }
        out.push_back(std::exp(0.5 * (lo + hi)));
    }
    return out;
}

}  // namespace

TEST(EtaMu, NormalizedAndConsistent) {
    for (double eta : {0.5, 5.0, 50.0})
        for (int mu : {1, 2, 4}) {
            const EtaMuLink link(eta, mu, 3.0);
            const double area = oracle::integrate_positive([&](double g) { return link.pdf(g); });
            EXPECT_NEAR(area, 1.0, 1e-6) << eta << " " << mu;
            for (double g : quantile_points([&](double x) { return link.cdf(x); }))
                EXPECT_LT(derivative_mismatch(link, g), 1e-4) << eta << " " << mu << " " << g;
        }
}

TEST(EtaMu, CdfPlusCcdfIsOne) {
    const EtaMuLink link(20.0, 2, 10.0);
    for (double g : {1e-3, 0.1, 1.0, 10.0, 100.0}) EXPECT_NEAR(link.cdf(g) + link.ccdf(g), 1.0, 1e-13);
    EXPECT_EQ(link.cdf(0.0), 0.0);
    EXPECT_GT(link.ccdf(400.0), 0.0);
}

TEST(EtaMu, RejectsUnrepresentableParameters) {
    EXPECT_THROW(EtaMuLink(2.0, 1.5, 1.0), InvalidParameterError);
    EXPECT_THROW(EtaMuLink(1.0, 2, 1.0), InvalidParameterError);
    EXPECT_THROW(EtaMuLink(2.0, 2, -1.0), InvalidParameterError);
    EXPECT_THROW(EtaMuLink(2.0, 2, 1.0).pdf(-1.0), DomainError);
    EXPECT_THROW(hoyt(0.5, 1.0), UnsupportedCaseError);
    EXPECT_THROW(one_sided_gaussian(1.0), UnsupportedCaseError);
    EXPECT_THROW(lognormal(), UnsupportedCaseError);
}

// eta -> 0 surrogate against the textbook gamma-distributed SNR
TEST(EtaMu, RayleighAndNakagamiReductions) {
    for (double avg : {0.5, 10.0}) {
        const EtaMuLink r = rayleigh(avg);
        double sup = 0.0;
        for (double g = 1e-3; g < 40 * avg; g *= 1.2) sup = std::max(sup, std::abs(r.cdf(g) - (1 - std::exp(-g / avg))));
        EXPECT_LE(sup, 1e-5);
        for (int m : {2, 3, 5}) {
            const EtaMuLink nk = nakagami_m(m, avg);
            sup = 0.0;
            for (double g = 1e-3; g < 40 * avg; g *= 1.2)
                sup = std::max(sup, std::abs(nk.cdf(g) - boost::math::gamma_p(double(m), m * g / avg)));
            EXPECT_LE(sup, 1e-5) << m;
        }
    }
}

TEST(EtaMu, ScaleFamily) {
    // F(g; eta, mu, c * avg) = F(g / c; eta, mu, avg)
    const EtaMuLink a(7.0, 3, 2.0), b(7.0, 3, 2.0 * 13.0);
    for (double g : {0.01, 0.3, 2.0, 9.0}) EXPECT_NEAR(b.cdf(13.0 * g), a.cdf(g), 1e-13);
}

TEST(EtaMu, SamplerMatchesCdf) {
    for (auto [eta, mu] : {std::pair{0.5, 1}, std::pair{20.0, 2}, std::pair{50.0, 4}}) {
        const EtaMuLink link(eta, mu, 5.0);
        RngStream rng(42, 0);
        const auto x = link.sample(rng, 200000);
        const double d = oracle::ks_statistic(x, [&](double g) { return link.cdf(g); });
        EXPECT_LE(d, 0.006) << eta << " " << mu;
    }
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    RngStream a(7, 3), b(7, 3), c(7, 4);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        EXPECT_EQ(u, b.uniform());
        EXPECT_NE(u, c.uniform());
        EXPECT_GT(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

std::string dgg_case_name(const ::testing::TestParamInfo<std::tuple<const char*, Detection, double>>& info) {
    const auto& [name, det, eps] = info.param;
    return std::string(name) + (det == Detection::HD ? "_hd" : "_imdd") + (eps > 1.0 ? "_eps6p7" : "_eps1");
}

class DggCase : public ::testing::TestWithParam<std::tuple<const char*, Detection, double>> {};

TEST_P(DggCase, NormalizedAndConsistent) {
    const auto [name, det, eps] = GetParam();
    const DggLink link(turbulence_preset(name, eps), det, 10.0);
    const double area = oracle::integrate_positive([&](double g) { return link.pdf(g); });
    EXPECT_NEAR(area, 1.0, 1e-6);
    for (double g : quantile_points([&](double x) { return link.cdf(x); }))
        EXPECT_LT(derivative_mismatch(link, g), 1e-4) << g;
    for (double g : {1e-4, 0.5, 10.0, 1e3}) EXPECT_NEAR(link.cdf(g) + link.ccdf(g), 1.0, 1e-10) << g;
}

INSTANTIATE_TEST_SUITE_P(Presets, DggCase,
                         ::testing::Values(std::tuple{"wt", Detection::HD, 1.0}, std::tuple{"mt", Detection::HD, 6.7},
                                           std::tuple{"st", Detection::IMDD, 1.0},
                                           std::tuple{"wt", Detection::IMDD, 6.7}),
                         dgg_case_name);

TEST(Dgg, GammaGammaReduction) {
    for (auto [b1, b2, eps, det] : {std::tuple{2.296, 1.822, 1.0, Detection::HD}, std::tuple{4.2, 1.4, 6.7, Detection::IMDD},
                                    std::tuple{8.0, 3.5, 0.8, Detection::HD}}) {
        const DggLink link = gamma_gamma(b1, b2, eps, det, 5.0);
        const oracle::GammaGammaPointing ref{b1, b2, eps, detection_exponent(det), 5.0};
        for (double g : {0.01, 0.2, 1.0, 5.0, 30.0, 200.0}) {
            const double r = ref.snr_pdf(g);
            EXPECT_NEAR(link.pdf(g) / r, 1.0, 1e-8) << b1 << " " << g;
        }
        EXPECT_NEAR(link.mean_irradiance(), ref.mean_irradiance(), 1e-14);
    }
}

TEST(Dgg, PhysicalSamplerMatchesCdf) {
    for (const char* name : {"wt", "st"}) {
        const DggLink link(turbulence_preset(name, 1.0), Detection::IMDD, 3.0);
        RngStream rng(5, 1);
        const auto x = link.sample(rng, 100000);
        EXPECT_LE(oracle::ks_statistic_grid(x, [&](double g) { return link.cdf(g); }), 0.01) << name;
    }
}

TEST(Dgg, InverseCdfSamplerMatchesCdf) {
    const DggLink link(turbulence_preset("mt", 6.7), Detection::HD, 3.0);
    RngStream rng(5, 2);
    std::vector<double> x(100000);
    for (auto& v : x) v = link.sample_inverse_cdf(rng);
    EXPECT_LE(oracle::ks_statistic_grid(x, [&](double g) { return link.cdf(g); }), 0.01);
}

// library sampler against a std::-based generator of the same model
TEST(Dgg, TwoSampleAgainstReferenceSampler) {
    const DggLink link = gamma_gamma(4.0, 1.9, 2.0, Detection::IMDD, 2.0);
    oracle::ProductGammaSampler ref(4.0, 1.9, 2.0, 2, 2.0, 99);
    RngStream rng(11, 0);
    const std::size_t n = 50000;
    std::vector<double> a = link.sample(rng, n), b(n);
    for (auto& v : b) v = ref();
    EXPECT_LE(oracle::ks_two_sample(a, b), oracle::ks_critical_001(n, n));

    const auto p = turbulence_preset("st", 1.0);
    const DggLink st(p, Detection::HD, 2.0);
    oracle::DggReferenceSampler ref2(st.effective_a1(), p.a2, p.b1, p.b2, p.omega1, p.omega2, p.eps, 1, 2.0, 3);
    RngStream rng2(11, 1);
    a = st.sample(rng2, n);
    for (auto& v : b) v = ref2();
    EXPECT_LE(oracle::ks_two_sample(a, b), oracle::ks_critical_001(n, n));
}

TEST(Dgg, SamplerDeterministic) {
    const DggLink link(turbulence_preset("mt"), Detection::HD, 1.0);
    RngStream a(3, 9), b(3, 9);
    EXPECT_EQ(link.sample(a, 1000), link.sample(b, 1000));
}

TEST(Dgg, ShapeAndSnap) {
    const DggLink st(turbulence_preset("st"), Detection::HD, 1.0);
    EXPECT_EQ(st.delta(), 17 + 9 + 1);
    EXPECT_TRUE(st.snapped());
    EXPECT_NEAR(st.effective_a1(), 17.0 / 9.0, 1e-15);
    const DggLink wt(turbulence_preset("wt"), Detection::HD, 1.0);
    EXPECT_FALSE(wt.snapped());
    EXPECT_NEAR(wt.t(), wt.mean_irradiance(), 1e-12 * wt.t());
    auto bad = turbulence_preset("st");
    bad.a1 = 2.5;
    EXPECT_THROW(DggLink(bad, Detection::HD, 1.0), InvalidParameterError);
    EXPECT_THROW(turbulence_preset("xx"), InvalidParameterError);
    EXPECT_THROW(DggLink(turbulence_preset("wt"), Detection::HD, 0.0), InvalidParameterError);
}

TEST(Dgg, ElectricalSnrIsScale) {
    const DggLink a(turbulence_preset("wt"), Detection::IMDD, 1.0), b(turbulence_preset("wt"), Detection::IMDD, 50.0);
    for (double g : {0.02, 0.7, 3.0}) EXPECT_NEAR(b.cdf(50.0 * g), a.cdf(g), 1e-11);
}
