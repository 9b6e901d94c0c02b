#pragma once
// KS statistics and reference samplers built on the standard library only.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// sup |F_n - F|
inline double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

// sup over a dense log grid spanning the sample; for costly cdfs (the grid sup is a lower
// bound on the true sup, short of it by at most the largest cdf step between nodes)
inline double ks_statistic_grid(std::vector<double> x, const std::function<double(double)>& cdf,
                                int nodes = 600) {
    std::sort(x.begin(), x.end());
    const double lo = std::log(x.front()), hi = std::log(x.back());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const double g = std::exp(lo + (hi - lo) * k / (nodes - 1));
        const double below = std::lower_bound(x.begin(), x.end(), g) - x.begin();
        const double upto = std::upper_bound(x.begin(), x.end(), g) - x.begin();
        const double f = cdf(g);
        d = std::max({d, std::abs(below / n - f), std::abs(upto / n - f)});
    }
    return d;
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

// one-sample critical value at alpha = 0.01 (asymptotic)
inline double ks_critical_001(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

inline double ks_critical_001(std::size_t n, std::size_t m) {
    return 1.6276 * std::sqrt(double(n + m) / (double(n) * double(m)));
}

// Gamma-Gamma with pointing error: product of two unit-mean Gamma draws and V^{1/eps^2}
struct ProductGammaSampler {
    double alpha, beta, eps;
    int s;
    double U;
    std::mt19937 gen;

    ProductGammaSampler(double a, double b, double e, int s_, double u, unsigned seed)
        : alpha(a), beta(b), eps(e), s(s_), U(u), gen(seed) {}

    double operator()() {
        std::gamma_distribution<double> gx(alpha, 1.0 / alpha), gy(beta, 1.0 / beta);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const double h = gx(gen) * gy(gen);
        const double ip = std::pow(1.0 - uni(gen), 1.0 / (eps * eps));
        const double mean = eps * eps / (1.0 + eps * eps);
        return U * std::pow(h * ip / mean, s);
    }
};

// generalized-Gamma product for general DGG shapes (used by the reduced simulator):
// X^{a} ~ Gamma(b, omega/b)
struct DggReferenceSampler {
    double a1, a2, b1, b2, omega1, omega2, eps;
    int s;
    double U;
    double mean;
    std::mt19937 gen;

    DggReferenceSampler(double a1_, double a2_, double b1_, double b2_, double o1, double o2, double e, int s_,
                        double u, unsigned seed)
        : a1(a1_), a2(a2_), b1(b1_), b2(b2_), omega1(o1), omega2(o2), eps(e), s(s_), U(u), gen(seed) {
        auto m = [](double a, double b, double o) {
            return std::exp(std::lgamma(b + 1.0 / a) - std::lgamma(b)) * std::pow(o / b, 1.0 / a);
        };
        mean = m(a1, b1, omega1) * m(a2, b2, omega2) * eps * eps / (1.0 + eps * eps);
    }

    double operator()() {
        std::gamma_distribution<double> gx(b1, omega1 / b1), gy(b2, omega2 / b2);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const double ix = std::pow(gx(gen), 1.0 / a1);
        const double iy = std::pow(gy(gen), 1.0 / a2);
        const double ip = std::pow(1.0 - uni(gen), 1.0 / (eps * eps));
        return U * std::pow(ix * iy * ip / mean, s);
    }
};

}  // namespace oracle
