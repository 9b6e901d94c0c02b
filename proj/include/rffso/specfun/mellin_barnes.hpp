#pragma once

#include <complex>
#include <string>
#include <vector>

namespace rffso::specfun {

struct EvalOptions {
    double target_abs_tol = 1e-12;
    double target_rel_tol = 1e-10;
    int max_quadrature_nodes = 200000;
    double pole_separation_tol = 1e-8;

    void validate() const;
};

// Gamma(offset + slope * u)
struct GammaTerm {
    double offset = 0.0;
    double slope = 1.0;
};

// (1/2 pi i) * integral over a vertical line of
//     prod Gamma(num) / prod Gamma(den) * exp(-u * log_arg) du
// Terms with positive slope contribute "left" poles, negative slope "right" poles.
// Meijer G and Fox H functions are both special cases.
struct MellinBarnesIntegral {
    std::vector<GammaTerm> num;
    std::vector<GammaTerm> den;
    double log_arg = 0.0;
};

struct Pole {
    double location = 0.0;
    std::size_t term = 0;  // index into num
    int k = 0;             // k-th pole of that term
    bool left = true;
};

struct Strip {
    double lo;  // largest left pole (or -inf)
    double hi;  // smallest right pole (or +inf)
};

struct MBDiagnostics {
    double abscissa = 0.0;
    double log_scale = 0.0;  // value = mantissa * exp(log_scale) for the line part
    int nodes = 0;
    double error_bound = 0.0;
    int residue_corrections = 0;
    int perturbations = 0;
    std::vector<std::string> notes;
};

struct MBResult {
    double value = 0.0;
    double error = 0.0;
    MBDiagnostics diag;
};

Strip pole_strip(const MellinBarnesIntegral& mb);

// (sum of |slopes| in num - sum in den) / 2; the integrand decays like exp(-pi c* |Im u|)
double decay_rate(const MellinBarnesIntegral& mb);

std::complex<double> log_integrand(const MellinBarnesIntegral& mb, std::complex<double> u);

// Full contour integral. Abscissa is the minimiser of the real-axis log-integrand
// inside the pole strip; narrow or inverted strips fall back to a line with
// explicit residue corrections.
MBResult evaluate(const MellinBarnesIntegral& mb, const EvalOptions& opts = {});

// Value of the integral minus the contributions of `excluded`, computed as the
// line integral at abscissa c plus residues of poles on the wrong side of c.
MBResult evaluate_shifted(const MellinBarnesIntegral& mb, double c, const std::vector<Pole>& excluded,
                          const EvalOptions& opts = {});

// Contribution of one simple pole to the integral's value (sign included:
// left poles add residues, right poles subtract them).
// Throws DegenerateParameterError when another numerator factor is singular there.
double pole_contribution(const MellinBarnesIntegral& mb, const Pole& p, const EvalOptions& opts = {});

// Sum of pole contributions. Coincident poles are resolved by shifting one of
// the offending gamma offsets by +/-1e-6 and averaging; diag records it.
MBResult residue_sum(const MellinBarnesIntegral& mb, const std::vector<Pole>& poles,
                     const EvalOptions& opts = {});

// Poles of num[term], k = 0..count-1
std::vector<Pole> term_poles(const MellinBarnesIntegral& mb, std::size_t term, int count);

}  // namespace rffso::specfun
