#include "rffso/secrecy/scenario.hpp"

#include <cmath>

#include "rffso/errors.hpp"

namespace rffso::secrecy {

double Scenario1Config::phi1() const { return std::exp2(target_rate); }

void Scenario1Config::validate() const {
    if (!(target_rate >= 0.0) || !std::isfinite(target_rate))
        throw InvalidParameterError("scenario 1: target rate must be >= 0");
}

double Scenario2Config::phi2() const { return std::exp2(2.0 * target_rate); }

void Scenario2Config::validate() const {
    if (!(target_rate >= 0.0) || !std::isfinite(target_rate))
        throw InvalidParameterError("scenario 2: target rate must be >= 0");
    if (!fso_main.params().same_shape(fso_eve.params()))
        throw InvalidParameterError(
            "scenario 2: main and eavesdropper FSO links must share a1, a2, b1, b2, omega1, omega2, "
            "lambda1, lambda2 and eps");
}

}  // namespace rffso::secrecy
