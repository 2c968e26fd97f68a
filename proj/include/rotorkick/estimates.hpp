// estimates.hpp — Analytic inter-pulse delay and per-kick gain estimates for
// the orientation strategy, from the short-delay expansion of <cos theta>(s)
// after a kick.

#pragma once

#include "rotorkick/basis.hpp"
#include "rotorkick/propagation.hpp"

#include <cmath>
#include <optional>

namespace rotorkick {

enum class DelayRegime { general, large_area, small_area };

struct InterpulseEstimate {
    double delta_s = 0.0;           // rescaled time to the next maximum
    double delta_t_over_trot = 0.0; // same, as a fraction of the rotational period
    std::optional<double> delta_gain;  // expected <cos> gain per kick (small_area only)
};

// Expectations are taken in the state's own (reference) basis; the state
// should be near a maximum of <cos theta> for the expansion to apply.
// general:    ds = 2A(1-<c2>) / (eps [4<cJ2> - 8A Im<sc> + 4A^2 <c-c3>])
// small_area: ds = A(1-<c2>) / (2 eps <cJ2>)
// large_area: ds = (1-<c2>) / (2 eps A <c-c3>)
inline InterpulseEstimate interpulse_estimate(const RotorState& state, double area,
                                              double epsilon, DelayRegime regime) {
    const int dim = state.dim();
    const Vector& psi = state.amplitudes;
    const Matrix cos1 = build_cos(dim).entries;
    const Matrix cos2 = cos_power_block(dim, 2);
    const Matrix cos3 = cos_power_block(dim, 3);
    const Matrix j2 = build_j2(dim).entries;

    const double c2 = psi.dot(cos2 * psi).real();
    const double c_j2 = psi.dot(cos1 * j2 * psi).real();
    const double c_minus_c3 = psi.dot((cos1 - cos3) * psi).real();
    const double im_sc = psi.dot(sigma_theta(dim) * cos1 * psi).imag();

    double delta_s = 0.0;
    std::optional<double> gain;
    switch (regime) {
        case DelayRegime::general: {
            double den = epsilon * (4.0 * c_j2 - 8.0 * area * im_sc
                                    + 4.0 * area * area * c_minus_c3);
            if (std::abs(den) < 1e-12)
                throw NumericalError("interpulse_estimate: vanishing denominator");
            delta_s = 2.0 * area * (1.0 - c2) / den;
            break;
        }
        case DelayRegime::small_area: {
            double den = 2.0 * epsilon * c_j2;
            if (std::abs(den) < 1e-12)
                throw NumericalError("interpulse_estimate: vanishing denominator");
            delta_s = area * (1.0 - c2) / den;
            gain = (1.0 - c2) * (1.0 - c2) * area * area / (2.0 * c_j2);
            break;
        }
        case DelayRegime::large_area: {
            double den = 2.0 * epsilon * area * c_minus_c3;
            if (std::abs(den) < 1e-12)
                throw NumericalError("interpulse_estimate: vanishing denominator");
            delta_s = (1.0 - c2) / den;
            break;
        }
    }
    return {delta_s, epsilon * delta_s / M_PI, gain};
}

}  // namespace rotorkick
