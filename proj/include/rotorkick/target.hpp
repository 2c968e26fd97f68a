// target.hpp — Kinematically optimal target states: extremal eigenvectors of
// the projected observables, the analytic sine-profile orientation target, and
// the efficiency/duration scan over the control dimension.

#pragma once

#include "rotorkick/basis.hpp"
#include "rotorkick/propagation.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace rotorkick {

enum class ExtremumKind { maximize, minimize };

// ------------------------------ TargetState ---------------------------------

// Extremal eigenvector chi^(N) of the projected observable, with its
// eigenvalue (the kinematic bound on the achievable expectation).
struct TargetState {
    RotorState state;
    double bound = 0.0;
    ExtremumKind extremum = ExtremumKind::maximize;
    Interaction kind = Interaction::orientation;
    bool approximate = false;
};

namespace detail {

// Phase convention: the largest-magnitude coefficient is made real positive,
// so projections are reproducible across eigensolver implementations.
inline Vector fix_phase(Vector v) {
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        double a = std::abs(v(i));
        if (a > best) {
            best = a;
            imax = i;
        }
    }
    Complex z = v(imax);
    if (std::abs(z) > 0.0) v *= std::conj(z) / std::abs(z);
    return v;
}

}  // namespace detail

// Top or bottom eigenvector of a Hermitian observable. A degenerate extremal
// eigenvalue (gap < 1e-8) aborts rather than picking a direction arbitrarily.
inline TargetState target_state(const RotorOperator& obs, ExtremumKind extremum,
                                Interaction kind) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(obs.entries);
    if (es.info() != Eigen::Success)
        throw NumericalError("target_state: eigendecomposition failed");
    const int n = obs.dim();
    int idx = extremum == ExtremumKind::maximize ? n - 1 : 0;
    if (n >= 2) {
        double gap = extremum == ExtremumKind::maximize
                         ? es.eigenvalues()(n - 1) - es.eigenvalues()(n - 2)
                         : es.eigenvalues()(1) - es.eigenvalues()(0);
        if (gap < 1e-8)
            throw NumericalError("target_state: extremal eigenvalue is degenerate");
    }
    Vector chi = detail::fix_phase(es.eigenvectors().col(idx));
    return TargetState{RotorState{std::move(chi)}, es.eigenvalues()(idx), extremum, kind, false};
}

inline TargetState target_state(Interaction kind, int dim,
                                ExtremumKind extremum = ExtremumKind::maximize) {
    return target_state(observable(kind, dim), extremum, kind);
}

// Analytic orientation target c_j = sqrt(2/(N+1)) sin(pi (j+1)/(N+1)) with
// bound cos(pi/(N+1)); exact only in the j >> m limit where the cos couplings
// approach 1/2, hence flagged approximate.
inline TargetState analytic_orientation_target(int n) {
    if (n < 2)
        throw std::invalid_argument("analytic_orientation_target: n must be >= 2");
    Vector c(n);
    for (int j = 0; j < n; ++j)
        c(j) = std::sqrt(2.0 / (n + 1.0)) * std::sin(M_PI * (j + 1.0) / (n + 1.0));
    return TargetState{normalized_state(std::move(c)), std::cos(M_PI / (n + 1.0)),
                       ExtremumKind::maximize, Interaction::orientation, true};
}

// ----------------------------- Duration window ------------------------------

// Fraction of the rotational period, around the target's own extremum at s=0,
// over which the free-evolved expectation stays above `threshold`. Secondary
// lobes are not counted. Crossings located by bisection to 1e-6 relative.
inline double duration_above(const TargetState& target, double epsilon,
                             double threshold = 0.5) {
    if (!(threshold < target.bound))
        throw std::invalid_argument("duration_above: threshold must be below the bound");
    const int dim = target.state.dim();
    const RotorOperator obs = observable(target.kind, dim);
    const double period = free_period(epsilon);

    auto value_at = [&](double s) {
        Vector psi = free_phases(dim, epsilon, s).cwiseProduct(target.state.amplitudes);
        return expectation_unchecked(psi, obs.entries);
    };

    const int n = 8192;
    const double h = period / n;
    auto bisect = [&](double lo, double hi) {
        // value_at(lo) > threshold >= value_at(hi)
        while (hi - lo > 1e-6 * period) {
            double mid = 0.5 * (lo + hi);
            (value_at(mid) > threshold ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    double s_plus = -1.0;
    for (int i = 1; i <= n; ++i) {
        if (value_at(i * h) < threshold) {
            s_plus = bisect((i - 1) * h, i * h);
            break;
        }
    }
    if (s_plus < 0.0) return 1.0;  // never drops below threshold

    double s_minus = -1.0;
    for (int i = 1; i <= n; ++i) {
        if (value_at(period - i * h) < threshold) {
            double hi = period - i * h;          // below threshold
            double lo = period - (i - 1) * h;    // above (wraps to s=0 side)
            while (lo - hi > 1e-6 * period) {
                double mid = 0.5 * (lo + hi);
                (value_at(mid) > threshold ? lo : hi) = mid;
            }
            s_minus = 0.5 * (lo + hi);
            break;
        }
    }
    return (s_plus + (period - s_minus)) / period;
}

// ------------------------- Efficiency/duration scan --------------------------

struct EfficiencyDurationPoint {
    int n = 0;
    double efficiency = 0.0;         // kinematic bound <chi|O^(N)|chi>
    double duration_fraction = 0.0;  // window above 0.5, as Delta t / T_rot
};

inline std::vector<EfficiencyDurationPoint> efficiency_duration_scan(
    Interaction kind, int n_from, int n_to, double epsilon, double threshold = 0.5) {
    if (n_from < 2)
        throw std::invalid_argument("efficiency_duration_scan: n must be >= 2");
    if (n_to < n_from)
        throw std::invalid_argument("efficiency_duration_scan: empty range");
    std::vector<EfficiencyDurationPoint> out;
    out.reserve(n_to - n_from + 1);
    for (int n = n_from; n <= n_to; ++n) {
        TargetState t = target_state(kind, n);
        out.push_back({n, t.bound, duration_above(t, epsilon, threshold)});
    }
    return out;
}

}  // namespace rotorkick
