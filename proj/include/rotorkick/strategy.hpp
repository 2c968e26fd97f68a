// strategy.hpp — Closed-loop kick timing: S1 (kick at maxima of the controlled
// observable) and S2 (kick at maxima of the target projection), the post-kick
// slope identities, and fixed-point classification.

#pragma once

#include "rotorkick/basis.hpp"
#include "rotorkick/propagation.hpp"
#include "rotorkick/target.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace rotorkick {

enum class Scheme { s1, s2 };
enum class MaximaMode { global_in_period, first_local_after_kick };

struct StrategyConfig {
    Scheme scheme = Scheme::s1;
    MaximaMode maxima_mode = MaximaMode::global_in_period;
    Interaction kick_kind = Interaction::orientation;
    double area = 1.0;
    double epsilon = 0.03;
    int n_control = 5;
    int max_kicks = 15;
    double stop_gain = 2e-3;  // per-kick gain of the observable below which we stop

    void validate() const {
        if (max_kicks < 1)
            throw std::invalid_argument("StrategyConfig: max_kicks must be >= 1");
        if (stop_gain < 0.0)
            throw std::invalid_argument("StrategyConfig: stop_gain must be >= 0");
        if (area == 0.0)
            throw std::invalid_argument("StrategyConfig: area must be nonzero");
        if (!(epsilon > 0.0))
            throw std::invalid_argument("StrategyConfig: epsilon must be positive");
        if (n_control < 2)
            throw std::invalid_argument("StrategyConfig: n_control must be >= 2");
    }
};

// --------------------------- Extremum search --------------------------------

struct SignalExtremum {
    double s_time = 0.0;
    double value = 0.0;
    bool stationary = false;  // the signal is constant: the state is a fixed point
};

namespace detail {

constexpr int kSearchGrid = 2048;

inline double golden_section_max(const std::function<double(double)>& f, double a,
                                 double b, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Grid scan over one free period followed by bracketed golden-section
// refinement. Ties between equal grid maxima break toward the earliest time.
inline SignalExtremum search_signal(const std::function<double(double)>& f,
                                    double period, MaximaMode mode, double value_at_zero) {
    const int n = kSearchGrid;
    const double h = period / n;
    std::vector<double> vals(n);
    double vmax = -1e300, vmin = 1e300;
    for (int k = 0; k < n; ++k) {
        vals[k] = f((k + 1) * h);
        vmax = std::max(vmax, vals[k]);
        vmin = std::min(vmin, vals[k]);
    }
    double scale = std::max({1.0, std::abs(vmax), std::abs(vmin)});
    if (vmax - vmin < 1e-13 * scale && std::abs(value_at_zero - vmax) < 1e-13 * scale)
        return {0.0, value_at_zero, true};

    int k_best = -1;
    if (mode == MaximaMode::global_in_period) {
        double best = -1e300;
        for (int k = 0; k < n; ++k)
            if (vals[k] > best) {
                best = vals[k];
                k_best = k;
            }
    } else {
        // first interior local maximum: sign change of the centered difference
        auto deriv = [&](int k) {  // derivative proxy at sample k (0-based)
            double left = k == 0 ? value_at_zero : vals[k - 1];
            double right = k == n - 1 ? vals[k] - (vals[k - 1] - vals[k]) : vals[k + 1];
            return right - left;
        };
        for (int k = 0; k + 1 < n; ++k) {
            if (deriv(k) > 0.0 && deriv(k + 1) <= 0.0) {
                k_best = k + 1;
                break;
            }
        }
        if (k_best < 0) {  // no interior sign change; fall back to the global max
            double best = -1e300;
            for (int k = 0; k < n; ++k)
                if (vals[k] > best) {
                    best = vals[k];
                    k_best = k;
                }
        }
    }

    double a = k_best == 0 ? 0.0 : k_best * h;      // sample k sits at (k+1)h
    double b = std::min(period, (k_best + 2) * h);
    double s = golden_section_max(f, a, b, 1e-9 * period);
    double fs = f(s);
    if (b == period) {
        // endpoint maxima are accepted; an exact period revival beats the
        // refined interior point whenever it is at least as high
        double fp = f(period);
        if (fp >= fs - 1e-14 * scale) return {period, fp, false};
    }
    return {s, fs, false};
}

}  // namespace detail

// Next extremum of <O>(s) under free evolution, over one full period (0, pi/eps].
// Endpoint maxima are accepted; a constant signal flags a fixed point.
inline SignalExtremum next_extremum(const RotorState& state, const RotorOperator& obs,
                                    double epsilon, MaximaMode mode) {
    if (state.dim() != obs.dim())
        throw std::invalid_argument("next_extremum: dimension mismatch");
    const double period = free_period(epsilon);
    const int dim = state.dim();
    auto f = [&](double s) {
        Vector psi = free_phases(dim, epsilon, s).cwiseProduct(state.amplitudes);
        return expectation_unchecked(psi, obs.entries);
    };
    return detail::search_signal(f, period, mode,
                                 expectation_unchecked(state.amplitudes, obs.entries));
}

// Same search contract applied to the projection modulus |<chi|psi(s)>|.
inline SignalExtremum next_projection_max(const RotorState& state, const TargetState& target,
                                          double epsilon,
                                          MaximaMode mode = MaximaMode::global_in_period) {
    if (state.dim() != target.state.dim())
        throw std::invalid_argument("next_projection_max: dimension mismatch");
    const double period = free_period(epsilon);
    const int dim = state.dim();
    auto f = [&](double s) {
        Vector psi = free_phases(dim, epsilon, s).cwiseProduct(state.amplitudes);
        return std::abs(target.state.amplitudes.dot(psi));
    };
    return detail::search_signal(f, period, mode,
                                 std::abs(target.state.amplitudes.dot(state.amplitudes)));
}

// ------------------------------ Strategy run --------------------------------

struct StrategyRun {
    std::vector<KickEvent> kicks;
    std::vector<double> values;       // <O> at each kick instant
    std::vector<double> projections;  // |<chi|psi>|^2 at each kick instant
    RotorState final_state;           // at the first post-train extremum
    double final_value = 0.0;
    double final_projection_sq = 0.0;
    bool converged = false;
    std::optional<int> fixed_point_label;
};

enum class FixedPointVerdict { eigenvector_fixed_point, member_not_eigenvector, not_fixed };

struct FixedPointReport {
    FixedPointVerdict verdict = FixedPointVerdict::not_fixed;
    std::optional<int> eigen_index;
};

// Membership test for the candidate fixed-point set: <[H0,O]> must vanish
// both raw and conjugated by the kick unitary over the sampled areas. Members
// that are eigenvectors of O get their eigenvalue index (ascending order).
inline FixedPointReport classify_fixed_point(const RotorState& state,
                                             const RotorOperator& obs,
                                             const RotorOperator& h0,
                                             const std::vector<double>& area_samples) {
    if (state.dim() != obs.dim() || state.dim() != h0.dim())
        throw std::invalid_argument("classify_fixed_point: dimension mismatch");
    const Matrix comm = h0.entries * obs.entries - obs.entries * h0.entries;
    constexpr double tol = 1e-8;

    auto member = [&]() {
        if (std::abs(state.amplitudes.dot(comm * state.amplitudes)) > tol) return false;
        for (double a : area_samples) {
            Matrix u = kick_unitary(obs, a);
            Vector phi = u * state.amplitudes;
            if (std::abs(phi.dot(comm * phi)) > tol) return false;
        }
        return true;
    }();
    if (!member) return {FixedPointVerdict::not_fixed, std::nullopt};

    Eigen::SelfAdjointEigenSolver<Matrix> es(obs.entries);
    double mean = expectation_unchecked(state.amplitudes, obs.entries);
    Vector residual = obs.entries * state.amplitudes - mean * state.amplitudes;
    if (residual.norm() < tol) {
        int best = 0;
        double dist = 1e300;
        for (int k = 0; k < obs.dim(); ++k) {
            double dd = std::abs(es.eigenvalues()(k) - mean);
            if (dd < dist) {
                dist = dd;
                best = k;
            }
        }
        return {FixedPointVerdict::eigenvector_fixed_point, best};
    }
    return {FixedPointVerdict::member_not_eigenvector, std::nullopt};
}

// Runs the closed loop: kick 1 fires at s = 0 (the origin of the run);
// every later kick fires at the next extremum of the scheme's signal. Stops at
// max_kicks, at a stationary signal, or when the per-kick gain of the
// observable drops below stop_gain. The run's basis is the initial state's
// dimension; when it exceeds n_control the projection target is the control
// target embedded in the larger basis.
inline StrategyRun run_strategy(const StrategyConfig& config, const RotorState& initial) {
    config.validate();
    const int dim = initial.dim();
    if (dim < config.n_control)
        throw std::invalid_argument("run_strategy: state dimension below n_control");

    const RotorOperator obs = observable(config.kick_kind, dim);
    const Matrix u_kick = kick_unitary(obs, config.area);
    TargetState chi = target_state(config.kick_kind, config.n_control);
    if (dim != config.n_control)
        chi.state = embed_or_truncate(chi.state, dim).state;

    StrategyRun run;
    RotorState psi = initial;
    double s_cur = 0.0;

    for (int i = 0; i < config.max_kicks; ++i) {
        double arrival_value;
        if (i == 0) {
            arrival_value = expectation_unchecked(psi.amplitudes, obs.entries);
        } else {
            SignalExtremum ex =
                config.scheme == Scheme::s1
                    ? next_extremum(psi, obs, config.epsilon, config.maxima_mode)
                    : next_projection_max(psi, chi, config.epsilon, config.maxima_mode);
            if (ex.stationary) {
                run.converged = true;
                break;
            }
            psi = free_evolve(psi, config.epsilon, ex.s_time);
            s_cur += ex.s_time;
            arrival_value = expectation_unchecked(psi.amplitudes, obs.entries);
            if (arrival_value - run.values.back() < config.stop_gain) {
                run.converged = true;
                break;
            }
        }
        run.kicks.push_back({s_cur, config.area, config.kick_kind});
        run.values.push_back(arrival_value);
        run.projections.push_back(std::norm(chi.state.amplitudes.dot(psi.amplitudes)));
        psi = RotorState{(u_kick * psi.amplitudes).eval()};
    }

    SignalExtremum fin = next_extremum(psi, obs, config.epsilon, MaximaMode::global_in_period);
    if (fin.stationary) {
        run.converged = true;
        run.final_state = psi;
        run.final_value = fin.value;
    } else {
        run.final_state = free_evolve(psi, config.epsilon, fin.s_time);
        run.final_value = fin.value;
    }
    run.final_projection_sq = std::norm(chi.state.amplitudes.dot(run.final_state.amplitudes));

    RotorOperator h0 = build_j2(dim);
    FixedPointReport fp = classify_fixed_point(run.final_state, obs, h0, {0.37, 1.0, 1.9});
    if (fp.verdict == FixedPointVerdict::eigenvector_fixed_point)
        run.fixed_point_label = fp.eigen_index;
    return run;
}

inline StrategyRun run_strategy(const StrategyConfig& config) {
    return run_strategy(config, ground_state(config.n_control));
}

// ---------------------------- Post-kick slopes -------------------------------

enum class SlopeSpace { infinite, finite };

// Boundary coefficient of the finite-dimensional double commutator
// (1/2)[[J^2, cos^(N)], cos^(N)] = (cos^(N))^2 - 1 + coef * e_{N-1,N-1}.
inline double finite_boundary_coefficient(int n) {
    return static_cast<double>(n) * n / (2.0 * n - 1.0);
}

// Analytic d<O>/ds just after a kick of the matching kind, for a state at a
// free-evolution extremum. Infinite space: 2*eps*A*(1 - <cos^2>) for
// orientation and 2*A*eps*<sin^2 2theta> for alignment, exact for all A.
// Finite space: the first-order (in A) double-commutator value, which for
// orientation carries the boundary term -coef*|a_{N-1}|^2.
inline double post_kick_slope(const RotorState& state, double area, Interaction kind,
                              SlopeSpace space, double epsilon) {
    const int dim = state.dim();
    const RotorOperator obs = observable(kind, dim);
    const Matrix& o = obs.entries;
    const Matrix h0 = build_j2(dim).entries;

    // extremum precondition: d<O>/ds = i eps <[J^2, O]> must vanish
    Complex pre = state.amplitudes.dot((h0 * o - o * h0) * state.amplitudes);
    if (std::abs(pre) * epsilon > 1e-8)
        throw std::invalid_argument("post_kick_slope: state is not at a free-evolution extremum");

    if (space == SlopeSpace::infinite) {
        if (kind == Interaction::orientation) {
            double c2 = expectation_unchecked(state.amplitudes, cos_power_block(dim, 2));
            return 2.0 * epsilon * area * (1.0 - c2);
        }
        Matrix sin2_2theta = 4.0 * (cos_power_block(dim, 2) - cos_power_block(dim, 4));
        return 2.0 * area * epsilon * expectation_unchecked(state.amplitudes, sin2_2theta);
    }

    // finite space: slope = -eps*A*<[[J^2, O^(N)], O^(N)]> + O(A^2)
    Matrix c1 = h0 * o - o * h0;
    Matrix c2 = c1 * o - o * c1;
    return -epsilon * area * state.amplitudes.dot(c2 * state.amplitudes).real();
}

}  // namespace rotorkick
