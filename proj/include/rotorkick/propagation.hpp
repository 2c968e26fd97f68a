// propagation.hpp — Free rotational evolution, sudden-kick unitaries, pulse
// areas from physical envelopes, and leakage-monitored schedule propagation.

#pragma once

#include "rotorkick/basis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace rotorkick {

// ----------------------------- PhysicalPulse --------------------------------

// A sampled field envelope f(tau*s) on s in [0,1] plus the molecular constants
// needed to reduce it to a dimensionless kick. All quantities in atomic units.
struct PhysicalPulse {
    std::vector<double> envelope;  // f(tau*s), uniformly sampled on [0,1]
    double duration = 0.0;         // tau
    double b_rot = 0.0;            // rotational constant B
    double mu0 = 0.0;              // permanent dipole
    double delta_alpha = 0.0;      // polarizability anisotropy
    double alpha_perp = 0.0;       // perpendicular polarizability
    double sudden_limit = 0.2;     // guard on epsilon = tau*B

    double epsilon() const { return duration * b_rot; }

    void validate() const {
        if (envelope.size() < 3)
            throw std::invalid_argument("PhysicalPulse: need at least 3 envelope samples");
        for (double f : envelope)
            if (!std::isfinite(f))
                throw std::invalid_argument("PhysicalPulse: envelope sample not finite");
        if (!(duration > 0.0) || !(b_rot > 0.0))
            throw std::invalid_argument("PhysicalPulse: duration and b_rot must be positive");
        if (!(epsilon() < sudden_limit))
            throw std::invalid_argument("PhysicalPulse: tau*B exceeds the sudden-regime guard");
    }
};

// Composite Simpson on uniform samples over [0,1]; falls back to Simpson 3/8
// on the last three intervals when the interval count is odd.
inline double simpson_integral(const std::vector<double>& y) {
    if (y.size() < 3)
        throw std::invalid_argument("simpson_integral: need at least 3 samples");
    std::size_t n = y.size() - 1;  // interval count
    double h = 1.0 / static_cast<double>(n);
    std::size_t n13 = (n % 2 == 0) ? n : n - 3;
    double sum = 0.0;
    if (n13 >= 2) {
        sum += y[0] + y[n13];
        for (std::size_t i = 1; i < n13; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
        sum *= h / 3.0;
    }
    if (n13 != n)
        sum += 3.0 * h / 8.0 * (y[n - 3] + 3.0 * y[n - 2] + 3.0 * y[n - 1] + y[n]);
    return sum;
}

// Dimensionless kick strength: A_o = integral of mu0*tau*f(tau s) ds for
// orientation, A_a = integral of delta_alpha*tau*f^2(tau s)/2 ds for alignment.
inline double pulse_area(const PhysicalPulse& pulse, Interaction kind) {
    pulse.validate();
    std::vector<double> integrand(pulse.envelope.size());
    for (std::size_t i = 0; i < pulse.envelope.size(); ++i) {
        double f = pulse.envelope[i];
        integrand[i] = kind == Interaction::orientation
                           ? pulse.mu0 * pulse.duration * f
                           : pulse.delta_alpha * pulse.duration * f * f / 2.0;
    }
    return simpson_integral(integrand);
}

// ------------------------------ Free evolution ------------------------------

// Diagonal phases exp(-i eps j(j+1) ds). Norm-preserving by construction;
// periodic in s with period pi/eps.
inline Vector free_phases(int dim, double epsilon, double delta_s) {
    Vector ph(dim);
    for (int j = 0; j < dim; ++j) {
        double angle = -epsilon * j * (j + 1.0) * delta_s;
        ph(j) = Complex(std::cos(angle), std::sin(angle));
    }
    return ph;
}

inline RotorState free_evolve(const RotorState& state, double epsilon, double delta_s) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("free_evolve: epsilon must be positive");
    return RotorState{free_phases(state.dim(), epsilon, delta_s).cwiseProduct(state.amplitudes)};
}

inline double free_period(double epsilon) { return M_PI / epsilon; }

// ------------------------------ Kick unitary --------------------------------

// U = exp(i * area * h_int) via the Hermitian eigendecomposition.
inline Matrix kick_unitary(const RotorOperator& h_int, double area) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h_int.entries);
    if (es.info() != Eigen::Success)
        throw NumericalError("kick_unitary: eigendecomposition failed");
    Vector phases(h_int.dim());
    for (int k = 0; k < h_int.dim(); ++k) {
        double angle = area * es.eigenvalues()(k);
        phases(k) = Complex(std::cos(angle), std::sin(angle));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// ------------------------------- Schedules ----------------------------------

// One sudden pulse. Times are in rescaled units of tau; t/T_rot = eps*s/pi.
struct KickEvent {
    double s_time = 0.0;
    double area = 0.0;
    Interaction kind = Interaction::orientation;
};

struct TrajectoryPoint {
    double s = 0.0;
    double t_over_trot = 0.0;
    double expectation = 0.0;
    double projection_sq = 0.0;
    double norm = 0.0;
    double leakage = 0.0;  // population outside the control subspace
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    std::vector<KickEvent> kicks;
    std::vector<double> kick_values;  // <O> at each kick instant
};

struct PropagationOptions {
    double epsilon = 0.03;
    double sampling_step = 0.0;              // 0 -> period / 4096
    int leakage_boundary = 0;                // 0 -> state dim (no leakage column)
    std::optional<RotorState> target;        // projection column if present
    double extend_periods = 1.0;             // free tail after the last kick
    std::optional<Interaction> observable_kind;  // default: kind of the first kick
};

namespace detail {

// The kick unitaries of a schedule, one per distinct (kind, area).
class KickBank {
  public:
    KickBank(int dim, const std::vector<KickEvent>& kicks) {
        for (const auto& k : kicks) {
            auto key = std::make_pair(static_cast<int>(k.kind), k.area);
            if (!bank_.count(key))
                bank_.emplace(key, kick_unitary(observable(k.kind, dim), k.area));
        }
    }

    const Matrix& unitary(const KickEvent& k) const {
        return bank_.at(std::make_pair(static_cast<int>(k.kind), k.area));
    }

  private:
    std::map<std::pair<int, double>, Matrix> bank_;
};

}  // namespace detail

// Alternates free evolution and sudden kicks in time order, recording the
// observable, target projection, norm, and leakage on a uniform s-grid that
// extends at least `extend_periods` free periods past the last kick.
inline Trajectory propagate_schedule(const RotorState& initial,
                                     const std::vector<KickEvent>& kicks,
                                     const PropagationOptions& opt) {
    if (!(opt.epsilon > 0.0))
        throw std::invalid_argument("propagate_schedule: epsilon must be positive");
    for (std::size_t i = 1; i < kicks.size(); ++i)
        if (kicks[i].s_time < kicks[i - 1].s_time)
            throw std::invalid_argument("propagate_schedule: kicks must be sorted by s_time");
    if (!kicks.empty() && kicks.front().s_time < 0.0)
        throw std::invalid_argument("propagate_schedule: kick times must be >= 0");
    for (const auto& k : kicks)
        if (!std::isfinite(k.area) || k.area == 0.0)
            throw std::invalid_argument("propagate_schedule: kick areas must be finite and nonzero");
    if (opt.sampling_step < 0.0)
        throw std::invalid_argument("propagate_schedule: sampling step must be positive");

    const int dim = initial.dim();
    const double period = free_period(opt.epsilon);
    const double step = opt.sampling_step > 0.0 ? opt.sampling_step : period / 4096.0;
    const int boundary = opt.leakage_boundary > 0 ? opt.leakage_boundary : dim;
    if (opt.target && opt.target->dim() != dim)
        throw std::invalid_argument("propagate_schedule: target dimension mismatch");

    const Interaction obs_kind = opt.observable_kind
                                     ? *opt.observable_kind
                                     : (kicks.empty() ? Interaction::orientation
                                                      : kicks.front().kind);
    const RotorOperator obs = observable(obs_kind, dim);
    detail::KickBank bank(dim, kicks);

    const double s_end = (kicks.empty() ? 0.0 : kicks.back().s_time)
                         + opt.extend_periods * period;
    const auto n_samples = static_cast<std::size_t>(std::ceil(s_end / step)) + 1;

    Trajectory out;
    out.points.reserve(n_samples);
    out.kicks = kicks;
    out.kick_values.reserve(kicks.size());

    Vector psi = initial.amplitudes;
    double s_state = 0.0;  // time at which psi is current
    std::size_t next_kick = 0;

    auto advance_to = [&](double s) {
        if (s > s_state) {
            psi = free_phases(dim, opt.epsilon, s - s_state).cwiseProduct(psi).eval();
            s_state = s;
        }
    };

    for (std::size_t i = 0; i < n_samples; ++i) {
        double s = static_cast<double>(i) * step;
        while (next_kick < kicks.size() && kicks[next_kick].s_time <= s) {
            advance_to(kicks[next_kick].s_time);
            out.kick_values.push_back(expectation_unchecked(psi, obs.entries));
            psi = (bank.unitary(kicks[next_kick]) * psi).eval();
            ++next_kick;
        }
        Vector at_s = s > s_state
                          ? free_phases(dim, opt.epsilon, s - s_state).cwiseProduct(psi).eval()
                          : psi;
        TrajectoryPoint p;
        p.s = s;
        p.t_over_trot = opt.epsilon * s / M_PI;
        p.expectation = expectation_unchecked(at_s, obs.entries);
        p.projection_sq = opt.target
                              ? std::norm(opt.target->amplitudes.dot(at_s))
                              : 0.0;
        p.norm = at_s.norm();
        p.leakage = population_outside(at_s, boundary);
        out.points.push_back(p);
    }
    // schedules ending exactly on the grid still record trailing kicks
    while (next_kick < kicks.size()) {
        advance_to(kicks[next_kick].s_time);
        out.kick_values.push_back(expectation_unchecked(psi, obs.entries));
        psi = (bank.unitary(kicks[next_kick]) * psi).eval();
        ++next_kick;
    }
    return out;
}

}  // namespace rotorkick
