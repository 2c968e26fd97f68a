// lie.hpp — Controllability and fixed-point-set algebra: the Lie closure of
// {iH0, iH_I}, the ad-sequence space V, the N(N-1) criterion, and the
// equally-spaced-spectrum test.

#pragma once

#include "rotorkick/basis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <vector>

namespace rotorkick {

// ad^0 = H0, ad^n = [ad^(n-1), O]. Returns ad^1 .. ad^depth. The entries
// alternate skew-Hermitian (odd n) and Hermitian (even n); real-span ranks are
// unchanged by the i factor that would place every term in u(N).
inline std::vector<Matrix> ad_sequence(const RotorOperator& h0, const RotorOperator& obs,
                                       int depth) {
    if (h0.dim() != obs.dim())
        throw std::invalid_argument("ad_sequence: dimension mismatch");
    if (depth < 1)
        throw std::invalid_argument("ad_sequence: depth must be >= 1");
    std::vector<Matrix> out;
    out.reserve(depth);
    Matrix cur = h0.entries;
    for (int n = 1; n <= depth; ++n) {
        cur = (cur * obs.entries - obs.entries * cur).eval();
        out.push_back(cur);
    }
    return out;
}

namespace detail {

// Columns of R: each matrix flattened to (Re, Im) over the reals, normalized
// so the rank threshold is meaningful across wildly different scales.
inline Eigen::MatrixXd real_span_columns(const std::vector<Matrix>& mats) {
    const auto rows = static_cast<Eigen::Index>(2 * mats.front().size());
    Eigen::MatrixXd r(rows, static_cast<Eigen::Index>(mats.size()));
    for (std::size_t c = 0; c < mats.size(); ++c) {
        if (mats[c].rows() != mats.front().rows() || mats[c].cols() != mats.front().cols())
            throw std::invalid_argument("real_span_rank: inconsistent shapes");
        Eigen::Index i = 0;
        double norm = mats[c].norm();
        double scale = norm > 0.0 ? 1.0 / norm : 1.0;
        for (Eigen::Index col = 0; col < mats[c].cols(); ++col)
            for (Eigen::Index row = 0; row < mats[c].rows(); ++row) {
                r(i++, static_cast<Eigen::Index>(c)) = scale * mats[c](row, col).real();
                r(i++, static_cast<Eigen::Index>(c)) = scale * mats[c](row, col).imag();
            }
    }
    return r;
}

inline int svd_rank(const Eigen::MatrixXd& r, double rel_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * sv(0)) ++rank;
    return rank;
}

}  // namespace detail

// Rank over the reals of the span of a matrix family, via singular values with
// relative threshold 1e-10. The integer must be stable under a tenfold
// perturbation of the threshold, otherwise the rank is ill-conditioned.
inline int real_span_rank(const std::vector<Matrix>& mats) {
    if (mats.empty())
        throw std::invalid_argument("real_span_rank: empty list");
    Eigen::MatrixXd r = detail::real_span_columns(mats);
    int rank = detail::svd_rank(r, 1e-10);
    if (detail::svd_rank(r, 1e-9) != rank || detail::svd_rank(r, 1e-11) != rank)
        throw NumericalError("real_span_rank: rank unstable under threshold perturbation");
    return rank;
}

// dim V: real dimension of the span of the ad-sequence. The raw sequence is
// badly scaled (each new direction enters with geometrically shrinking
// weight), so the span is built as the closure of ad^1 under commutation with
// O using orthonormal representatives: every new direction regenerates at
// unit scale and the accept/reject residuals separate cleanly. Residuals
// within a factor 10 of the tolerance on both sides mean the dimension is not
// resolvable in double precision, which is reported rather than guessed.
inline int dim_v(const RotorOperator& h0, const RotorOperator& obs) {
    const int n = h0.dim();
    constexpr double tol = 1e-10;

    std::vector<Eigen::VectorXd> ortho;
    std::vector<Matrix> reps;
    double min_accepted = 1.0, max_rejected = 0.0;

    auto try_add = [&](const Matrix& m) {
        double norm = m.norm();
        if (norm < 1e-13) return;
        Eigen::VectorXd v = detail::real_span_columns({m}).col(0);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : ortho) v -= b.dot(v) * b;
        double r = v.norm();
        if (r > tol) {
            min_accepted = std::min(min_accepted, r);
            ortho.push_back(v / r);
            reps.push_back(m / norm);
        } else {
            max_rejected = std::max(max_rejected, r);
        }
    };

    try_add(h0.entries * obs.entries - obs.entries * h0.entries);
    for (std::size_t i = 0; i < reps.size() && reps.size() <= 2u * n * n; ++i)
        try_add(reps[i] * obs.entries - obs.entries * reps[i]);

    if (max_rejected > tol / 10.0 || min_accepted < tol * 10.0)
        throw NumericalError("dim_v: accept/reject residual gap too narrow at n = " +
                             std::to_string(n));
    return static_cast<int>(ortho.size());
}

inline int dim_v(Interaction kind, int n) {
    if (n < 2) throw std::invalid_argument("dim_v: n must be >= 2");
    return dim_v(build_j2(n), observable(kind, n));
}

// Real dimension of the Lie algebra generated by iH0 and iH_I: repeatedly
// commutate all pairs against the current independent set until no growth.
// Gram-Schmidt over the flattened real representation keeps candidates
// independent; complete controllability holds iff the dimension reaches n^2.
inline int lie_closure_dim(const RotorOperator& h0, const RotorOperator& h_int) {
    if (h0.dim() != h_int.dim())
        throw std::invalid_argument("lie_closure_dim: dimension mismatch");
    const Complex i_unit(0.0, 1.0);
    std::vector<Matrix> elements;           // accepted independent generators
    std::vector<Eigen::VectorXd> ortho;     // orthonormal flattened images

    auto try_add = [&](const Matrix& m) {
        double norm = m.norm();
        if (norm < 1e-14) return false;
        Eigen::VectorXd v = detail::real_span_columns({m}).col(0);
        for (const auto& b : ortho) v -= b.dot(v) * b;
        if (v.norm() <= 1e-10) return false;
        ortho.push_back(v.normalized());
        elements.push_back(m / norm);
        return true;
    };

    try_add(i_unit * h0.entries);
    try_add(i_unit * h_int.entries);
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t frozen = elements.size();
        for (std::size_t a = 0; a < frozen; ++a)
            for (std::size_t b = a + 1; b < frozen; ++b) {
                Matrix c = elements[a] * elements[b] - elements[b] * elements[a];
                if (try_add(c)) grew = true;
            }
    }
    return static_cast<int>(elements.size());
}

inline int lie_closure_dim(Interaction kind, int n) {
    if (n < 2) throw std::invalid_argument("lie_closure_dim: n must be >= 2");
    return lie_closure_dim(build_j2(n), observable(kind, n));
}

// True if two distinct level pairs share the same spectral gap: there exist
// (p,q) != (r,s), p != q, with chi_p - chi_q = chi_r - chi_s to 1e-9.
inline bool equally_spaced(const std::vector<double>& spectrum, double tol = 1e-9) {
    if (spectrum.size() < 2)
        throw std::invalid_argument("equally_spaced: need at least 2 levels");
    const int n = static_cast<int>(spectrum.size());
    std::vector<double> gaps;
    gaps.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (p != q) gaps.push_back(spectrum[p] - spectrum[q]);
    std::sort(gaps.begin(), gaps.end());
    for (std::size_t i = 1; i < gaps.size(); ++i)
        if (std::abs(gaps[i] - gaps[i - 1]) < tol) return true;
    return false;
}

// ------------------------------- LieReport ----------------------------------

struct LieReport {
    int n = 0;
    int dim_closure = 0;
    int dim_v = 0;
    int max_dim_v = 0;                      // n(n-1)
    bool controllable = false;              // dim_closure == n^2
    bool unique_eigen_fixed_points = false; // dim_v == n(n-1)
    bool equally_spaced_spectrum = false;
};

inline LieReport lie_report(Interaction kind, int n) {
    if (n < 2) throw std::invalid_argument("lie_report: n must be >= 2");
    const RotorOperator h0 = build_j2(n);
    const RotorOperator obs = observable(kind, n);
    LieReport rep;
    rep.n = n;
    rep.dim_closure = lie_closure_dim(h0, obs);
    rep.dim_v = dim_v(h0, obs);
    rep.max_dim_v = n * (n - 1);
    rep.controllable = rep.dim_closure == n * n;
    rep.unique_eigen_fixed_points = rep.dim_v == rep.max_dim_v;
    Eigen::SelfAdjointEigenSolver<Matrix> es(obs.entries);
    std::vector<double> spec(es.eigenvalues().data(), es.eigenvalues().data() + n);
    rep.equally_spaced_spectrum = equally_spaced(spec);
    return rep;
}

}  // namespace rotorkick
