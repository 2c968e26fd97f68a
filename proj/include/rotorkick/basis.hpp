// basis.hpp — Truncated |j, m=0> rotational basis: J^2, cos(theta), cos^2(theta),
// state-vector utilities, and the projection bookkeeping between control and
// reference bases.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace rotorkick {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Raised when a computation (not a caller contract) goes numerically bad.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Which molecule-field interaction drives a kick, and which observable is
// being controlled: cos(theta) for orientation, cos^2(theta) for alignment.
enum class Interaction { orientation, alignment };

inline const char* to_string(Interaction kind) {
    return kind == Interaction::orientation ? "orientation" : "alignment";
}

// ------------------------------ BasisSpec -----------------------------------

// Dimensions of the control subspace H^(N) and of the large reference basis
// used for exact propagation. m = 0 throughout.
struct BasisSpec {
    int n_control = 5;
    int n_exact = 40;

    void validate() const {
        if (n_control < 2)
            throw std::invalid_argument("BasisSpec: n_control must be >= 2");
        if (n_exact <= n_control)
            throw std::invalid_argument("BasisSpec: n_exact must exceed n_control");
    }
};

// ----------------------------- RotorOperator --------------------------------

// Dense Hermitian operator on the truncated |j, m=0> basis.
struct RotorOperator {
    Matrix entries;

    int dim() const { return static_cast<int>(entries.rows()); }
};

inline double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Wraps a matrix as a RotorOperator, enforcing Hermiticity to 1e-12 entrywise.
inline RotorOperator make_operator(Matrix m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("make_operator: matrix must be square");
    if (m.rows() < 1)
        throw std::invalid_argument("make_operator: dimension must be >= 1");
    if (hermiticity_defect(m) > 1e-12)
        throw std::invalid_argument("make_operator: matrix is not Hermitian");
    return RotorOperator{std::move(m)};
}

// ------------------------------ RotorState ----------------------------------

// Normalized complex amplitude vector over |j, m=0>, j = 0..dim-1.
struct RotorState {
    Vector amplitudes;

    int dim() const { return static_cast<int>(amplitudes.size()); }
    double norm() const { return amplitudes.norm(); }
};

inline RotorState make_state(Vector a) {
    if (a.size() < 1)
        throw std::invalid_argument("make_state: dimension must be >= 1");
    double n = a.norm();
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument("make_state: amplitudes are not normalized");
    return RotorState{std::move(a)};
}

// Normalizes and wraps; rejects the zero vector.
inline RotorState normalized_state(const Vector& a) {
    double n = a.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw std::invalid_argument("normalized_state: vector has no norm");
    return RotorState{a / n};
}

inline RotorState basis_state(int dim, int j) {
    if (dim < 1) throw std::invalid_argument("basis_state: dim must be >= 1");
    if (j < 0 || j >= dim) throw std::invalid_argument("basis_state: j out of range");
    Vector a = Vector::Zero(dim);
    a(j) = 1.0;
    return RotorState{std::move(a)};
}

// |j=0, m=0>, the rotor ground state.
inline RotorState ground_state(int dim) { return basis_state(dim, 0); }

// --------------------------- Operator builders ------------------------------

// <j|cos(theta)|j+1> for m = 0.
inline double cos_coupling(int j) {
    return (j + 1.0) / std::sqrt((2.0 * j + 1.0) * (2.0 * j + 3.0));
}

// J^2: diagonal j(j+1).
inline RotorOperator build_j2(int dim) {
    if (dim < 1) throw std::invalid_argument("build_j2: dim must be >= 1");
    Matrix m = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) m(j, j) = j * (j + 1.0);
    return RotorOperator{std::move(m)};
}

// cos(theta): real symmetric tridiagonal, zero diagonal (parity rule for m=0).
inline RotorOperator build_cos(int dim) {
    if (dim < 1) throw std::invalid_argument("build_cos: dim must be >= 1");
    Matrix m = Matrix::Zero(dim, dim);
    for (int j = 0; j + 1 < dim; ++j) {
        m(j, j + 1) = cos_coupling(j);
        m(j + 1, j) = cos_coupling(j);
    }
    return RotorOperator{std::move(m)};
}

// Exact top-left dim x dim block of cos^p(theta). cos couples only j -> j+-1,
// so building cos one level larger per power loses no in-block terms.
inline Matrix cos_power_block(int dim, int power) {
    if (dim < 1) throw std::invalid_argument("cos_power_block: dim must be >= 1");
    if (power < 1) throw std::invalid_argument("cos_power_block: power must be >= 1");
    Matrix c = build_cos(dim + power).entries;
    Matrix acc = c;
    for (int p = 1; p < power; ++p) acc = acc * c;
    return acc.topLeftCorner(dim, dim);
}

// Projected cos^2(theta) on H^(dim): pentadiagonal, exact.
inline RotorOperator build_cos2(int dim) {
    Matrix m = cos_power_block(dim, 2);
    // symmetrize away the last bits of fp noise from the matrix product
    m = 0.5 * (m + m.adjoint()).eval();
    return RotorOperator{std::move(m)};
}

// The controlled observable for a given interaction kind.
inline RotorOperator observable(Interaction kind, int dim) {
    return kind == Interaction::orientation ? build_cos(dim) : build_cos2(dim);
}

// sin(theta) d/dtheta in the |j, m=0> basis. Real but not symmetric; returned
// as a plain matrix, not a RotorOperator. Used by the inter-pulse estimates.
inline Matrix sigma_theta(int dim) {
    if (dim < 1) throw std::invalid_argument("sigma_theta: dim must be >= 1");
    Matrix m = Matrix::Zero(dim, dim);
    for (int j = 1; j < dim; ++j)
        m(j - 1, j) = -j * (j + 1.0) / std::sqrt((2.0 * j - 1.0) * (2.0 * j + 1.0));
    for (int j = 0; j + 1 < dim; ++j)
        m(j + 1, j) = j * (j + 1.0) / std::sqrt((2.0 * j + 1.0) * (2.0 * j + 3.0));
    return m;
}

// ------------------------------ Expectation ---------------------------------

// <psi|O|psi>. Rejects dimension mismatches and non-normalized states; the
// imaginary residue of the quadratic form must be < 1e-10.
inline double expectation(const RotorState& state, const RotorOperator& op) {
    if (state.dim() != op.dim())
        throw std::invalid_argument("expectation: dimension mismatch");
    if (std::abs(state.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("expectation: state is not normalized");
    Complex q = state.amplitudes.dot(op.entries * state.amplitudes);
    if (std::abs(q.imag()) > 1e-10)
        throw NumericalError("expectation: imaginary residue " + std::to_string(q.imag()));
    return q.real();
}

// Raw quadratic form without the normalization guard; for inner loops where
// the caller owns the invariants.
inline double expectation_unchecked(const Vector& psi, const Matrix& op) {
    return psi.dot(op * psi).real();
}

// --------------------------- Embed / truncate -------------------------------

struct ResizedState {
    RotorState state;
    double leak = 0.0;  // discarded probability on truncation
};

// Zero-pads on enlargement (leak 0); truncates and renormalizes otherwise,
// reporting the discarded population.
inline ResizedState embed_or_truncate(const RotorState& state, int new_dim) {
    if (new_dim < 1)
        throw std::invalid_argument("embed_or_truncate: new_dim must be >= 1");
    int d = state.dim();
    if (new_dim >= d) {
        Vector a = Vector::Zero(new_dim);
        a.head(d) = state.amplitudes;
        return {RotorState{std::move(a)}, 0.0};
    }
    Vector a = state.amplitudes.head(new_dim);
    double kept = a.squaredNorm();
    double leak = 1.0 - kept;
    if (!(kept > 0.0))
        throw NumericalError("embed_or_truncate: truncation removed all population");
    return {RotorState{a / std::sqrt(kept)}, leak};
}

// Population beyond the first `boundary` levels.
inline double population_outside(const Vector& psi, int boundary) {
    if (boundary >= psi.size()) return 0.0;
    return psi.tail(psi.size() - boundary).squaredNorm();
}

}  // namespace rotorkick
