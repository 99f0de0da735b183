#pragma once

// Correlation measures for two-qubit states: concurrence, the
// Hilbert-Schmidt, trace and fidelity forms of measurement-induced
// nonlocality (MIN), and the overlap fidelity. X-form states get closed
// forms; every closed form has an independent oracle that optimizes the
// measurement disturbance directly on the measurement sphere.
//
// MIN maximizes the disturbance over local von Neumann measurements on
// qubit a that leave its reduced state untouched. For a nondegenerate
// marginal that admits exactly one measurement axis, the marginal's own
// eigenbasis; when the marginal is maximally mixed every axis qualifies and
// the oracle searches the whole sphere. The closed forms follow the
// pinned-axis convention, so on a degenerate marginal the sphere search may
// legitimately exceed them.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "qcorr/matcore.hpp"
#include "qcorr/spinmodel.hpp"

namespace qcorr {

/// The six real numbers of an X-form state: main diagonal plus the two
/// anti-diagonal coherences.
struct XElements {
    double r11 = 0.0, r22 = 0.0, r33 = 0.0, r44 = 0.0;
    double r14 = 0.0, r23 = 0.0;

    static XElements validated(const XElements& x)
    {
        if (std::abs(x.r11 + x.r22 + x.r33 + x.r44 - 1.0) > 1e-12)
            throw std::invalid_argument("XElements: diagonal must sum to one");
        if (x.r11 * x.r44 < x.r14 * x.r14 - 1e-12 || x.r22 * x.r33 < x.r23 * x.r23 - 1e-12)
            throw std::invalid_argument("XElements: 2x2 block positivity violated");
        return x;
    }

    Mat4 to_matrix() const
    {
        Mat4 m;
        m(0, 0) = r11;
        m(1, 1) = r22;
        m(2, 2) = r33;
        m(3, 3) = r44;
        m(0, 3) = m(3, 0) = r14;
        m(1, 2) = m(2, 1) = r23;
        return m;
    }
};

/// Read the six X elements off a density matrix. Entries outside the X
/// pattern must vanish (below 1e-10) and the coherences must be real.
inline XElements extract_x(const DensityMatrix& rho)
{
    const Mat4& m = rho.mat();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool on_pattern = (i == j) || (i + j == 3);
            if (!on_pattern && std::abs(m(i, j)) > 1e-10)
                throw std::invalid_argument("extract_x: state is not of X form");
        }
    if (std::abs(m(0, 3).imag()) > 1e-10 || std::abs(m(1, 2).imag()) > 1e-10)
        throw std::domain_error("extract_x: complex coherences are not supported");
    XElements x;
    x.r11 = m(0, 0).real();
    x.r22 = m(1, 1).real();
    x.r33 = m(2, 2).real();
    x.r44 = m(3, 3).real();
    x.r14 = m(0, 3).real();
    x.r23 = m(1, 2).real();
    return XElements::validated(x);
}

/// Wootters concurrence of an arbitrary two-qubit state. The spectrum of
/// rho rho~ is taken from the Hermitian similar form sqrt(rho) rho~
/// sqrt(rho); tiny negative eigenvalues are clamped to zero.
inline double concurrence_general(const DensityMatrix& rho)
{
    const Mat4 yy = kron(pauli::y(), pauli::y());
    const Mat4 flipped = yy * conjugate(rho.mat()) * yy;
    const Mat4 root = mat_sqrt(rho.mat());
    auto vals = herm_eigenvalues(root * flipped * root); // ascending
    double c = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double s = std::sqrt(std::max(0.0, vals[i]));
        c += (i == 3) ? s : -s;
    }
    return std::max(0.0, c);
}

/// Closed-form concurrence of an X state,
/// 2 max{0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)}.
inline double concurrence_x(const XElements& x)
{
    const double inner = std::sqrt(std::max(0.0, x.r22 * x.r33));
    const double outer = std::sqrt(std::max(0.0, x.r11 * x.r44));
    return 2.0 * std::max({0.0, std::abs(x.r14) - inner, std::abs(x.r23) - outer});
}

namespace detail {

inline void require_balanced_middle(const XElements& x, const char* who)
{
    if (std::abs(x.r22 - x.r33) > 1e-10)
        throw std::domain_error(std::string(who) +
                                ": closed form requires r22 = r33; use min_oracle instead");
}

} // namespace detail

/// Hilbert-Schmidt MIN of an X state with balanced middle populations:
/// 2 (r14^2 + r23^2).
inline double min_hs_x(const XElements& x)
{
    detail::require_balanced_middle(x, "min_hs_x");
    return 2.0 * (x.r14 * x.r14 + x.r23 * x.r23);
}

/// Trace MIN of an X state, |r14| + |r23|. This keeps the halved reporting
/// convention bounded by 0.5; the direct trace-norm maximization returns
/// exactly twice this value (see min_oracle).
inline double min_trace_x(const XElements& x)
{
    detail::require_balanced_middle(x, "min_trace_x");
    return std::abs(x.r14) + std::abs(x.r23);
}

/// Fidelity MIN of an X state,
/// 2(r14^2 + r23^2) / [2(r14^2 + r23^2) + sum_i rii^2].
inline double min_fid_x(const XElements& x)
{
    detail::require_balanced_middle(x, "min_fid_x");
    const double c = 2.0 * (x.r14 * x.r14 + x.r23 * x.r23);
    const double d = x.r11 * x.r11 + x.r22 * x.r22 + x.r33 * x.r33 + x.r44 * x.r44;
    return c / (c + d);
}

namespace detail {

inline double fidelity_raw(const Mat4& a, const Mat4& b)
{
    const double ab = trace(a * b).real();
    const double aa = trace(a * a).real();
    const double bb = trace(b * b).real();
    return (ab * ab) / (aa * bb);
}

} // namespace detail

/// Overlap fidelity (tr(rho sigma))^2 / (tr(rho^2) tr(sigma^2)); 1 for equal
/// states, 0 for non-overlapping ones.
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma)
{
    return detail::fidelity_raw(rho.mat(), sigma.mat());
}

/// Bloch angles of the measurement axis on qubit a.
struct MeasurementAxis {
    double theta = 0.0; // in [0, pi]
    double phi = 0.0;   // in [0, 2 pi)

    static MeasurementAxis validated(double theta, double phi)
    {
        const double pi = std::acos(-1.0);
        if (!(theta >= 0.0 && theta <= pi) || !(phi >= 0.0 && phi < 2.0 * pi))
            throw std::invalid_argument("MeasurementAxis: angles out of range");
        return MeasurementAxis{theta, phi};
    }
};

namespace detail {

inline Mat2 axis_operator(double theta, double phi)
{
    const double nx = std::sin(theta) * std::cos(phi);
    const double ny = std::sin(theta) * std::sin(phi);
    const double nz = std::cos(theta);
    Mat2 u;
    u(0, 0) = nz;
    u(1, 1) = -nz;
    u(0, 1) = Complex(nx, -ny);
    u(1, 0) = Complex(nx, ny);
    return u;
}

// Unread measurement along n on qubit a. With U = n.sigma the projector sum
// collapses to (rho + (U x I) rho (U x I)) / 2.
inline Mat4 measured_raw(const Mat4& rho, double theta, double phi)
{
    const Mat4 u = kron(axis_operator(theta, phi), pauli::id());
    return Complex(0.5) * (rho + u * rho * u);
}

} // namespace detail

/// Post-measurement (unread) state of a von Neumann measurement along the
/// given axis on qubit a, via the projectors (I +- n.sigma)/2. Idempotent.
inline DensityMatrix local_projective(const DensityMatrix& rho, const MeasurementAxis& ax)
{
    const Mat2 u = detail::axis_operator(ax.theta, ax.phi);
    const Mat2 id = pauli::id();
    const Mat2 p_plus = Complex(0.5) * (id + u);
    const Mat2 p_minus = Complex(0.5) * (id - u);
    const Mat4 lp = kron(p_plus, id);
    const Mat4 lm = kron(p_minus, id);
    const Mat4 out = lp * rho.mat() * lp + lm * rho.mat() * lm;
    return DensityMatrix::validated(out);
}

enum class MinKind { HS, Trace, Fid };

namespace detail {

inline double disturbance(MinKind kind, const Mat4& rho, double theta, double phi)
{
    const Mat4 measured = measured_raw(rho, theta, phi);
    switch (kind) {
        case MinKind::HS: {
            const double n = hs_norm(rho - measured);
            return n * n;
        }
        case MinKind::Trace: return trace_norm(rho - measured);
        case MinKind::Fid: return 1.0 - fidelity_raw(rho, measured);
    }
    return 0.0;
}

// Coarse 1-degree grid over the admissible sphere followed by coordinate
// descent with a shrinking step down to 1e-6 in angle.
inline double sphere_maximum(MinKind kind, const Mat4& rho)
{
    const double pi = std::acos(-1.0);
    const double step0 = pi / 180.0;

    double best = 0.0, best_theta = 0.0, best_phi = 0.0;
    for (int it = 0; it <= 180; ++it) {
        const double theta = it * step0;
        for (int ip = 0; ip < 360; ++ip) {
            const double phi = ip * step0;
            const double v = disturbance(kind, rho, theta, phi);
            if (v > best) {
                best = v;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    double step = step0;
    while (step > 1e-6) {
        bool improved = false;
        const double cand[4][2] = {{best_theta + step, best_phi},
                                   {best_theta - step, best_phi},
                                   {best_theta, best_phi + step},
                                   {best_theta, best_phi - step}};
        for (const auto& c : cand) {
            double th = std::clamp(c[0], 0.0, pi);
            double ph = std::fmod(c[1] + 2.0 * pi, 2.0 * pi);
            const double v = disturbance(kind, rho, th, ph);
            if (v > best) {
                best = v;
                best_theta = th;
                best_phi = ph;
                improved = true;
            }
        }
        if (!improved) step /= 10.0;
    }
    return best;
}

} // namespace detail

/// Direct measurement-sphere oracle for the three MIN measures:
///   HS    -> max of hs_norm(rho - measured)^2
///   Trace -> max of trace_norm(rho - measured)
///   Fid   -> 1 - min of fidelity(rho, measured)
/// over admissible axes. When the qubit-a marginal is nondegenerate the only
/// admissible axis is its eigenbasis; a maximally mixed marginal opens the
/// whole sphere, searched by grid plus local refinement.
inline double min_oracle(const DensityMatrix& rho, MinKind kind)
{
    const Mat4& m = rho.mat();
    const Mat2 id = pauli::id();
    double bloch[3];
    bloch[0] = trace(m * kron(pauli::x(), id)).real();
    bloch[1] = trace(m * kron(pauli::y(), id)).real();
    bloch[2] = trace(m * kron(pauli::z(), id)).real();
    const double r = std::sqrt(bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2]);

    if (r > 1e-9) {
        const double theta = std::acos(std::clamp(bloch[2] / r, -1.0, 1.0));
        const double phi = std::atan2(bloch[1], bloch[0]);
        const double pi = std::acos(-1.0);
        return detail::disturbance(kind, m, theta, phi < 0.0 ? phi + 2.0 * pi : phi);
    }
    return detail::sphere_maximum(kind, m);
}

/// The full set of correlation quantities for one parameter point.
struct CorrelationReport {
    double concurrence = 0.0;
    double n2 = 0.0; // Hilbert-Schmidt MIN
    double n1 = 0.0; // trace MIN
    double nf = 0.0; // fidelity MIN
    double fidelity_to_initial = 1.0;

    static CorrelationReport validated(const CorrelationReport& r)
    {
        auto min_range = [](double v) { return v >= -1e-12 && v <= 0.5 + 1e-12; };
        if (!min_range(r.n2) || !min_range(r.n1) || !min_range(r.nf))
            throw std::runtime_error("CorrelationReport: MIN value outside [0, 0.5]");
        if (!(r.concurrence >= 0.0 && r.concurrence <= 1.0 + 1e-12))
            throw std::runtime_error("CorrelationReport: concurrence outside [0, 1]");
        if (!(r.fidelity_to_initial >= -1e-12 && r.fidelity_to_initial <= 1.0 + 1e-12))
            throw std::runtime_error("CorrelationReport: fidelity outside [0, 1]");
        return r;
    }
};

} // namespace qcorr
