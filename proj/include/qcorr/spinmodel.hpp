#pragma once

// Two-spin anisotropic Heisenberg model in a z magnetic field, energy scaled
// so that k_B T = 1. Provides the Hamiltonian, the closed-form Boltzmann
// weights of its thermal state, and an independent eigendecomposition route
// to the same state used as a cross-check everywhere.

#include <cmath>
#include <stdexcept>
#include <string>

#include "qcorr/matcore.hpp"

namespace qcorr {

struct ModelParams {
    double j = 0.0;     // XY coupling
    double gamma = 0.0; // XY anisotropy
    double jz = 0.0;    // z coupling
    double b = 0.0;     // magnetic field strength
};

inline void require_finite(const ModelParams& p)
{
    if (!(std::isfinite(p.j) && std::isfinite(p.gamma) && std::isfinite(p.jz) && std::isfinite(p.b)))
        throw std::invalid_argument("model parameters must be finite");
}

/// H = (J/2)[(1+gamma) XX + (1-gamma) YY] + (1/2)[Jz ZZ + B(Z1 + Z2)],
/// real symmetric in the computational basis.
inline Mat4 hamiltonian(const ModelParams& p)
{
    require_finite(p);
    const Mat2 sx = pauli::x(), sy = pauli::y(), sz = pauli::z(), id = pauli::id();
    Mat4 h = Complex(0.5 * p.j * (1.0 + p.gamma)) * kron(sx, sx);
    h += Complex(0.5 * p.j * (1.0 - p.gamma)) * kron(sy, sy);
    h += Complex(0.5 * p.jz) * kron(sz, sz);
    h += Complex(0.5 * p.b) * (kron(sz, id) + kron(id, sz));
    return h;
}

/// Unnormalized Boltzmann weights of the thermal state along with the
/// partition function. The X pattern is
///   diag ~ (mu_minus, nu, nu, mu_plus), corners ~ (kappa, epsilon),
/// everything divided by z_part.
struct ThermalElements {
    double mu_plus = 0.0;
    double mu_minus = 0.0;
    double kappa = 0.0;
    double nu = 0.0;
    double epsilon = 0.0;
    double z_part = 0.0;
    double eta = 0.0;
};

/// Closed-form thermal weights. Exponents are guarded at |.| <= 700, the
/// double-precision overflow threshold for exp.
inline ThermalElements thermal_elements(const ModelParams& p)
{
    require_finite(p);
    ThermalElements t;
    const double gj = p.gamma * p.j;
    t.eta = std::hypot(p.b, gj);

    const double half_jz = 0.5 * std::abs(p.jz);
    if (half_jz + t.eta > 700.0 || half_jz + std::abs(p.j) > 700.0)
        throw std::range_error("thermal_elements: Boltzmann exponent exceeds the ~700 overflow guard");

    const double em = std::exp(-0.5 * p.jz);
    const double ep = std::exp(0.5 * p.jz);
    const double ch = std::cosh(t.eta);

    // sinh(eta)/eta is evaluated by series below eta = 1e-8 to avoid 0/0
    double bs, gs;
    if (t.eta < 1e-8) {
        const double sinhc = 1.0 + t.eta * t.eta / 6.0;
        bs = p.b * sinhc;
        gs = gj * sinhc;
    } else {
        const double sh = std::sinh(t.eta);
        bs = (p.b / t.eta) * sh;
        gs = (gj / t.eta) * sh;
    }

    t.mu_plus = em * (ch + bs);
    t.mu_minus = em * (ch - bs);
    t.kappa = -em * gs;
    t.nu = ep * std::cosh(p.j);
    t.epsilon = -ep * std::sinh(p.j);
    t.z_part = 2.0 * (em * ch + ep * std::cosh(p.j));
    return t;
}

/// A valid two-qubit state: Hermitian within 1e-12, unit trace within 1e-12,
/// smallest eigenvalue >= -1e-10.
class DensityMatrix {
  public:
    static DensityMatrix validated(const Mat4& m)
    {
        const std::string why = check_state(m);
        if (!why.empty()) throw std::invalid_argument("DensityMatrix: " + why);
        return DensityMatrix(m);
    }

    /// Empty string when m satisfies the state invariants, else the reason.
    static std::string check_state(const Mat4& m)
    {
        if (!is_hermitian(m, 1e-12)) return "matrix is not Hermitian";
        if (std::abs(trace(m) - Complex(1.0)) > 1e-12) return "trace differs from one";
        const auto vals = herm_eigenvalues(m);
        if (vals[0] < -1e-10) return "matrix has a negative eigenvalue";
        return {};
    }

    const Mat4& mat() const { return m_; }

  private:
    explicit DensityMatrix(const Mat4& m) : m_(m) {}
    Mat4 m_;
};

/// Assemble the X-form thermal state from its closed-form weights.
inline DensityMatrix assemble_x(const ThermalElements& t)
{
    if (!(t.z_part > 0.0) || !(t.mu_plus > 0.0) || !(t.mu_minus > 0.0) || !(t.nu > 0.0))
        throw std::invalid_argument("assemble_x: weights must be positive");
    const double z = t.z_part;
    Mat4 m;
    m(0, 0) = t.mu_minus / z;
    m(1, 1) = t.nu / z;
    m(2, 2) = t.nu / z;
    m(3, 3) = t.mu_plus / z;
    m(0, 3) = m(3, 0) = t.kappa / z;
    m(1, 2) = m(2, 1) = t.epsilon / z;
    const std::string why = DensityMatrix::check_state(m);
    if (!why.empty()) throw std::runtime_error("assemble_x: inconsistent thermal state: " + why);
    return DensityMatrix::validated(m);
}

/// exp(-H)/tr(exp(-H)) through the eigensolver; the independent route that
/// cross-checks thermal_elements + assemble_x. The spectrum is shifted by
/// its minimum before exponentiation so the weights stay in [0,1].
inline DensityMatrix thermal_state_numeric(const ModelParams& p)
{
    const Mat4 h = hamiltonian(p);
    const double shift = herm_eigenvalues(h)[0];
    Mat4 w = mat_func(h, [shift](double x) { return std::exp(-(x - shift)); });
    const double z = trace_real(w);
    w *= Complex(1.0 / z);
    return DensityMatrix::validated(w);
}

} // namespace qcorr
