#pragma once

// Kraus operator-sum channels: generalized amplitude damping (emission
// probability p, decoherence parameter lambda) and the three flip channels,
// lifted to two qubits by acting on each qubit independently.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qcorr/matcore.hpp"
#include "qcorr/spinmodel.hpp"

namespace qcorr {

struct GadParams {
    double p = 0.0;      // emission probability
    double lambda = 0.0; // decoherence parameter, 1 - exp(-decay_rate * t)
};

/// Map a decay rate and time onto the decoherence parameter.
inline double lambda_from(double decay_rate, double t)
{
    return 1.0 - std::exp(-decay_rate * t);
}

inline void require_unit_interval(double v, const char* name)
{
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

enum class FlipKind { BitFlip, PhaseFlip, BitPhaseFlip };

struct HybridParams {
    double alpha = 1.0; // bit-flip weight
    double beta = 0.0;  // phase-flip weight
    double delta = 0.0; // bit-phase-flip weight
    double p = 0.0;     // flip probability, shared by all three operations
};

inline void validate(const HybridParams& h)
{
    if (!(h.alpha >= 0.0 && h.beta >= 0.0 && h.delta >= 0.0))
        throw std::invalid_argument("hybrid weights must be nonnegative");
    if (std::abs(h.alpha + h.beta + h.delta - 1.0) > 1e-12)
        throw std::invalid_argument("hybrid weights must sum to one");
    require_unit_interval(h.p, "p");
}

/// A set of same-dimension Kraus operators satisfying the trace-preservation
/// completeness relation sum A^dagger A = I (residual below 1e-12).
template <std::size_t N>
struct KrausSet {
    std::vector<CMat<N>> ops;

    static KrausSet validated(std::vector<CMat<N>> ops)
    {
        KrausSet s{std::move(ops)};
        if (s.completeness_residual() > 1e-12)
            throw std::invalid_argument("KrausSet: completeness relation violated");
        return s;
    }

    double completeness_residual() const
    {
        CMat<N> sum;
        for (const auto& a : ops) sum += adjoint(a) * a;
        return hs_norm(sum - CMat<N>::identity());
    }
};

/// The four generalized-amplitude-damping Kraus operators on one qubit.
inline KrausSet<2> gad_kraus(const GadParams& g)
{
    require_unit_interval(g.p, "p");
    require_unit_interval(g.lambda, "lambda");
    const double sp = std::sqrt(g.p);
    const double sq = std::sqrt(1.0 - g.p);
    const double sl = std::sqrt(g.lambda);
    const double sr = std::sqrt(1.0 - g.lambda);

    Mat2 a0, a1, a2, a3;
    a0(0, 0) = sp;
    a0(1, 1) = sp * sr;
    a1(0, 1) = sp * sl;
    a2(0, 0) = sq * sr;
    a2(1, 1) = sq;
    a3(1, 0) = sq * sl;
    return KrausSet<2>::validated({a0, a1, a2, a3});
}

/// {sqrt(1-p) I, sqrt(p) sigma} with sigma = x, z, y for bit, phase and
/// bit-phase flips respectively.
inline KrausSet<2> flip_kraus(FlipKind k, double p)
{
    require_unit_interval(p, "p");
    Mat2 sigma;
    switch (k) {
        case FlipKind::BitFlip: sigma = pauli::x(); break;
        case FlipKind::PhaseFlip: sigma = pauli::z(); break;
        case FlipKind::BitPhaseFlip: sigma = pauli::y(); break;
    }
    return KrausSet<2>::validated({Complex(std::sqrt(1.0 - p)) * pauli::id(),
                                   Complex(std::sqrt(p)) * sigma});
}

/// Lift a single-qubit channel to two qubits: all pairwise Kronecker
/// products A_i (x) A_j.
inline KrausSet<4> lift(const KrausSet<2>& s)
{
    if (s.completeness_residual() > 1e-10)
        throw std::invalid_argument("lift: input Kraus set is incomplete");
    std::vector<Mat4> ops;
    ops.reserve(s.ops.size() * s.ops.size());
    for (const auto& a : s.ops)
        for (const auto& b : s.ops) ops.push_back(kron(a, b));
    return KrausSet<4>::validated(std::move(ops));
}

namespace detail {

inline Mat4 apply_raw(const KrausSet<4>& s, const Mat4& rho)
{
    Mat4 out;
    for (const auto& a : s.ops) out += a * rho * adjoint(a);
    return out;
}

inline DensityMatrix finish_channel_output(const Mat4& out, const char* who)
{
    if (std::abs(trace(out) - Complex(1.0)) > 1e-10)
        throw std::runtime_error(std::string(who) + ": output trace drifted from one");
    const std::string why = DensityMatrix::check_state(out);
    if (!why.empty()) throw std::runtime_error(std::string(who) + ": inconsistent output state: " + why);
    return DensityMatrix::validated(out);
}

} // namespace detail

/// Operator-sum evolution, rho -> sum A rho A^dagger.
inline DensityMatrix apply(const KrausSet<4>& s, const DensityMatrix& rho)
{
    return detail::finish_channel_output(detail::apply_raw(s, rho.mat()), "apply");
}

/// Convex combination of the three lifted flip channels, all built with the
/// same flip probability.
inline DensityMatrix hybrid_apply(const HybridParams& h, const DensityMatrix& rho)
{
    validate(h);
    const Mat4 bf = detail::apply_raw(lift(flip_kraus(FlipKind::BitFlip, h.p)), rho.mat());
    const Mat4 pf = detail::apply_raw(lift(flip_kraus(FlipKind::PhaseFlip, h.p)), rho.mat());
    const Mat4 bpf = detail::apply_raw(lift(flip_kraus(FlipKind::BitPhaseFlip, h.p)), rho.mat());
    const Mat4 out = Complex(h.alpha) * bf + Complex(h.beta) * pf + Complex(h.delta) * bpf;
    return detail::finish_channel_output(out, "hybrid_apply");
}

/// diag(p^2, p(1-p), p(1-p), (1-p)^2): the two-qubit state left fixed by
/// generalized amplitude damping at every lambda, and the limit every input
/// reaches at lambda = 1.
inline DensityMatrix gad_steady_state(double p)
{
    require_unit_interval(p, "p");
    return DensityMatrix::validated(
        Mat4::diagonal({p * p, p * (1.0 - p), p * (1.0 - p), (1.0 - p) * (1.0 - p)}));
}

} // namespace qcorr
