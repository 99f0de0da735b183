#pragma once

// Deterministic random generators shared by the test files.

#include <cmath>
#include <random>

#include "qcorr/matcore.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/spinmodel.hpp"

namespace testutil {

using qcorr::Complex;

template <std::size_t N>
qcorr::CMat<N> random_hermitian(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    qcorr::CMat<N> g;
    for (auto& z : g.e) z = Complex(u(rng), u(rng));
    qcorr::CMat<N> h;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

inline qcorr::DensityMatrix random_density(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    qcorr::Mat4 g;
    for (auto& z : g.e) z = Complex(u(rng), u(rng));
    qcorr::Mat4 m = g * qcorr::adjoint(g);
    m *= Complex(1.0 / qcorr::trace(m).real());
    return qcorr::DensityMatrix::validated(m);
}

inline qcorr::ModelParams random_params(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u4(-4.0, 4.0);
    std::uniform_real_distribution<double> u1(-1.0, 1.0);
    return {u4(rng), u1(rng), u4(rng), u4(rng)};
}

/// Random X state; middle populations balanced only when requested.
inline qcorr::XElements random_x_state(std::mt19937_64& rng, bool balanced)
{
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> coh(-0.98, 0.98);
    for (;;) {
        double e[4];
        for (double& v : e) v = -std::log(1.0 - u01(rng));
        const double s = e[0] + e[1] + e[2] + e[3];
        qcorr::XElements x;
        x.r11 = e[0] / s;
        x.r44 = e[3] / s;
        if (balanced) {
            x.r22 = x.r33 = 0.5 * (e[1] + e[2]) / s;
            if (std::abs(x.r11 - x.r44) < 1e-3) continue;
        } else {
            x.r22 = e[1] / s;
            x.r33 = e[2] / s;
        }
        x.r14 = coh(rng) * std::sqrt(x.r11 * x.r44);
        x.r23 = coh(rng) * std::sqrt(x.r22 * x.r33);
        return qcorr::XElements::validated(x);
    }
}

inline qcorr::DensityMatrix bell_phi_plus()
{
    qcorr::Mat4 m;
    m(0, 0) = m(3, 3) = 0.5;
    m(0, 3) = m(3, 0) = 0.5;
    return qcorr::DensityMatrix::validated(m);
}

} // namespace testutil
