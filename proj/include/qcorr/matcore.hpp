#pragma once

// Dense complex matrix arithmetic for the fixed sizes used by a two-qubit
// problem (2x2 single-qubit operators, 4x4 two-qubit operators), plus the
// Hermitian eigensolver, matrix functions and norms everything else is
// built on. Dimensions are template parameters, so mixing them is a
// compile-time error rather than a runtime one.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace qcorr {

using Complex = std::complex<double>;

template <std::size_t N>
struct CMat {
    static_assert(N == 2 || N == 4, "only 2x2 and 4x4 matrices are supported");

    // row-major entries
    std::array<Complex, N * N> e{};

    static constexpr std::size_t dim = N;

    Complex& operator()(std::size_t i, std::size_t j) { return e[i * N + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return e[i * N + j]; }

    static CMat zero() { return CMat{}; }

    static CMat identity()
    {
        CMat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMat diagonal(const std::array<double, N>& d)
    {
        CMat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    CMat& operator+=(const CMat& o)
    {
        for (std::size_t k = 0; k < N * N; ++k) e[k] += o.e[k];
        return *this;
    }
    CMat& operator-=(const CMat& o)
    {
        for (std::size_t k = 0; k < N * N; ++k) e[k] -= o.e[k];
        return *this;
    }
    CMat& operator*=(Complex z)
    {
        for (std::size_t k = 0; k < N * N; ++k) e[k] *= z;
        return *this;
    }

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(Complex z, CMat a) { return a *= z; }
    friend CMat operator*(CMat a, Complex z) { return a *= z; }

    friend CMat operator*(const CMat& a, const CMat& b)
    {
        CMat c;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) continue;
                for (std::size_t j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }
};

using Mat2 = CMat<2>;
using Mat4 = CMat<4>;

template <std::size_t N>
CMat<N> adjoint(const CMat<N>& m)
{
    CMat<N> a;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) a(i, j) = std::conj(m(j, i));
    return a;
}

template <std::size_t N>
CMat<N> conjugate(const CMat<N>& m)
{
    CMat<N> a;
    for (std::size_t k = 0; k < N * N; ++k) a.e[k] = std::conj(m.e[k]);
    return a;
}

template <std::size_t N>
Complex trace(const CMat<N>& m)
{
    Complex t{};
    for (std::size_t i = 0; i < N; ++i) t += m(i, i);
    return t;
}

/// Trace of a Hermitian matrix as a real number. The imaginary residue of
/// the diagonal sum must be below 1e-12 (relative to scale).
template <std::size_t N>
double trace_real(const CMat<N>& m)
{
    const Complex t = trace(m);
    if (std::abs(t.imag()) > 1e-12 * std::max(1.0, std::abs(t.real())))
        throw std::invalid_argument("trace_real: trace has a non-negligible imaginary part");
    return t.real();
}

template <std::size_t N>
double max_abs(const CMat<N>& m)
{
    double v = 0.0;
    for (const Complex& z : m.e) v = std::max(v, std::abs(z));
    return v;
}

/// Hilbert-Schmidt (Frobenius) norm, sqrt(tr(m^dagger m)).
template <std::size_t N>
double hs_norm(const CMat<N>& m)
{
    double s = 0.0;
    for (const Complex& z : m.e) s += std::norm(z);
    return std::sqrt(s);
}

template <std::size_t N>
bool is_hermitian(const CMat<N>& m, double tol)
{
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

/// Kronecker product of two single-qubit operators; the only product this
/// toolkit needs (two qubits, dimension 4).
inline Mat4 kron(const Mat2& a, const Mat2& b)
{
    Mat4 c;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    c(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return c;
}

namespace pauli {

inline Mat2 id()
{
    return Mat2::identity();
}
inline Mat2 x()
{
    Mat2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}
inline Mat2 y()
{
    Mat2 m;
    m(0, 1) = Complex(0.0, -1.0);
    m(1, 0) = Complex(0.0, 1.0);
    return m;
}
inline Mat2 z()
{
    Mat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

} // namespace pauli

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in ascending
/// order and the matching orthonormal eigenvector columns.
template <std::size_t N>
struct HermEigen {
    std::array<double, N> values{};
    CMat<N> vectors;
};

namespace detail {

// Cyclic complex Jacobi. Convergence threshold 1e-14 on the off-diagonal
// Frobenius mass (relative to the input scale), at most 100 sweeps; plenty
// for dimension <= 4.
template <std::size_t N, bool WithVectors>
HermEigen<N> jacobi_hermitian(CMat<N> a)
{
    HermEigen<N> out;
    CMat<N> v = CMat<N>::identity();

    double fro = hs_norm(a);
    const double thr = 1e-14 * std::max(1.0, fro);
    // entries below this cannot push the off-diagonal mass above thr
    const double skip = thr / std::sqrt(double(N * (N - 1)));

    auto off_mass = [&a]() {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    bool converged = false;
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_mass() <= thr) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) {
                const Complex apq = a(p, q);
                const double beta = std::abs(apq);
                if (beta <= skip) continue;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const Complex u = apq / beta; // unit phase of the pivot
                const double tau = (aqq - app) / (2.0 * beta);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex us = u * s;
                const Complex cus = std::conj(u) * s;
                const Complex cuc = std::conj(u) * c;

                // A <- G^dagger A G with G the unitary rotation in the (p,q) plane
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - cus * akq;
                    a(k, q) = s * akp + cuc * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - us * aqk;
                    a(q, k) = s * apk + std::conj(cuc) * aqk;
                }
                if constexpr (WithVectors) {
                    for (std::size_t k = 0; k < N; ++k) {
                        const Complex vkp = v(k, p);
                        const Complex vkq = v(k, q);
                        v(k, p) = c * vkp - cus * vkq;
                        v(k, q) = s * vkp + cuc * vkq;
                    }
                }
            }
    }
    if (!converged && off_mass() > thr)
        throw std::runtime_error("herm_eigen: Jacobi iteration did not converge");

    std::array<std::size_t, N> order{};
    for (std::size_t i = 0; i < N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    for (std::size_t i = 0; i < N; ++i) {
        out.values[i] = a(order[i], order[i]).real();
        if constexpr (WithVectors)
            for (std::size_t k = 0; k < N; ++k) out.vectors(k, i) = v(k, order[i]);
    }
    return out;
}

template <std::size_t N>
CMat<N> require_hermitian(const CMat<N>& m, const char* who)
{
    const double tol = 1e-10 * std::max(1.0, max_abs(m));
    if (!is_hermitian(m, tol))
        throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
    // hand the solver an exactly Hermitian matrix
    CMat<N> h;
    for (std::size_t i = 0; i < N; ++i) {
        h(i, i) = Complex(m(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < N; ++j) {
            const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

} // namespace detail

template <std::size_t N>
HermEigen<N> herm_eigen(const CMat<N>& m)
{
    return detail::jacobi_hermitian<N, true>(detail::require_hermitian(m, "herm_eigen"));
}

/// Eigenvalues only (ascending); cheaper when the vectors are not needed.
template <std::size_t N>
std::array<double, N> herm_eigenvalues(const CMat<N>& m)
{
    return detail::jacobi_hermitian<N, false>(detail::require_hermitian(m, "herm_eigen")).values;
}

/// Apply a real scalar function to a Hermitian matrix through its spectrum:
/// V diag(f(values)) V^dagger. The result is Hermitian.
template <std::size_t N, typename F>
CMat<N> mat_func(const CMat<N>& m, F&& f)
{
    const HermEigen<N> eg = herm_eigen(m);
    CMat<N> out;
    for (std::size_t r = 0; r < N; ++r) {
        const double w = f(eg.values[r]);
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                out(i, j) += w * eg.vectors(i, r) * std::conj(eg.vectors(j, r));
    }
    return out;
}

template <std::size_t N>
CMat<N> mat_exp(const CMat<N>& m)
{
    return mat_func(m, [](double x) { return std::exp(x); });
}

/// Square root of a positive semidefinite Hermitian matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything more negative is a domain error.
template <std::size_t N>
CMat<N> mat_sqrt(const CMat<N>& m)
{
    const HermEigen<N> eg = herm_eigen(m);
    if (eg.values[0] < -1e-10)
        throw std::domain_error("mat_sqrt: matrix has a negative eigenvalue");
    CMat<N> out;
    for (std::size_t r = 0; r < N; ++r) {
        const double w = std::sqrt(std::max(0.0, eg.values[r]));
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                out(i, j) += w * eg.vectors(i, r) * std::conj(eg.vectors(j, r));
    }
    return out;
}

/// Trace norm (sum of absolute eigenvalues) of a Hermitian matrix.
template <std::size_t N>
double trace_norm(const CMat<N>& m)
{
    const auto vals = herm_eigenvalues(m);
    double s = 0.0;
    for (double v : vals) s += std::abs(v);
    return s;
}

} // namespace qcorr
