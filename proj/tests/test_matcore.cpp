#include <doctest.h>

#include <cmath>
#include <random>

#include "qcorr/matcore.hpp"
#include "qcorr/spinmodel.hpp"
#include "test_util.hpp"

using namespace qcorr;

namespace {

const double kE = std::exp(1.0);

Mat4 diag4(double a, double b, double c, double d)
{
    return Mat4::diagonal({a, b, c, d});
}

} // namespace

TEST_CASE("kron basics")
{
    CHECK(max_abs(kron(pauli::id(), pauli::id()) - Mat4::identity()) == 0.0);
    CHECK(max_abs(kron(pauli::z(), pauli::z()) - diag4(1, -1, -1, 1)) == 0.0);

    // conjugating a diagonal by XX reverses it
    const Mat4 xx = kron(pauli::x(), pauli::x());
    const Mat4 d = diag4(1, 2, 3, 4);
    CHECK(max_abs(xx * d * xx - diag4(4, 3, 2, 1)) == 0.0);
}

TEST_CASE("herm_eigen on known spectra")
{
    const auto ez = herm_eigen(pauli::z());
    CHECK(ez.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ez.values[1] == doctest::Approx(1.0).epsilon(1e-14));

    const auto e4 = herm_eigen(Mat4::identity());
    for (double v : e4.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    // eigenvalue sum equals the trace of the coupling Hamiltonian
    const Mat4 h = hamiltonian({2.0, 0.1, 2.0, 0.0});
    const auto eh = herm_eigen(h);
    double sum = 0.0;
    for (double v : eh.values) sum += v;
    CHECK(std::abs(sum - trace_real(h)) < 1e-12);
    CHECK(std::abs(sum) < 1e-12);
}

TEST_CASE("herm_eigen rejects non-Hermitian input")
{
    Mat2 m;
    m(0, 1) = 1.0; // missing the conjugate partner
    CHECK_THROWS_AS(herm_eigen(m), std::invalid_argument);
    CHECK_THROWS_AS(trace_norm(m), std::invalid_argument);
}

TEST_CASE("herm_eigen reconstruction and orthonormality")
{
    std::mt19937_64 rng(11);
    for (int it = 0; it < 100; ++it) {
        const Mat4 m = testutil::random_hermitian<4>(rng);
        const auto eg = herm_eigen(m);

        Mat4 rec;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    rec(i, j) += eg.values[r] * eg.vectors(i, r) * std::conj(eg.vectors(j, r));
        CHECK(max_abs(rec - m) < 1e-11);
        CHECK(max_abs(adjoint(eg.vectors) * eg.vectors - Mat4::identity()) < 1e-12);

        CHECK(eg.values[0] <= eg.values[1]);
        CHECK(eg.values[1] <= eg.values[2]);
        CHECK(eg.values[2] <= eg.values[3]);

        double sum = 0.0;
        for (double v : eg.values) sum += v;
        CHECK(std::abs(sum - trace_real(m)) < 1e-11);
    }
}

TEST_CASE("mat_func and friends")
{
    CHECK(max_abs(mat_exp(Mat4::zero()) - Mat4::identity()) < 1e-14);
    CHECK(max_abs(mat_sqrt(diag4(4, 1, 0, 9)) - diag4(2, 1, 0, 3)) < 1e-14);

    const Mat2 em = mat_exp(Complex(-1.0) * pauli::z());
    CHECK(std::abs(em(0, 0) - Complex(1.0 / kE)) < 1e-14);
    CHECK(std::abs(em(1, 1) - Complex(kE)) < 1e-14);
    CHECK(std::abs(em(0, 1)) < 1e-14);

    CHECK_THROWS_AS(mat_sqrt(diag4(-1, 1, 1, 1)), std::domain_error);

    // exp of m commutes with m
    std::mt19937_64 rng(12);
    for (int it = 0; it < 50; ++it) {
        const Mat4 m = testutil::random_hermitian<4>(rng);
        const Mat4 em4 = mat_exp(m);
        CHECK(max_abs(em4 * m - m * em4) < 1e-11);
    }
}

TEST_CASE("norms")
{
    CHECK(hs_norm(Mat4::zero()) == 0.0);
    CHECK(hs_norm(Mat4::identity()) == doctest::Approx(2.0).epsilon(1e-15));

    Mat4 corner;
    corner(0, 3) = 0.5;
    corner(3, 0) = 0.5;
    CHECK(hs_norm(corner) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(trace_norm(corner) == doctest::Approx(1.0).epsilon(1e-13));

    CHECK(trace_norm(pauli::z()) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(trace_norm(Mat4::zero()) == 0.0);

    std::mt19937_64 rng(13);
    for (int it = 0; it < 50; ++it) {
        const Mat4 m = testutil::random_hermitian<4>(rng);
        double sq = 0.0;
        for (const Complex& z : m.e) sq += std::norm(z);
        CHECK(std::abs(hs_norm(m) * hs_norm(m) - sq) < 1e-12);
        CHECK(trace_norm(m) >= hs_norm(m) - 1e-12);
    }
}

TEST_CASE("plumbing operations")
{
    CHECK(trace_real(Mat4::identity()) == doctest::Approx(4.0));
    CHECK(max_abs(pauli::x() * pauli::x() - Mat2::identity()) == 0.0);

    std::mt19937_64 rng(14);
    Mat4 m;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& z : m.e) z = Complex(u(rng), u(rng));
    CHECK(max_abs(adjoint(adjoint(m)) - m) == 0.0);
}
