#include <doctest.h>

#include <cmath>
#include <random>

#include "qcorr/channels.hpp"
#include "qcorr/spinmodel.hpp"
#include "test_util.hpp"

using namespace qcorr;

namespace {

const ModelParams kFig1{2.0, 0.1, 2.0, 0.0};

Mat2 apply_single(const KrausSet<2>& s, const Mat2& rho)
{
    Mat2 out;
    for (const auto& a : s.ops) out += a * rho * adjoint(a);
    return out;
}

} // namespace

TEST_CASE("damping Kraus structure")
{
    // p = 1 leaves only the plain amplitude-damping pair
    const auto ad = gad_kraus({1.0, 0.4});
    CHECK(max_abs(ad.ops[2]) == 0.0);
    CHECK(max_abs(ad.ops[3]) == 0.0);

    // lambda = 0 is the identity channel
    const auto idc = gad_kraus({0.3, 0.0});
    CHECK(max_abs(idc.ops[0] - Complex(std::sqrt(0.3)) * Mat2::identity()) < 1e-15);
    CHECK(max_abs(idc.ops[1]) == 0.0);
    CHECK(max_abs(idc.ops[3]) == 0.0);

    CHECK(gad_kraus({0.7, 0.3}).completeness_residual() < 1e-15);
    CHECK_THROWS_AS(gad_kraus({1.3, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(gad_kraus({0.5, -0.1}), std::invalid_argument);
}

TEST_CASE("lambda_from maps decay and time onto [0, 1]")
{
    CHECK(lambda_from(1.0, 0.0) == 0.0);
    CHECK(lambda_from(2.0, 1e9) == doctest::Approx(1.0));
    CHECK(lambda_from(0.5, 2.0) == doctest::Approx(1.0 - std::exp(-1.0)));
}

TEST_CASE("flip Kraus structure")
{
    const auto bf0 = flip_kraus(FlipKind::BitFlip, 0.0);
    CHECK(max_abs(bf0.ops[0] - Mat2::identity()) == 0.0);
    CHECK(max_abs(bf0.ops[1]) == 0.0);

    const auto pf1 = flip_kraus(FlipKind::PhaseFlip, 1.0);
    CHECK(max_abs(pf1.ops[0]) == 0.0);
    CHECK(max_abs(pf1.ops[1] - pauli::z()) == 0.0);

    CHECK(flip_kraus(FlipKind::BitPhaseFlip, 0.5).completeness_residual() < 1e-15);
    CHECK_THROWS_AS(flip_kraus(FlipKind::BitFlip, 2.0), std::invalid_argument);
}

TEST_CASE("lift")
{
    const auto idc = lift(flip_kraus(FlipKind::BitFlip, 0.0));
    std::mt19937_64 rng(31);
    const DensityMatrix rho = testutil::random_density(rng);
    CHECK(max_abs(apply(idc, rho).mat() - rho.mat()) < 1e-15);

    CHECK(lift(gad_kraus({0.6, 0.2})).ops.size() == 16);
    CHECK(lift(flip_kraus(FlipKind::BitFlip, 0.3)).completeness_residual() < 1e-14);

    KrausSet<2> incomplete;
    incomplete.ops = {Complex(0.5) * pauli::id()};
    CHECK_THROWS_AS(lift(incomplete), std::invalid_argument);
}

TEST_CASE("operator-sum application")
{
    std::mt19937_64 rng(32);

    // lambda = 1 sends everything to the steady state
    for (int it = 0; it < 20; ++it) {
        const DensityMatrix rho = testutil::random_density(rng);
        const double p = it / 19.0;
        const Mat4 out = apply(lift(gad_kraus({p, 1.0})), rho).mat();
        CHECK(max_abs(out - gad_steady_state(p).mat()) < 1e-13);
    }

    // balanced emission and absorption at lambda = 1: maximally mixed
    const DensityMatrix thermal = assemble_x(thermal_elements(kFig1));
    const Mat4 mixed = apply(lift(gad_kraus({0.5, 1.0})), thermal).mat();
    CHECK(max_abs(mixed - Complex(0.25) * Mat4::identity()) < 1e-13);
}

TEST_CASE("channel output invariants")
{
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int it = 0; it < 100; ++it) {
        const DensityMatrix rho = assemble_x(thermal_elements(testutil::random_params(rng)));
        const GadParams g{u01(rng), u01(rng)};
        const Mat4 out = apply(lift(gad_kraus(g)), rho).mat();

        CHECK(std::abs(trace(out) - Complex(1.0)) < 1e-12);
        CHECK(is_hermitian(out, 1e-12));
        CHECK(herm_eigenvalues(out)[0] >= -1e-10);
        // X form is preserved
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (i != j && i + j != 3) CHECK(std::abs(out(i, j)) < 1e-13);
    }
}

TEST_CASE("single-qubit steady state")
{
    Mat2 sigma;
    for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        sigma(0, 0) = p;
        sigma(1, 1) = 1.0 - p;
        for (double lam : {0.1, 0.5, 1.0}) {
            const Mat2 out = apply_single(gad_kraus({p, lam}), sigma);
            CHECK(max_abs(out - sigma) < 1e-13);
        }
    }
}

TEST_CASE("two-qubit steady state")
{
    CHECK(max_abs(gad_steady_state(0.5).mat() - Complex(0.25) * Mat4::identity()) < 1e-15);
    CHECK(max_abs(gad_steady_state(1.0).mat() - Mat4::diagonal({1, 0, 0, 0})) == 0.0);

    const DensityMatrix rs = gad_steady_state(0.3);
    const Mat4 out = apply(lift(gad_kraus({0.3, 0.77})), rs).mat();
    CHECK(max_abs(out - rs.mat()) < 1e-13);

    // fixed point across the whole parameter grid
    double worst = 0.0;
    for (int ip = 0; ip <= 10; ++ip)
        for (int il = 0; il <= 10; ++il) {
            const double p = ip / 10.0;
            const DensityMatrix s = gad_steady_state(p);
            worst = std::max(worst,
                             hs_norm(apply(lift(gad_kraus({p, il / 10.0})), s).mat() - s.mat()));
        }
    CHECK(worst < 1e-12);
}

TEST_CASE("hybrid channel")
{
    std::mt19937_64 rng(34);
    const DensityMatrix rho = testutil::random_density(rng);

    // inactive flips leave the state alone
    CHECK(max_abs(hybrid_apply({1.0, 0.0, 0.0, 0.0}, rho).mat() - rho.mat()) < 1e-15);

    // unital: the maximally mixed state is a fixed point
    const DensityMatrix mixed = DensityMatrix::validated(Complex(0.25) * Mat4::identity());
    const Mat4 out = hybrid_apply({1.0 / 3, 1.0 / 3, 1.0 / 3, 0.7}, mixed).mat();
    CHECK(max_abs(out - mixed.mat()) < 1e-15);

    CHECK_THROWS_AS(hybrid_apply({0.5, 0.2, 0.2, 0.5}, rho), std::invalid_argument);
    CHECK_THROWS_AS(hybrid_apply({-0.1, 0.6, 0.5, 0.5}, rho), std::invalid_argument);

    // X form preserved with hybrid weights as well
    const DensityMatrix thermal = assemble_x(thermal_elements(kFig1));
    const Mat4 h = hybrid_apply({0.3, 0.2, 0.5, 0.4}, thermal).mat();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j && i + j != 3) CHECK(std::abs(h(i, j)) < 1e-13);
}

TEST_CASE("completeness over the parameter grid")
{
    double worst = 0.0;
    for (int ip = 0; ip <= 10; ++ip) {
        const double p = ip / 10.0;
        for (int il = 0; il <= 10; ++il) {
            const auto g = gad_kraus({p, il / 10.0});
            worst = std::max({worst, g.completeness_residual(), lift(g).completeness_residual()});
        }
        for (FlipKind k : {FlipKind::BitFlip, FlipKind::PhaseFlip, FlipKind::BitPhaseFlip}) {
            const auto f = flip_kraus(k, p);
            worst = std::max({worst, f.completeness_residual(), lift(f).completeness_residual()});
        }
    }
    CHECK(worst < 1e-12);
}
