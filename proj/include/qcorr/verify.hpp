#pragma once

// The verification battery: every check the acceptance suite runs, exposed
// as a library so the command-line `verify` subcommand and the test binary
// share one implementation. All randomness is seeded, so the battery is
// deterministic.

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/experiments.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/presets.hpp"
#include "qcorr/report_io.hpp"
#include "qcorr/spinmodel.hpp"

namespace qcorr::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

inline ModelParams random_params(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u4(-4.0, 4.0);
    std::uniform_real_distribution<double> u1(-1.0, 1.0);
    ModelParams p;
    p.j = u4(rng);
    p.gamma = u1(rng);
    p.jz = u4(rng);
    p.b = u4(rng);
    return p;
}

// Random X state with balanced middle populations, a nondegenerate qubit-a
// marginal and coherences bounded away from zero (so ratio studies are well
// posed) and from the positivity boundary.
inline XElements random_balanced_x(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> mag(0.1, 0.95);
    for (;;) {
        double e[4];
        for (double& v : e) v = -std::log(1.0 - u01(rng));
        const double s = e[0] + e[1] + e[2] + e[3];
        XElements x;
        x.r11 = e[0] / s;
        x.r22 = x.r33 = 0.5 * (e[1] + e[2]) / s;
        x.r44 = e[3] / s;
        if (std::abs(x.r11 - x.r44) < 1e-3) continue;
        const double sign14 = u01(rng) < 0.5 ? -1.0 : 1.0;
        const double sign23 = u01(rng) < 0.5 ? -1.0 : 1.0;
        x.r14 = sign14 * mag(rng) * std::sqrt(x.r11 * x.r44);
        x.r23 = sign23 * mag(rng) * x.r22;
        if (std::abs(x.r14) + std::abs(x.r23) < 1e-6) continue;
        return XElements::validated(x);
    }
}

inline HybridParams random_hybrid(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double e[3];
    for (double& v : e) v = -std::log(1.0 - u01(rng));
    const double s = e[0] + e[1] + e[2];
    HybridParams h;
    h.alpha = e[0] / s;
    h.beta = e[1] / s;
    h.delta = e[2] / s;
    h.p = u01(rng);
    return h;
}

inline double max_elem_diff(const Mat4& a, const Mat4& b)
{
    return max_abs(a - b);
}

inline double max_x_diff(const XElements& a, const XElements& b)
{
    return std::max({std::abs(a.r11 - b.r11), std::abs(a.r22 - b.r22), std::abs(a.r33 - b.r33),
                     std::abs(a.r44 - b.r44), std::abs(a.r14 - b.r14), std::abs(a.r23 - b.r23)});
}

inline CorrelationReport closed_report(const ThermalElements& t, const XElements& evolved)
{
    CorrelationReport r;
    r.concurrence = concurrence_x(evolved);
    r.n2 = min_hs_x(evolved);
    r.n1 = min_trace_x(evolved);
    r.nf = min_fid_x(evolved);
    r.fidelity_to_initial = fidelity(assemble_x(t), DensityMatrix::validated(evolved.to_matrix()));
    return r;
}

} // namespace detail

/// Closed-form thermal state against exp(-H)/Z from the eigensolver.
inline CheckResult check_thermal_oracle()
{
    std::mt19937_64 rng(0x7e31a11u);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ModelParams p = detail::random_params(rng);
        const Mat4 closed = assemble_x(thermal_elements(p)).mat();
        const Mat4 numeric = thermal_state_numeric(p).mat();
        worst = std::max(worst, detail::max_elem_diff(closed, numeric));
    }
    return {"thermal closed form vs eigensolver route (200 random parameter sets)", worst < 1e-10,
            "max elementwise error " + detail::fmt(worst) + " (limit 1e-10)"};
}

/// Completeness of every Kraus set, single qubit and lifted.
inline CheckResult check_completeness()
{
    double worst = 0.0;
    for (int ip = 0; ip <= 10; ++ip)
        for (int il = 0; il <= 10; ++il) {
            const GadParams g{ip / 10.0, il / 10.0};
            const auto single = gad_kraus(g);
            worst = std::max(worst, single.completeness_residual());
            worst = std::max(worst, lift(single).completeness_residual());
            if (il == 0)
                for (FlipKind k : {FlipKind::BitFlip, FlipKind::PhaseFlip, FlipKind::BitPhaseFlip}) {
                    const auto flip = flip_kraus(k, g.p);
                    worst = std::max(worst, flip.completeness_residual());
                    worst = std::max(worst, lift(flip).completeness_residual());
                }
        }
    return {"Kraus completeness, damping and flips, single and lifted (11x11 grid)", worst < 1e-12,
            "max residual " + detail::fmt(worst) + " (limit 1e-12)"};
}

inline Mat4 channels_applied(const GadParams& g, const DensityMatrix& rho)
{
    return apply(lift(gad_kraus(g)), rho).mat();
}

/// The damping channel's fixed point and asymptotic limit.
inline CheckResult check_steady_state()
{
    double worst_fixed = 0.0;
    for (int ip = 0; ip <= 10; ++ip)
        for (int il = 0; il <= 10; ++il) {
            const GadParams g{ip / 10.0, il / 10.0};
            const DensityMatrix rs = gad_steady_state(g.p);
            const Mat4 out = channels_applied(g, rs);
            worst_fixed = std::max(worst_fixed, hs_norm(out - rs.mat()));
        }

    std::mt19937_64 rng(0x57ead7u);
    double worst_limit = 0.0;
    for (int i = 0; i < 20; ++i) {
        const ModelParams mp = detail::random_params(rng);
        const DensityMatrix rho = assemble_x(thermal_elements(mp));
        for (int ip = 0; ip <= 4; ++ip) {
            const double p = ip / 4.0;
            const Mat4 out = channels_applied({p, 1.0}, rho);
            worst_limit = std::max(worst_limit, detail::max_elem_diff(out, gad_steady_state(p).mat()));
        }
    }

    const ModelParams fig1{2.0, 0.1, 2.0, 0.0};
    const Mat4 mixed = channels_applied({0.5, 1.0}, assemble_x(thermal_elements(fig1)));
    const double mixed_err =
        detail::max_elem_diff(mixed, Complex(0.25) * Mat4::identity());

    const bool pass = worst_fixed < 1e-12 && worst_limit < 1e-13 && mixed_err < 1e-13;
    return {"damping steady state: fixed point, lambda = 1 limit, maximally mixed at p = 0.5", pass,
            "fixed-point residual " + detail::fmt(worst_fixed) + " (limit 1e-12), limit error " +
                detail::fmt(std::max(worst_limit, mixed_err)) + " (limit 1e-13)"};
}

/// Closed-form evolution against the operator-sum route, both channels.
inline CheckResult check_closed_vs_operator_sum()
{
    std::mt19937_64 rng(0xc105edu);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const ModelParams mp = detail::random_params(rng);
        const ThermalElements t = thermal_elements(mp);
        const DensityMatrix rho = assemble_x(t);
        const GadParams g{u01(rng), u01(rng)};
        const XElements closed = gad_evolve_closed(t, g);
        const XElements ops = extract_x(apply(lift(gad_kraus(g)), rho));
        worst = std::max(worst, detail::max_x_diff(closed, ops));
    }
    for (int i = 0; i < 500; ++i) {
        const ModelParams mp = detail::random_params(rng);
        const ThermalElements t = thermal_elements(mp);
        const DensityMatrix rho = assemble_x(t);
        const HybridParams h = detail::random_hybrid(rng);
        const XElements closed = hybrid_evolve_closed(t, h);
        const XElements ops = extract_x(hybrid_apply(h, rho));
        worst = std::max(worst, detail::max_x_diff(closed, ops));
    }
    return {"closed-form evolution vs operator sum (500 damping + 500 hybrid cases)", worst < 1e-12,
            "max elementwise difference " + detail::fmt(worst) + " (limit 1e-12)"};
}

/// Closed-form measures against the measurement-sphere oracle.
inline CheckResult check_measure_oracles()
{
    std::mt19937_64 rng(0x0a5c1eu);
    double worst_hs = 0.0, worst_fid = 0.0;
    double ratio_min = 1e300, ratio_max = -1e300, ratio_sum = 0.0;
    for (int i = 0; i < 200; ++i) {
        const XElements x = detail::random_balanced_x(rng);
        const DensityMatrix rho = DensityMatrix::validated(x.to_matrix());
        worst_hs = std::max(worst_hs, std::abs(min_hs_x(x) - min_oracle(rho, MinKind::HS)));
        worst_fid = std::max(worst_fid, std::abs(min_fid_x(x) - min_oracle(rho, MinKind::Fid)));
        const double ratio = min_oracle(rho, MinKind::Trace) / min_trace_x(x);
        ratio_min = std::min(ratio_min, ratio);
        ratio_max = std::max(ratio_max, ratio);
        ratio_sum += ratio;
    }
    const bool pass = worst_hs < 1e-4 && worst_fid < 1e-4 && (ratio_max - ratio_min) < 1e-3;
    return {"closed measures vs measurement oracle (200 random balanced X states)", pass,
            "HS gap " + detail::fmt(worst_hs) + ", fidelity gap " + detail::fmt(worst_fid) +
                " (limits 1e-4); trace ratio " + detail::fmt(ratio_sum / 200.0) + " spread " +
                detail::fmt(ratio_max - ratio_min) + " (limit 1e-3)"};
}

/// Reproduce the qualitative figure trends at the reference parameters.
inline CheckResult check_figure_trends()
{
    std::ostringstream why;
    bool pass = true;
    auto fail = [&](const std::string& msg) {
        pass = false;
        if (why.tellp() > 0) why << "; ";
        why << msg;
    };

    const ModelParams base{2.0, 0.1, 2.0, 0.0};
    const ThermalElements t0 = thermal_elements(base);

    // lambda sweep: everything dies at lambda = 1, nonlocality survives before
    {
        for (double lam : uniform_grid(0.0, 1.0, 201)) {
            const XElements x = gad_evolve_closed(t0, {0.5, lam});
            const double c = concurrence_x(x), n2 = min_hs_x(x), n1 = min_trace_x(x),
                         nf = min_fid_x(x);
            if (lam >= 1.0) {
                if (std::max({c, n2, n1, nf}) > 1e-10) fail("measures persist at lambda = 1");
            } else if (lam <= 0.99) {
                if (std::min({n2, n1, nf}) <= 1e-6) fail("a MIN vanished before lambda = 0.99");
            }
        }
        const auto lc_half = sudden_death_lambda(base, 0.5);
        const auto lc_one = sudden_death_lambda(base, 1.0);
        if (!lc_half || !(*lc_half > 0.0 && *lc_half < 1.0))
            fail("no finite entanglement death point at p = 0.5");
        else if (!(*lc_half < lc_one.value_or(1.0)))
            fail("death point at p = 0.5 is not the earlier one");
    }

    // p sweeps at fixed lambda: only the fidelity MIN reacts to p
    for (double lam : {0.5, 0.75}) {
        const auto grid = uniform_grid(0.0, 1.0, 101);
        std::vector<double> n2s, n1s, nfs, cs;
        for (double p : grid) {
            const XElements x = gad_evolve_closed(t0, {p, lam});
            n2s.push_back(min_hs_x(x));
            n1s.push_back(min_trace_x(x));
            nfs.push_back(min_fid_x(x));
            cs.push_back(concurrence_x(x));
        }
        auto spread = [](const std::vector<double>& v) {
            return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
        };
        if (spread(n2s) > 1e-12 || spread(n1s) > 1e-12)
            fail("HS or trace MIN depends on p under damping");
        if (spread(nfs) <= 1e-6) fail("fidelity MIN does not react to p");
        const std::size_t imax = std::max_element(nfs.begin(), nfs.end()) - nfs.begin();
        if (std::abs(grid[imax] - 0.5) > 0.01 + 1e-12)
            fail("fidelity MIN maximum is away from p = 0.5");
        if (lam == 0.75) {
            const bool has_dead = std::any_of(cs.begin(), cs.end(), [](double c) { return c == 0.0; });
            const bool ends_alive = cs.front() > 0.0 && cs.back() > 0.0;
            const bool nf_alive = std::all_of(nfs.begin(), nfs.end(), [](double v) { return v > 1e-6; });
            if (!(has_dead && ends_alive && nf_alive))
                fail("no unentangled window with surviving fidelity MIN at lambda = 0.75");
        }
    }

    // field sweep: all four quantities fall with B
    for (double lam : {0.1, 0.9}) {
        std::vector<double> prev(4, 1e300);
        for (double b : uniform_grid(0.0, 6.0, 61)) {
            ModelParams mp = base;
            mp.b = b;
            const XElements x = gad_evolve_closed(thermal_elements(mp), {0.5, lam});
            const double cur[4] = {concurrence_x(x), min_hs_x(x), min_trace_x(x), min_fid_x(x)};
            for (int k = 0; k < 4; ++k) {
                if (cur[k] > prev[k] + 1e-10) fail("a measure increased with B");
                prev[k] = cur[k];
            }
        }
    }

    // channel fidelity at strong field
    {
        ModelParams mp = base;
        mp.b = 8.0;
        const auto grid = uniform_grid(0.0, 1.0, 201);
        const auto curve0 = channel_fidelity_curve(mp, 0.0, grid);
        for (const auto& [lam, f] : curve0)
            if (f < 0.99) fail("fidelity dipped below 0.99 at p = 0");
        if (channel_fidelity_curve(mp, 1.0, {0.0, 1.0}).back().second > 0.01)
            fail("fidelity did not collapse at p = 1");
        for (double p : {0.3, 0.5}) {
            const double f1 = channel_fidelity_curve(mp, p, {0.0, 1.0}).back().second;
            if (!(f1 > 0.01 && f1 < 0.99)) fail("intermediate-p fidelity not strictly between extremes");
        }
    }

    // hybrid channel: symmetry in p at zero field, asymmetric fidelity MIN at B = 4
    {
        const HybridParams w{0.3, 0.2, 0.5, 0.0};
        const auto grid = uniform_grid(0.0, 1.0, 101);

        std::vector<CorrelationReport> at_b0, at_b4;
        for (double p : grid) {
            HybridParams h = w;
            h.p = p;
            at_b0.push_back(detail::closed_report(t0, hybrid_evolve_closed(t0, h)));
            ModelParams mp = base;
            mp.b = 4.0;
            const ThermalElements t4 = thermal_elements(mp);
            at_b4.push_back(detail::closed_report(t4, hybrid_evolve_closed(t4, h)));
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& f = at_b0[i];
            const auto& r = at_b0[grid.size() - 1 - i];
            if (std::abs(f.n2 - r.n2) > 1e-10 || std::abs(f.n1 - r.n1) > 1e-10 ||
                std::abs(f.concurrence - r.concurrence) > 1e-10)
                fail("hybrid measures not symmetric about p = 0.5 at B = 0");
        }
        bool dead_window = false;
        double nf_asym = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& r = at_b4[i];
            if (r.concurrence == 0.0 && std::min({r.n2, r.n1, r.nf}) > 1e-6) dead_window = true;
            nf_asym = std::max(nf_asym, std::abs(r.nf - at_b4[grid.size() - 1 - i].nf));
        }
        if (!dead_window) fail("no unentangled window with surviving MINs at B = 4");
        if (!(nf_asym > 1e-6)) fail("fidelity MIN symmetric about p = 0.5 at B = 4");
    }

    return {"figure trends at the reference parameters", pass, pass ? "all trends reproduced" : why.str()};
}

/// State and measure invariants under 1000 random evolutions.
inline CheckResult check_invariants()
{
    std::mt19937_64 rng(0x1f7a57u);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::ostringstream why;
    bool pass = true;
    auto fail = [&](const std::string& msg) {
        if (pass) why << msg;
        pass = false;
    };

    for (int i = 0; i < 1000 && pass; ++i) {
        const ModelParams mp = detail::random_params(rng);
        const ThermalElements t = thermal_elements(mp);
        const DensityMatrix rho = assemble_x(t);

        Mat4 out;
        XElements closed;
        if (i % 2 == 0) {
            const GadParams g{u01(rng), u01(rng)};
            out = apply(lift(gad_kraus(g)), rho).mat();
            closed = gad_evolve_closed(t, g);
        } else {
            const HybridParams h = detail::random_hybrid(rng);
            out = hybrid_apply(h, rho).mat();
            closed = hybrid_evolve_closed(t, h);
        }

        if (!is_hermitian(out, 1e-12)) fail("evolved state lost Hermiticity");
        if (std::abs(trace(out) - Complex(1.0)) > 1e-12) fail("evolved state lost unit trace");
        if (herm_eigenvalues(out)[0] < -1e-10) fail("evolved state lost positivity");
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                if (r != c && r + c != 3 && std::abs(out(r, c)) > 1e-13)
                    fail("evolved state left the X pattern");

        const CorrelationReport rep = detail::closed_report(t, closed);
        auto in_min_range = [](double v) { return v >= -1e-12 && v <= 0.5 + 1e-12; };
        if (!in_min_range(rep.n2) || !in_min_range(rep.n1) || !in_min_range(rep.nf))
            fail("a MIN left [0, 0.5]");
        if (!(rep.concurrence >= 0.0 && rep.concurrence <= 1.0)) fail("concurrence left [0, 1]");

        const DensityMatrix evolved = DensityMatrix::validated(out);
        const double fab = fidelity(rho, evolved);
        const double fba = fidelity(evolved, rho);
        if (!(fab >= 0.0 && fab <= 1.0)) fail("fidelity left [0, 1]");
        if (std::abs(fab - fba) > 1e-13) fail("fidelity asymmetric");
    }
    return {"invariant battery over 1000 random states and channels", pass,
            pass ? "all invariants held" : why.str()};
}

/// Byte-identical sweep output across repeated runs and thread counts.
inline CheckResult check_determinism()
{
    const auto preset = find_preset("fig1a");
    if (!preset) return {"deterministic sweep output", false, "preset fig1a missing"};

    auto render = [&](unsigned threads) {
        std::ostringstream os;
        write_table(sweep_table(preset->spec, sweep(preset->spec, threads)), OutputFormat::Csv, os);
        return os.str();
    };
    const std::string a = render(1);
    const std::string b = render(1);
    const std::string c = render(4);
    const bool pass = a == b && a == c;
    return {"deterministic sweep output across runs and thread counts", pass,
            pass ? std::to_string(a.size()) + " bytes, identical" : "outputs differ"};
}

inline std::vector<CheckResult> run_all()
{
    return {check_thermal_oracle(),  check_completeness(),   check_steady_state(),
            check_closed_vs_operator_sum(), check_measure_oracles(), check_figure_trends(),
            check_invariants(),      check_determinism()};
}

} // namespace qcorr::verify
