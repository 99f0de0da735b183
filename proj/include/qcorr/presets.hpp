#pragma once

// Built-in parameter presets, one per reference figure panel. All share the
// couplings gamma = 0.1, J = 2, Jz = 2 except the Jz sweeps.

#include <optional>
#include <string>
#include <vector>

#include "qcorr/experiments.hpp"

namespace qcorr {

struct Preset {
    std::string name;
    std::string note;
    SweepSpec spec;
};

inline std::vector<Preset> figure_presets()
{
    const ModelParams base{2.0, 0.1, 2.0, 0.0};
    auto unit = uniform_grid(0.0, 1.0, 201);

    std::vector<Preset> out;
    auto add = [&out](std::string name, std::string note, SweepSpec spec) {
        out.push_back({std::move(name), std::move(note), std::move(spec)});
    };

    add("fig1a", "damping, lambda sweep, p = 0.5, B = 0",
        {base, GadParams{0.5, 0.0}, SweepAxis::Lambda, unit});
    add("fig1b_p0", "damping, lambda sweep, p = 0, B = 0",
        {base, GadParams{0.0, 0.0}, SweepAxis::Lambda, unit});
    add("fig1b_p1", "damping, lambda sweep, p = 1, B = 0",
        {base, GadParams{1.0, 0.0}, SweepAxis::Lambda, unit});
    add("fig1b_p01", "damping, lambda sweep, p = 0.1, B = 0",
        {base, GadParams{0.1, 0.0}, SweepAxis::Lambda, unit});

    add("fig2a", "damping, p sweep, lambda = 0.5, B = 0",
        {base, GadParams{0.0, 0.5}, SweepAxis::P, unit});
    add("fig2b", "damping, p sweep, lambda = 0.75, B = 0",
        {base, GadParams{0.0, 0.75}, SweepAxis::P, unit});

    const auto jz_grid = uniform_grid(-4.0, 4.0, 201);
    ModelParams jz_model = base;
    jz_model.jz = 0.0;
    add("fig3a", "no channel, Jz sweep, B = 0",
        {jz_model, GadParams{0.5, 0.0}, SweepAxis::Jz, jz_grid});
    add("fig3b", "damping, Jz sweep, p = 0.5, lambda = 0.5, B = 0",
        {jz_model, GadParams{0.5, 0.5}, SweepAxis::Jz, jz_grid});

    const auto b_grid = uniform_grid(0.0, 6.0, 201);
    add("fig4a", "damping, B sweep, p = 0.5, lambda = 0.1",
        {base, GadParams{0.5, 0.1}, SweepAxis::B, b_grid});
    add("fig4b", "damping, B sweep, p = 0.5, lambda = 0.9",
        {base, GadParams{0.5, 0.9}, SweepAxis::B, b_grid});

    ModelParams b4 = base, b8 = base;
    b4.b = 4.0;
    b8.b = 8.0;
    add("fig5a", "damping at B = 4, lambda sweep (fidelity focus), p from --p",
        {b4, GadParams{1.0, 0.0}, SweepAxis::Lambda, unit});
    add("fig5b", "damping at B = 8, lambda sweep (fidelity focus), p from --p",
        {b8, GadParams{1.0, 0.0}, SweepAxis::Lambda, unit});

    const HybridParams hyb{0.3, 0.2, 0.5, 0.0};
    add("fig6a", "hybrid flips, p sweep, B = 0", {base, hyb, SweepAxis::P, unit});
    add("fig6b", "hybrid flips, p sweep, B = 4", {b4, hyb, SweepAxis::P, unit});

    return out;
}

inline std::optional<Preset> find_preset(const std::string& name)
{
    for (auto& p : figure_presets())
        if (p.name == name) return p;
    return std::nullopt;
}

} // namespace qcorr
