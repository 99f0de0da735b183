#pragma once

// Deterministic row output. Doubles are written in their shortest
// round-trip form (std::to_chars), locale independent; CSV uses LF line
// endings and a header row; JSON is an array of objects with the same field
// names, null where a field does not apply.

#include <charconv>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "qcorr/experiments.hpp"

namespace qcorr {

enum class OutputFormat { Csv, Json };

inline std::string format_double(double v)
{
    if (v == 0.0) v = 0.0; // drop the sign of negative zero
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

using Cell = std::optional<double>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

inline void write_table(const Table& t, OutputFormat fmt, std::ostream& os)
{
    if (fmt == OutputFormat::Csv) {
        for (std::size_t i = 0; i < t.header.size(); ++i) {
            if (i) os << ',';
            os << t.header[i];
        }
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) os << ',';
                if (row[i]) os << format_double(*row[i]);
            }
            os << '\n';
        }
    } else {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json obj;
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (row[i])
                    obj[t.header[i]] = *row[i];
                else
                    obj[t.header[i]] = nullptr;
            }
            arr.push_back(std::move(obj));
        }
        os << arr.dump(2) << '\n';
    }
    if (!os) throw std::runtime_error("write_table: output stream failure");
}

// One schema for both channels; fields that do not apply stay empty.
inline const std::vector<std::string>& sweep_header()
{
    static const std::vector<std::string> h = {"axis",   "J",     "gamma", "Jz", "B",
                                               "p",      "lambda", "alpha", "beta", "delta",
                                               "concurrence", "n2", "n1", "nf", "fidelity"};
    return h;
}

inline std::vector<Cell> sweep_cells(const SweepSpec& s, const SweepRow& row)
{
    ModelParams mp = s.model;
    auto channel = s.channel;
    switch (s.axis) {
        case SweepAxis::B: mp.b = row.first; break;
        case SweepAxis::Jz: mp.jz = row.first; break;
        case SweepAxis::Lambda: std::get<GadParams>(channel).lambda = row.first; break;
        case SweepAxis::P:
            if (auto* g = std::get_if<GadParams>(&channel))
                g->p = row.first;
            else
                std::get<HybridParams>(channel).p = row.first;
            break;
    }

    std::vector<Cell> c(sweep_header().size());
    c[0] = row.first;
    c[1] = mp.j;
    c[2] = mp.gamma;
    c[3] = mp.jz;
    c[4] = mp.b;
    if (const auto* g = std::get_if<GadParams>(&channel)) {
        c[5] = g->p;
        c[6] = g->lambda;
    } else {
        const auto& h = std::get<HybridParams>(channel);
        c[5] = h.p;
        c[7] = h.alpha;
        c[8] = h.beta;
        c[9] = h.delta;
    }
    const CorrelationReport& r = row.second;
    c[10] = r.concurrence;
    c[11] = r.n2;
    c[12] = r.n1;
    c[13] = r.nf;
    c[14] = r.fidelity_to_initial;
    return c;
}

inline Table sweep_table(const SweepSpec& s, const std::vector<SweepRow>& rows)
{
    Table t;
    t.header = sweep_header();
    t.rows.reserve(rows.size());
    for (const auto& row : rows) t.rows.push_back(sweep_cells(s, row));
    return t;
}

} // namespace qcorr
