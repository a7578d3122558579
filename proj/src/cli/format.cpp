#include "coupled/cli/format.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include "coupled/errors.hpp"

namespace coupled::cli {

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw Error("format_number: conversion failed");
    return {buf.data(), end};
}

std::string format_number(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string{};
}

std::vector<double> flatten(const ProductPoint& p) { return concat(p); }

namespace {

void point_header(std::ostringstream& out, const ProductPoint& p) {
    const auto names = [&](char c, std::size_t dim) {
        if (dim == 1) {
            out << ',' << c;
            return;
        }
        for (std::size_t i = 1; i <= dim; ++i) out << ',' << c << i;
    };
    names('x', p.first.size());
    names('y', p.second.size());
}

}  // namespace

std::string trace_csv(const IterationTrace& trace) {
    if (trace.entries.empty()) throw ConfigurationError("trace_csv: empty trace");
    std::ostringstream out;
    out << 'n';
    point_header(out, trace.entries.front().point);
    out << ",step_distance,a_priori,a_posteriori\n";
    for (const auto& e : trace.entries) {
        out << e.n;
        for (double v : flatten(e.point)) out << ',' << format_number(v);
        out << ',' << format_number(e.step_distance) << ',' << format_number(e.a_priori) << ','
            << format_number(e.a_posteriori) << '\n';
    }
    return out.str();
}

std::string emit_plotdata(const IterationTrace& trace, const std::optional<ProductPoint>& limit) {
    if (trace.entries.empty()) throw ConfigurationError("emit_plotdata: empty trace");
    std::ostringstream out;
    out << "n,distance_to_limit,a_priori,a_posteriori\n";
    for (const auto& e : trace.entries) {
        out << e.n << ',';
        if (limit) out << format_number(product_distance(*limit, e.point));
        out << ',' << format_number(e.a_priori) << ',' << format_number(e.a_posteriori) << '\n';
    }
    return out.str();
}

}  // namespace coupled::cli
