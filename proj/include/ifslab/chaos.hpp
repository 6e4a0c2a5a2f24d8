#pragma once

#include <optional>
#include <vector>

#include "ifslab/ifs.hpp"
#include "ifslab/intervals.hpp"
#include "ifslab/symbolic.hpp"

namespace ifslab {

struct Orbit {
    double x0 = 0.0;
    /// points[n] = T_{xi_n} o ... o T_{xi_0}(x0).
    std::vector<double> points;
};

Orbit orbit(const Ifs& f, double x0, const SymbolStream& stream, std::size_t n);

/// Union of the resolution-wide intervals centred on points[from..].
IntervalSet tail_cover(const Orbit& o, const Interval& domain, std::size_t from, double resolution);

struct ChaosProbe {
    double distance = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    IntervalSet cover;
};

/// Compares the tail cover with `reference`; passes when the Hausdorff
/// distance is at most max(2 resolution, 2 target_tol).
ChaosProbe chaos_probe(const Ifs& f, double x0, const SymbolStream& stream, std::size_t n, std::size_t from,
                       double resolution, const std::optional<IntervalSet>& reference, double target_tol);

}  // namespace ifslab
