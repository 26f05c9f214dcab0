#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace coverlab {

/// Exact rational arithmetic for weights, norms and distances.
/// Numerators and denominators at desk scale stay far below 2^63;
/// boost::rational keeps values normalized after every operation.
using Rat = boost::rational<long long>;

inline std::string rat_str(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace coverlab
