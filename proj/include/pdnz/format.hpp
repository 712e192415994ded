#pragma once

#include <string>

namespace pdnz {

/// Scientific notation with the shortest round-trip mantissa and a bare
/// exponent ("7.8125e-4", "1e6"). When min_significant exceeds the digits
/// needed, the mantissa is zero-padded; the value still parses back exactly.
std::string format_number(double x, int min_significant = 0);

}  // namespace pdnz
