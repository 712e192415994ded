#include "pdnz/format.hpp"

#include <charconv>
#include <cmath>
#include <string_view>

namespace pdnz {

std::string format_number(double x, int min_significant) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";

    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
    const std::string_view text(buf, static_cast<std::size_t>(res.ptr - buf));
    const auto e = text.find('e');
    std::string mantissa(text.substr(0, e));
    const int exponent = std::stoi(std::string(text.substr(e + 1)));

    int digits = 0;
    for (char c : mantissa)
        if (c >= '0' && c <= '9') ++digits;
    if (digits < min_significant) {
        if (mantissa.find('.') == std::string::npos) mantissa += '.';
        mantissa.append(static_cast<std::size_t>(min_significant - digits), '0');
    }
    return mantissa + 'e' + std::to_string(exponent);
}

}  // namespace pdnz
