#include "pdnz/branch.hpp"

#include "pdnz/errors.hpp"

#include <cmath>

namespace pdnz {

void RlcBranch::validate() const {
    if (!std::isfinite(r) || !std::isfinite(l) || !std::isfinite(c))
        throw InvalidArgument("branch values must be finite");
    if (r < 0) throw InvalidArgument("branch resistance must be >= 0");
    if (l < 0) throw InvalidArgument("branch inductance must be >= 0");
    if (!(c > 0)) throw InvalidArgument("branch capacitance must be > 0");
}

}  // namespace pdnz
