#pragma once

namespace pdnz {

/// Decoupling capacitor modeled as a series R (ESR), L (ESL), C.
struct RlcBranch {
    double r = 0.0;  // ohms
    double l = 0.0;  // henries
    double c = 0.0;  // farads

    /// Throws InvalidArgument unless r >= 0, l >= 0, c > 0, all finite.
    void validate() const;

    friend bool operator==(const RlcBranch&, const RlcBranch&) = default;
};

}  // namespace pdnz
