#pragma once

// Line-oriented PDN description:
//
//   # comment
//   topology two|three|three-symmetric
//   branch <name> R=<v> L=<v> C=<v>
//   extra <name> R=<v> L=<v> C=<v>
//   supply vdd=<v> ripple=<v> current=<v>
//   sweep fmin=<v> fmax=<v> points=<n>
//
// Keywords, keys and branch names are case-insensitive. Values take an
// optional SI suffix: f p n u m k meg g.

#include "pdnz/analysis.hpp"
#include "pdnz/pdn_model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pdnz {

struct SweepDefaults {
    std::optional<double> f_min;
    std::optional<double> f_max;
    std::optional<int> points;

    friend bool operator==(const SweepDefaults&, const SweepDefaults&) = default;
};

struct PdnConfig {
    std::optional<Topology> topology;
    std::vector<NamedBranch> extras;
    std::optional<TargetSpec> supply;
    SweepDefaults sweep;

    /// Throws InvalidArgument when the config has no topology.
    PdnSystem system() const;

    friend bool operator==(const PdnConfig&, const PdnConfig&) = default;
};

/// Value with optional SI suffix ("10m", "1meg", "2.5e-3"). Throws
/// InvalidArgument with a reason naming the offending suffix.
double parse_si(std::string_view text);

/// Throws ParseError (line number + reason).
PdnConfig parse_config(std::string_view text);

/// Canonical text that parse_config maps back to an identical PdnConfig.
std::string dump_config(const PdnConfig& cfg);

const char* topology_keyword(const Topology& t);

}  // namespace pdnz
