#pragma once

// Impedance models of multi-supply power distribution networks seen from the
// load of supply 1. Every decap is a series RLC branch; supply-to-ground
// branches are z1, z2, z3 and coupling branches between supply nodes are
// z12 (two-supply) or the delta z12, z23, z31 (three-supply).

#include "pdnz/branch.hpp"
#include "pdnz/mna.hpp"
#include "pdnz/ratfun.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pdnz {

struct TwoSupplyPdn {
    RlcBranch z1;
    RlcBranch z12;
    RlcBranch z2;

    friend bool operator==(const TwoSupplyPdn&, const TwoSupplyPdn&) = default;
};

struct ThreeSupplyPdn {
    RlcBranch z1;
    RlcBranch z2;
    RlcBranch z3;
    RlcBranch z12;
    RlcBranch z23;
    RlcBranch z31;

    friend bool operator==(const ThreeSupplyPdn&, const ThreeSupplyPdn&) = default;
};

/// Three-supply network whose three coupling decaps share one value z0.
struct SymmetricThreeSupplyPdn {
    RlcBranch z1;
    RlcBranch z2;
    RlcBranch z3;
    RlcBranch z0;

    friend bool operator==(const SymmetricThreeSupplyPdn&, const SymmetricThreeSupplyPdn&) = default;

    ThreeSupplyPdn expanded() const { return {z1, z2, z3, z0, z0, z0}; }
};

using Topology = std::variant<TwoSupplyPdn, ThreeSupplyPdn, SymmetricThreeSupplyPdn>;

struct NamedBranch {
    std::string name;
    RlcBranch branch;

    friend bool operator==(const NamedBranch&, const NamedBranch&) = default;
};

/// A topology plus extra decaps in parallel at the observation node.
struct PdnSystem {
    static constexpr std::size_t kMaxExtraBranches = 8;

    Topology topology;
    std::vector<NamedBranch> extras;

    /// Branch invariants plus the extra-branch bound.
    void validate() const;

    friend bool operator==(const PdnSystem&, const PdnSystem&) = default;
};

/// R + sL + 1/(sC) = (LCs^2 + RCs + 1) / (Cs)
RationalFunction branch_rational(const RlcBranch& b);

RationalFunction two_supply_rf(const TwoSupplyPdn& p);

struct WyeLegs {
    RationalFunction za;  // leg at node 1: z12*z31 / sum
    RationalFunction zb;  // leg at node 2: z12*z23 / sum
    RationalFunction zc;  // leg at node 3: z23*z31 / sum
};

WyeLegs delta_to_wye(const RationalFunction& z12, const RationalFunction& z23, const RationalFunction& z31);

/// Z1 || [za + ((zb + Z2) || (zc + Z3))] with (za, zb, zc) the wye of the coupling delta.
RationalFunction three_supply_rf(const ThreeSupplyPdn& p);

/// The same reduction evaluated pointwise in extended-precision complex
/// arithmetic. Unlike the expanded polynomials it is not hurt by nearly
/// cancelling pole/zero pairs (e.g. equal coupling branches).
ComplexValue three_supply_impedance(const ThreeSupplyPdn& p, double freq_hz);

enum class Listing { corrected, as_printed };

/// Rational function assembled from the published closed-form coefficient
/// listing for the symmetric network (see coefficients.hpp).
RationalFunction symmetric_three_supply_rf(const SymmetricThreeSupplyPdn& p, Listing listing = Listing::corrected);

/// Closed-form impedance of the whole system including extra branches.
RationalFunction system_rf(const PdnSystem& s);

/// Explicit circuit for the nodal oracle; the port is node 1.
Netlist to_netlist(const PdnSystem& s);

/// Frequency hint for root finding: 1 / (2 pi sqrt(Lg Cg)), geometric means over all branches.
double root_scale_hint_hz(const PdnSystem& s);

/// Branch names in declaration order: topology branches, then extras.
std::vector<std::string> branch_names(const PdnSystem& s);
const RlcBranch* find_branch(const PdnSystem& s, std::string_view name);
RlcBranch* find_branch(PdnSystem& s, std::string_view name);

/// Topology branch names for a topology keyword ("two", "three", "three-symmetric").
std::vector<std::string> topology_branch_names(const Topology& t);

}  // namespace pdnz
