#pragma once

// Brute-force nodal analysis of series-RLC branch networks at one frequency.
// Structurally independent of the rational-function path: each branch is
// stamped as the complex admittance 1/(R + jwL + 1/(jwC)) and the dense
// complex system is solved by Gaussian elimination with partial pivoting.

#include "pdnz/branch.hpp"
#include "pdnz/ratfun.hpp"

#include <vector>

namespace pdnz {

struct NetlistElement {
    int node_a = 0;  // 0 = ground
    int node_b = 0;
    RlcBranch branch;

    friend bool operator==(const NetlistElement&, const NetlistElement&) = default;
};

struct Netlist {
    int node_count = 0;  // nodes 1..node_count, ground excluded
    std::vector<NetlistElement> elements;
    int port = 1;

    /// Structural checks: node ranges, no self loops, port range, every node
    /// reachable from ground. Throws InvalidArgument / Disconnected.
    void validate() const;

    friend bool operator==(const Netlist&, const Netlist&) = default;
};

/// Node voltages (index 0 = node 1) for a current `amps` injected into `inject_node`.
std::vector<ComplexValue> oracle_node_voltages(const Netlist& n, double freq_hz, int inject_node,
                                               ComplexValue amps = 1.0);

/// Voltage at `observe_node` per unit current injected at `inject_node`.
ComplexValue oracle_transfer_impedance(const Netlist& n, double freq_hz, int inject_node, int observe_node);

/// Driving-point impedance at the netlist port.
ComplexValue oracle_impedance(const Netlist& n, double freq_hz);

}  // namespace pdnz
