#include "pdnz/mna.hpp"

#include "pdnz/errors.hpp"
#include "pdnz/format.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace pdnz {

namespace {

int find_root(std::vector<int>& parent, int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
    }
    return x;
}

using Matrix = std::vector<std::vector<ComplexValue>>;

// Solves A x = b in place; A is destroyed.
std::vector<ComplexValue> gauss_solve(Matrix a, std::vector<ComplexValue> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a[col][col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double m = std::abs(a[row][col]);
            if (m > best) {
                best = m;
                pivot = row;
            }
        }
        if (!(best >= 1e-280)) throw SingularSystem("nodal matrix is singular (pivot " + format_number(best) + ")");
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(b[pivot], b[col]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            const ComplexValue f = a[row][col] / a[col][col];
            if (f == ComplexValue{}) continue;
            for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    std::vector<ComplexValue> x(n);
    for (std::size_t i = n; i-- > 0;) {
        ComplexValue acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
        x[i] = acc / a[i][i];
    }
    return x;
}

}  // namespace

void Netlist::validate() const {
    if (node_count < 1) throw InvalidArgument("netlist needs at least one node");
    if (port < 1 || port > node_count) throw InvalidArgument("port node out of range");
    std::vector<int> parent(static_cast<std::size_t>(node_count) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& e : elements) {
        if (e.node_a < 0 || e.node_a > node_count || e.node_b < 0 || e.node_b > node_count)
            throw InvalidArgument("element node out of range");
        if (e.node_a == e.node_b) throw InvalidArgument("element connects a node to itself");
        e.branch.validate();
        parent[static_cast<std::size_t>(find_root(parent, e.node_a))] = find_root(parent, e.node_b);
    }
    const int ground = find_root(parent, 0);
    for (int node = 1; node <= node_count; ++node)
        if (find_root(parent, node) != ground)
            throw Disconnected("node " + std::to_string(node) + " has no path to ground");
}

std::vector<ComplexValue> oracle_node_voltages(const Netlist& n, double freq_hz, int inject_node, ComplexValue amps) {
    n.validate();
    if (!(freq_hz > 0) || !std::isfinite(freq_hz)) throw InvalidArgument("frequency must be positive and finite");
    if (inject_node < 1 || inject_node > n.node_count) throw InvalidArgument("injection node out of range");

    const double omega = 2.0 * std::numbers::pi * freq_hz;
    if (!std::isfinite(omega)) throw EvaluationSingular("angular frequency overflows");
    const ComplexValue jw(0.0, omega);
    const auto size = static_cast<std::size_t>(n.node_count);
    Matrix y(size, std::vector<ComplexValue>(size));

    for (const auto& e : n.elements) {
        const ComplexValue z = e.branch.r + jw * e.branch.l + 1.0 / (jw * e.branch.c);
        if (z == ComplexValue{}) throw SingularSystem("branch impedance is exactly zero");
        const ComplexValue adm = 1.0 / z;
        const int a = e.node_a - 1;
        const int b = e.node_b - 1;
        if (a >= 0) y[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] += adm;
        if (b >= 0) y[static_cast<std::size_t>(b)][static_cast<std::size_t>(b)] += adm;
        if (a >= 0 && b >= 0) {
            y[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] -= adm;
            y[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] -= adm;
        }
    }

    std::vector<ComplexValue> rhs(size);
    rhs[static_cast<std::size_t>(inject_node - 1)] = amps;
    auto v = gauss_solve(std::move(y), std::move(rhs));
    for (const auto& x : v)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw SingularSystem("non-finite node voltage");
    return v;
}

ComplexValue oracle_transfer_impedance(const Netlist& n, double freq_hz, int inject_node, int observe_node) {
    if (observe_node < 1 || observe_node > n.node_count) throw InvalidArgument("observation node out of range");
    return oracle_node_voltages(n, freq_hz, inject_node)[static_cast<std::size_t>(observe_node - 1)];
}

ComplexValue oracle_impedance(const Netlist& n, double freq_hz) {
    return oracle_transfer_impedance(n, freq_hz, n.port, n.port);
}

}  // namespace pdnz
