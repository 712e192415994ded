#include "pdnz/pdn_model.hpp"

#include "pdnz/coefficients.hpp"
#include "pdnz/errors.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace pdnz {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct BranchRef {
    const char* name;
    const RlcBranch* branch;
};

std::vector<BranchRef> topology_branches(const Topology& t) {
    return std::visit(overloaded{
                          [](const TwoSupplyPdn& p) {
                              return std::vector<BranchRef>{{"z1", &p.z1}, {"z12", &p.z12}, {"z2", &p.z2}};
                          },
                          [](const ThreeSupplyPdn& p) {
                              return std::vector<BranchRef>{{"z1", &p.z1},   {"z2", &p.z2},   {"z3", &p.z3},
                                                            {"z12", &p.z12}, {"z23", &p.z23}, {"z31", &p.z31}};
                          },
                          [](const SymmetricThreeSupplyPdn& p) {
                              return std::vector<BranchRef>{
                                  {"z1", &p.z1}, {"z2", &p.z2}, {"z3", &p.z3}, {"z0", &p.z0}};
                          },
                      },
                      t);
}

}  // namespace

void PdnSystem::validate() const {
    for (const auto& b : topology_branches(topology)) b.branch->validate();
    if (extras.size() > kMaxExtraBranches)
        throw TooManyBranches("at most " + std::to_string(kMaxExtraBranches) + " extra branches are supported");
    for (const auto& e : extras) e.branch.validate();
}

RationalFunction branch_rational(const RlcBranch& b) {
    const Real r = b.r, l = b.l, c = b.c;
    return {Polynomial{1, r * c, l * c}, Polynomial{0, c}};
}

RationalFunction two_supply_rf(const TwoSupplyPdn& p) {
    const auto z1 = branch_rational(p.z1);
    const auto z12 = branch_rational(p.z12);
    const auto z2 = branch_rational(p.z2);
    return rf_parallel(z1, rf_add(z12, z2));
}

WyeLegs delta_to_wye(const RationalFunction& z12, const RationalFunction& z23, const RationalFunction& z31) {
    const auto sum = rf_add(rf_add(z12, z23), z31);
    if (sum.is_zero()) throw IdenticallyZeroDenominator();
    return {rf_div(rf_mul(z12, z31), sum), rf_div(rf_mul(z12, z23), sum), rf_div(rf_mul(z23, z31), sum)};
}

RationalFunction three_supply_rf(const ThreeSupplyPdn& p) {
    const auto legs = delta_to_wye(branch_rational(p.z12), branch_rational(p.z23), branch_rational(p.z31));
    const auto path2 = rf_add(legs.zb, branch_rational(p.z2));
    const auto path3 = rf_add(legs.zc, branch_rational(p.z3));
    const auto load = rf_add(legs.za, rf_parallel(path2, path3));
    return rf_parallel(branch_rational(p.z1), load);
}

ComplexValue three_supply_impedance(const ThreeSupplyPdn& p, double freq_hz) {
    if (!(freq_hz > 0) || !std::isfinite(freq_hz)) throw InvalidArgument("frequency must be positive and finite");
    using Z = std::complex<Real>;
    const Real w = 2 * std::numbers::pi_v<Real> * static_cast<Real>(freq_hz);
    auto branch = [w](const RlcBranch& b) { return Z(b.r, w * b.l - 1 / (w * b.c)); };
    auto par = [](Z a, Z b) { return a * b / (a + b); };
    const Z z12 = branch(p.z12), z23 = branch(p.z23), z31 = branch(p.z31);
    const Z sum = z12 + z23 + z31;
    const Z za = z12 * z31 / sum, zb = z12 * z23 / sum, zc = z23 * z31 / sum;
    const Z z = par(branch(p.z1), za + par(zb + branch(p.z2), zc + branch(p.z3)));
    const ComplexValue out(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
        throw EvaluationSingular("non-finite impedance at f = " + std::to_string(freq_hz) + " Hz");
    return out;
}

RationalFunction symmetric_three_supply_rf(const SymmetricThreeSupplyPdn& p, Listing listing) {
    auto set = eq4_coefficients_paper(p, listing);
    return {Polynomial(std::move(set.num)), Polynomial(std::move(set.den))};
}

RationalFunction system_rf(const PdnSystem& s) {
    s.validate();
    auto z = std::visit(overloaded{
                            [](const TwoSupplyPdn& p) { return two_supply_rf(p); },
                            [](const ThreeSupplyPdn& p) { return three_supply_rf(p); },
                            [](const SymmetricThreeSupplyPdn& p) { return symmetric_three_supply_rf(p); },
                        },
                        s.topology);
    for (const auto& e : s.extras) z = rf_parallel(z, branch_rational(e.branch));
    return z;
}

Netlist to_netlist(const PdnSystem& s) {
    s.validate();
    Netlist n;
    n.port = 1;
    std::visit(overloaded{
                   [&](const TwoSupplyPdn& p) {
                       n.node_count = 2;
                       n.elements = {{1, 0, p.z1}, {1, 2, p.z12}, {2, 0, p.z2}};
                   },
                   [&](const ThreeSupplyPdn& p) {
                       n.node_count = 3;
                       n.elements = {{1, 0, p.z1},  {2, 0, p.z2},  {3, 0, p.z3},
                                     {1, 2, p.z12}, {2, 3, p.z23}, {3, 1, p.z31}};
                   },
                   [&](const SymmetricThreeSupplyPdn& p) {
                       n.node_count = 3;
                       n.elements = {{1, 0, p.z1}, {2, 0, p.z2}, {3, 0, p.z3},
                                     {1, 2, p.z0}, {2, 3, p.z0}, {3, 1, p.z0}};
                   },
               },
               s.topology);
    for (const auto& e : s.extras) n.elements.push_back({1, 0, e.branch});
    return n;
}

double root_scale_hint_hz(const PdnSystem& s) {
    double log_l = 0, log_c = 0, log_r = 0;
    int n_l = 0, n_r = 0, n = 0;
    auto accumulate = [&](const RlcBranch& b) {
        ++n;
        log_c += std::log(b.c);
        if (b.l > 0) {
            log_l += std::log(b.l);
            ++n_l;
        }
        if (b.r > 0) {
            log_r += std::log(b.r);
            ++n_r;
        }
    };
    for (const auto& b : topology_branches(s.topology)) accumulate(*b.branch);
    for (const auto& e : s.extras) accumulate(e.branch);

    const double c = std::exp(log_c / n);
    double omega = 1.0;
    if (n_l > 0)
        omega = 1.0 / std::sqrt(std::exp(log_l / n_l) * c);
    else if (n_r > 0)
        omega = 1.0 / (std::exp(log_r / n_r) * c);
    return omega / (2.0 * std::numbers::pi);
}

std::vector<std::string> topology_branch_names(const Topology& t) {
    std::vector<std::string> out;
    for (const auto& b : topology_branches(t)) out.emplace_back(b.name);
    return out;
}

std::vector<std::string> branch_names(const PdnSystem& s) {
    auto out = topology_branch_names(s.topology);
    for (const auto& e : s.extras) out.push_back(e.name);
    return out;
}

const RlcBranch* find_branch(const PdnSystem& s, std::string_view name) {
    for (const auto& b : topology_branches(s.topology))
        if (name == b.name) return b.branch;
    for (const auto& e : s.extras)
        if (name == e.name) return &e.branch;
    return nullptr;
}

RlcBranch* find_branch(PdnSystem& s, std::string_view name) {
    return const_cast<RlcBranch*>(find_branch(static_cast<const PdnSystem&>(s), name));
}

}  // namespace pdnz
