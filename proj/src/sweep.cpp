#include "pdnz/analysis.hpp"

#include "pdnz/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace pdnz {

std::vector<double> SweepGrid::frequencies() const {
    const SweepGrid g = log_grid(f_min, f_max, points);
    const double lo = std::log10(g.f_min);
    const double hi = std::log10(g.f_max);
    std::vector<double> out(static_cast<std::size_t>(g.points));
    const double step = (hi - lo) / (g.points - 1);
    for (int k = 0; k < g.points; ++k) out[static_cast<std::size_t>(k)] = std::pow(10.0, lo + k * step);
    out.front() = g.f_min;
    out.back() = g.f_max;
    return out;
}

SweepGrid log_grid(double f_min, double f_max, int points) {
    if (!(f_min > 0) || !std::isfinite(f_min) || !std::isfinite(f_max) || !(f_min < f_max))
        throw BadRange("sweep range must satisfy 0 < fmin < fmax");
    if (points < 2) throw BadRange("sweep needs at least 2 points");
    return {f_min, f_max, points};
}

const char* to_string(Source s) {
    return s == Source::closed_form ? "closed" : "oracle";
}

std::vector<double> SweepResult::magnitudes() const {
    std::vector<double> m(z.size());
    std::transform(z.begin(), z.end(), m.begin(), [](const ComplexValue& v) { return std::abs(v); });
    return m;
}

namespace {

std::string describe(double f, const std::string& what) {
    std::ostringstream os;
    os.precision(12);
    os << what << " (at f = " << f << " Hz)";
    return os.str();
}

// Runs body(i) for i in [0, n) on up to `threads` workers with contiguous chunks.
// The first failure by index is rethrown.
template <class Body>
void for_each_index(std::size_t n, unsigned threads, Body body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, n);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t begin = n * w / workers;
            const std::size_t end = n * (w + 1) / workers;
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

SweepPointError::SweepPointError(double freq_hz, const std::string& what)
    : NumericalError(describe(freq_hz, what)), freq_hz_(freq_hz) {}

SweepResult sweep(const PdnSystem& system, const SweepGrid& grid, Source source, unsigned threads) {
    system.validate();
    SweepResult out;
    out.source = source;
    out.freqs = grid.frequencies();
    out.z.resize(out.freqs.size());

    std::optional<RationalFunction> rf;
    std::optional<Netlist> netlist;
    if (source == Source::closed_form)
        rf = system_rf(system);
    else
        netlist = to_netlist(system);

    for_each_index(out.freqs.size(), threads, [&](std::size_t i) {
        const double f = out.freqs[i];
        try {
            out.z[i] = rf ? rf_eval(*rf, f) : oracle_impedance(*netlist, f);
        } catch (const NumericalError& e) {
            throw SweepPointError(f, e.what());
        }
    });
    return out;
}

OracleComparison compare_with_oracle(const PdnSystem& system, const SweepGrid& grid, unsigned threads) {
    const auto closed = sweep(system, grid, Source::closed_form, threads);
    const auto oracle = sweep(system, grid, Source::oracle, threads);
    OracleComparison out;
    out.points.reserve(closed.freqs.size());
    for (std::size_t i = 0; i < closed.freqs.size(); ++i) {
        const double err = std::abs(closed.z[i] - oracle.z[i]) / std::abs(oracle.z[i]);
        out.points.push_back({closed.freqs[i], closed.z[i], oracle.z[i], err});
        out.max_relative_error = std::max(out.max_relative_error, err);
    }
    return out;
}

SymmetricComparison compare_symmetric_with_general(const SymmetricThreeSupplyPdn& p, const SweepGrid& grid,
                                                   Listing listing) {
    const auto listed = symmetric_three_supply_rf(p, listing);
    const auto general = p.expanded();
    const auto reduced = three_supply_rf(general);
    const double f_ref = std::sqrt(grid.f_min * grid.f_max);

    SymmetricComparison out;
    out.k = rf_eval(listed, f_ref) / three_supply_impedance(general, f_ref);
    for (double f : grid.frequencies()) {
        const auto zl = rf_eval(listed, f);
        const auto zr = three_supply_impedance(general, f);
        const auto zp = rf_eval(reduced, f);
        out.k_spread = std::max(out.k_spread, std::abs(zl / zr - out.k) / std::abs(out.k));
        out.max_relative_error = std::max(out.max_relative_error, std::abs(zl / out.k - zr) / std::abs(zr));
        out.rf_max_relative_error = std::max(out.rf_max_relative_error, std::abs(zl / out.k - zp) / std::abs(zp));
    }
    return out;
}

double eq3_printed_deviation(const ThreeSupplyPdn& p, const SweepGrid& grid) {
    const auto reduced = three_supply_rf(p);
    double worst = 0.0;
    for (double f : grid.frequencies()) {
        const auto zr = rf_eval(reduced, f);
        worst = std::max(worst, std::abs(eq3_printed_impedance(p, f) - zr) / std::abs(zr));
    }
    return worst;
}

}  // namespace pdnz
