#include "pdnz/analysis.hpp"

#include <cmath>

namespace pdnz {

void TargetSpec::validate() const {
    if (!(vdd > 0) || !std::isfinite(vdd)) throw InvalidArgument("vdd must be positive");
    if (!(ripple > 0) || !(ripple < 1)) throw InvalidArgument("ripple must lie in (0, 1)");
    if (!(current > 0) || !std::isfinite(current)) throw InvalidArgument("current must be positive");
}

double target_impedance(const TargetSpec& t) {
    t.validate();
    return t.vdd * t.ripple / t.current;
}

namespace {

// Frequency where |Z| passes `level` between samples a and b (log-log linear).
double boundary(const std::vector<double>& f, const std::vector<double>& m, std::size_t a, std::size_t b,
                double level) {
    if (!(m[a] > 0) || !(m[b] > 0)) {
        const double t = (level - m[a]) / (m[b] - m[a]);
        return f[a] + t * (f[b] - f[a]);
    }
    const double la = std::log(m[a]), lb = std::log(m[b]);
    const double t = (std::log(level) - la) / (lb - la);
    return std::exp(std::log(f[a]) + t * (std::log(f[b]) - std::log(f[a])));
}

}  // namespace

ComplianceReport check_compliance(const SweepResult& s, double z_target) {
    if (!(z_target > 0)) throw InvalidArgument("target impedance must be positive");
    const auto m = s.magnitudes();
    const auto& f = s.freqs;
    ComplianceReport out;
    out.z_target = z_target;

    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] > out.worst_magnitude) {
            out.worst_magnitude = m[i];
            out.worst_freq = f[i];
        }
    }

    for (std::size_t i = 0; i < m.size();) {
        if (!(m[i] > z_target)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < m.size() && m[j + 1] > z_target) ++j;
        const double lo = i == 0 ? f.front() : boundary(f, m, i - 1, i, z_target);
        const double hi = j + 1 == m.size() ? f.back() : boundary(f, m, j, j + 1, z_target);
        out.violations.push_back({lo, hi});
        i = j + 1;
    }
    return out;
}

}  // namespace pdnz
