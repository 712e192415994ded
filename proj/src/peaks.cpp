#include "pdnz/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>

namespace pdnz {

const char* to_string(PeakKind k) {
    return k == PeakKind::resonance ? "resonance" : "anti_resonance";
}

std::size_t PeakReport::count(PeakKind k) const {
    return static_cast<std::size_t>(
        std::count_if(peaks.begin(), peaks.end(), [k](const Peak& p) { return p.kind == k; }));
}

std::vector<Peak> PeakReport::of_kind(PeakKind k) const {
    std::vector<Peak> out;
    std::copy_if(peaks.begin(), peaks.end(), std::back_inserter(out), [k](const Peak& p) { return p.kind == k; });
    return out;
}

namespace {

constexpr double kPlateauTolerance = 1e-12;

bool near_equal(double a, double b) {
    return std::fabs(a - b) <= kPlateauTolerance * std::max(std::fabs(a), std::fabs(b));
}

struct Run {
    std::size_t first;
    std::size_t last;
};

// Parabola through three points; returns the vertex (x, y), clamped to [x0, x2].
std::pair<double, double> parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d10 = x1 - x0, d12 = x1 - x2;
    const double denom = d10 * (y1 - y2) - d12 * (y1 - y0);
    if (denom == 0.0 || !std::isfinite(denom)) return {x1, y1};
    double x = x1 - 0.5 * (d10 * d10 * (y1 - y2) - d12 * d12 * (y1 - y0)) / denom;
    x = std::clamp(x, x0, x2);
    // Lagrange form at the vertex.
    const double l0 = (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
    return {x, y0 * l0 + y1 * l1 + y2 * l2};
}

double crossing(std::span<const double> f, std::span<const double> m, std::size_t a, std::size_t b, double level) {
    const double la = std::log(m[a]), lb = std::log(m[b]);
    const double t = lb == la ? 0.0 : (std::log(level) - la) / (lb - la);
    return std::exp(std::log(f[a]) + t * (std::log(f[b]) - std::log(f[a])));
}

std::optional<double> q_with_blockers(const Peak& p, std::span<const double> f, std::span<const double> m,
                                      const std::vector<std::size_t>& blockers) {
    const bool anti = p.kind == PeakKind::anti_resonance;
    const double level = anti ? p.magnitude / std::sqrt(2.0) : p.magnitude * std::sqrt(2.0);
    auto beyond = [&](double v) { return anti ? v <= level : v >= level; };
    auto blocked = [&](std::size_t k) {
        return std::find(blockers.begin(), blockers.end(), k) != blockers.end();
    };

    std::optional<double> f_lo, f_hi;
    for (std::size_t k = p.grid_index; k-- > 0;) {
        if (beyond(m[k])) {
            f_lo = crossing(f, m, k, k + 1, level);
            break;
        }
        if (blocked(k)) return std::nullopt;
    }
    for (std::size_t k = p.grid_index + 1; k < m.size(); ++k) {
        if (beyond(m[k])) {
            f_hi = crossing(f, m, k - 1, k, level);
            break;
        }
        if (blocked(k)) return std::nullopt;
    }
    if (!f_lo || !f_hi || !(*f_hi > *f_lo)) return std::nullopt;
    return p.freq / (*f_hi - *f_lo);
}

}  // namespace

PeakReport detect_peaks(std::span<const double> freqs, std::span<const double> mags) {
    if (freqs.size() != mags.size()) throw InvalidArgument("frequency and magnitude lengths differ");
    if (mags.size() < 5) throw TooFewPoints("peak detection needs at least 5 points");

    std::vector<Run> runs;
    for (std::size_t i = 0; i < mags.size();) {
        std::size_t j = i;
        while (j + 1 < mags.size() && near_equal(mags[j + 1], mags[i])) ++j;
        runs.push_back({i, j});
        i = j + 1;
    }

    PeakReport report;
    for (std::size_t r = 1; r + 1 < runs.size(); ++r) {
        const std::size_t i = runs[r].first;
        const double v = mags[i];
        const double left = mags[runs[r - 1].first];
        const double right = mags[runs[r + 1].first];
        PeakKind kind;
        if (v > left && v > right)
            kind = PeakKind::anti_resonance;
        else if (v < left && v < right)
            kind = PeakKind::resonance;
        else
            continue;

        const auto [lx, ly] = parabola_vertex(std::log(freqs[i - 1]), std::log(mags[i - 1]), std::log(freqs[i]),
                                              std::log(mags[i]), std::log(freqs[i + 1]), std::log(mags[i + 1]));
        Peak p;
        p.kind = kind;
        p.freq = std::exp(lx);
        p.magnitude = std::exp(ly);
        p.grid_index = i;
        report.peaks.push_back(p);
    }

    std::vector<std::size_t> indices;
    for (const auto& p : report.peaks) indices.push_back(p.grid_index);
    for (auto& p : report.peaks) {
        std::vector<std::size_t> others;
        for (auto k : indices)
            if (k != p.grid_index) others.push_back(k);
        p.q = q_with_blockers(p, freqs, mags, others);
    }
    return report;
}

PeakReport detect_peaks(const SweepResult& s) {
    const auto m = s.magnitudes();
    return detect_peaks(s.freqs, m);
}

std::optional<double> q_estimate(const Peak& p, std::span<const double> freqs, std::span<const double> mags) {
    const auto all = detect_peaks(freqs, mags);
    std::vector<std::size_t> others;
    for (const auto& q : all.peaks)
        if (q.grid_index != p.grid_index) others.push_back(q.grid_index);
    return q_with_blockers(p, freqs, mags, others);
}

std::optional<double> q_estimate(const Peak& p, const SweepResult& s) {
    const auto m = s.magnitudes();
    return q_estimate(p, s.freqs, m);
}

namespace {

using MagnitudeAt = std::function<double(double)>;

// Extremum of |Z| over log f in [lo, hi] by golden-section search.
std::pair<double, double> golden_extremum(const MagnitudeAt& mag, double lo, double hi, bool maximum) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto score = [&](double x) {
        const double m = mag(std::exp(x));
        return maximum ? -m : m;
    };
    double a = std::log(lo), b = std::log(hi);
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = score(c), fd = score(d);
    for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::fabs(a)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = score(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = score(d);
        }
    }
    const double x = fc < fd ? c : d;
    const double f = std::exp(x);
    return {f, mag(f)};
}

// Crossing of `level` between an inner frequency (not beyond) and an outer one (beyond).
double bisect_crossing(const MagnitudeAt& mag, double inner, double outer, double level) {
    double a = std::log(inner), b = std::log(outer);
    const double target = std::log(level);
    const double ga = std::log(mag(inner)) - target;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (a + b);
        const double gm = std::log(mag(std::exp(mid))) - target;
        if ((gm > 0) == (ga > 0))
            a = mid;
        else
            b = mid;
    }
    return std::exp(0.5 * (a + b));
}

std::optional<double> polished_q(const Peak& p, const MagnitudeAt& mag, std::span<const double> f,
                                 std::span<const double> m, const std::vector<std::size_t>& blockers) {
    const bool anti = p.kind == PeakKind::anti_resonance;
    const double level = anti ? p.magnitude / std::sqrt(2.0) : p.magnitude * std::sqrt(2.0);
    auto beyond = [&](double v) { return anti ? v <= level : v >= level; };
    auto blocked = [&](std::size_t k) {
        return std::find(blockers.begin(), blockers.end(), k) != blockers.end();
    };

    // Grid points strictly left / right of the refined frequency.
    const auto split = static_cast<std::size_t>(std::upper_bound(f.begin(), f.end(), p.freq) - f.begin());

    std::optional<double> f_lo, f_hi;
    double inner = p.freq;
    for (std::size_t k = split; k-- > 0;) {
        if (f[k] >= p.freq) continue;
        if (beyond(m[k])) {
            f_lo = bisect_crossing(mag, inner, f[k], level);
            break;
        }
        if (blocked(k)) return std::nullopt;
        inner = f[k];
    }
    inner = p.freq;
    for (std::size_t k = split; k < m.size(); ++k) {
        if (beyond(m[k])) {
            f_hi = bisect_crossing(mag, inner, f[k], level);
            break;
        }
        if (blocked(k)) return std::nullopt;
        inner = f[k];
    }
    if (!f_lo || !f_hi || !(*f_hi > *f_lo)) return std::nullopt;
    return p.freq / (*f_hi - *f_lo);
}

}  // namespace

PeakReport polish_peaks(const PdnSystem& system, const SweepResult& s, const PeakReport& report) {
    MagnitudeAt mag;
    if (s.source == Source::oracle) {
        const auto net = to_netlist(system);
        mag = [net](double f) { return std::abs(oracle_impedance(net, f)); };
    } else {
        const auto rf = system_rf(system);
        mag = [rf](double f) { return std::abs(rf_eval(rf, f)); };
    }
    const auto m = s.magnitudes();
    const std::span<const double> f(s.freqs);

    PeakReport out = report;
    for (auto& p : out.peaks) {
        const std::size_t i = p.grid_index;
        if (i == 0 || i + 1 >= f.size()) continue;
        const auto [freq, magnitude] = golden_extremum(mag, f[i - 1], f[i + 1], p.kind == PeakKind::anti_resonance);
        // Keep the grid sample if the search drifted to a worse point.
        const bool better = p.kind == PeakKind::anti_resonance ? magnitude >= m[i] : magnitude <= m[i];
        p.freq = better ? freq : f[i];
        p.magnitude = better ? magnitude : m[i];
    }
    std::vector<std::size_t> indices;
    for (const auto& p : out.peaks) indices.push_back(p.grid_index);
    for (auto& p : out.peaks) {
        std::vector<std::size_t> others;
        for (auto k : indices)
            if (k != p.grid_index) others.push_back(k);
        p.q = polished_q(p, mag, f, m, others);
    }
    return out;
}

}  // namespace pdnz
