#pragma once

// Frequency-domain analysis of PDN models: log sweeps, resonance and
// anti-resonance detection with Q estimates, target-impedance compliance,
// remedy studies and closed-form vs nodal-oracle comparison.

#include "pdnz/errors.hpp"
#include "pdnz/pdn_model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pdnz {

struct SweepGrid {
    double f_min = 1e6;
    double f_max = 100e9;
    int points = 1000;

    /// Geometrically spaced, both endpoints included exactly.
    std::vector<double> frequencies() const;
};

/// Throws BadRange unless 0 < f_min < f_max and points >= 2.
SweepGrid log_grid(double f_min, double f_max, int points);

enum class Source { closed_form, oracle };

const char* to_string(Source s);

struct SweepResult {
    std::vector<double> freqs;     // Hz
    std::vector<ComplexValue> z;   // ohms
    Source source = Source::closed_form;

    std::vector<double> magnitudes() const;
};

/// Evaluation failure at one sweep frequency.
class SweepPointError : public NumericalError {
public:
    SweepPointError(double freq_hz, const std::string& what);
    double freq_hz() const noexcept { return freq_hz_; }

private:
    double freq_hz_;
};

/// Impedance at every grid frequency. With threads > 1 the grid is split into
/// contiguous chunks; results are stored by grid index, so output does not
/// depend on the thread count.
SweepResult sweep(const PdnSystem& system, const SweepGrid& grid, Source source = Source::closed_form,
                  unsigned threads = 1);

enum class PeakKind { resonance, anti_resonance };

const char* to_string(PeakKind k);

struct Peak {
    PeakKind kind = PeakKind::resonance;
    double freq = 0.0;       // Hz, parabolically refined
    double magnitude = 0.0;  // ohms
    std::optional<double> q;
    std::size_t grid_index = 0;  // discrete extremum
};

struct PeakReport {
    std::vector<Peak> peaks;  // strictly increasing frequency

    std::size_t count(PeakKind k) const;
    std::vector<Peak> of_kind(PeakKind k) const;
};

/// Interior strict local extrema of |Z|. Runs of equal values (within 1e-12
/// relative) count as one point located at their leftmost sample; endpoints
/// are never reported. Frequencies and magnitudes come from a parabola
/// through (log f, log |Z|) at the extremum and its two neighbours.
/// Throws TooFewPoints below 5 samples.
PeakReport detect_peaks(std::span<const double> freqs, std::span<const double> mags);
PeakReport detect_peaks(const SweepResult& s);

/// f_peak / (f_hi - f_lo) with f_lo, f_hi the nearest crossings of
/// |Z|peak / sqrt(2) (anti-resonance) or sqrt(2) |Z|peak (resonance).
/// Empty when a crossing lies outside the grid or another extremum comes first.
std::optional<double> q_estimate(const Peak& p, std::span<const double> freqs, std::span<const double> mags);
std::optional<double> q_estimate(const Peak& p, const SweepResult& s);

/// Re-locates each extremum on the model itself: golden-section search of
/// |Z| in log f between the grid neighbours of the discrete extremum, then Q
/// from half-power crossings bisected on the model. Needed when the grid is
/// coarser than a peak's bandwidth. Evaluates with the sweep's source.
PeakReport polish_peaks(const PdnSystem& system, const SweepResult& s, const PeakReport& report);

struct TargetSpec {
    double vdd = 0.0;      // volts
    double ripple = 0.0;   // fraction, 0 < ripple < 1
    double current = 0.0;  // amperes

    void validate() const;

    friend bool operator==(const TargetSpec&, const TargetSpec&) = default;
};

/// vdd * ripple / current
double target_impedance(const TargetSpec& t);

struct FrequencyInterval {
    double f_lo;
    double f_hi;
};

struct ComplianceReport {
    double z_target = 0.0;
    std::vector<FrequencyInterval> violations;
    double worst_freq = 0.0;
    double worst_magnitude = 0.0;

    bool compliant() const { return violations.empty(); }
};

/// Maximal intervals where |Z| > z_target (strict), boundaries interpolated
/// with log|Z| linear in log f. The worst point is always recorded.
ComplianceReport check_compliance(const SweepResult& s, double z_target);

/// Copy of `system` with b in parallel at the observation node. An empty name
/// becomes "x<n>". Throws TooManyBranches past the extra-branch bound.
PdnSystem add_parallel_decap(const PdnSystem& system, const RlcBranch& b, std::string name = {});

struct ParamSweepEntry {
    double value;
    SweepResult sweep;
    PeakReport peaks;  // polished
};

/// `param` is "<branch>.<R|L|C>" (case-insensitive), e.g. "z12.C".
/// Throws UnknownParam for a missing branch or field.
std::vector<ParamSweepEntry> param_sweep(const PdnSystem& system, const std::string& param,
                                         std::span<const double> values, const SweepGrid& grid,
                                         Source source = Source::closed_form, unsigned threads = 1);

/// Copy of `system` with one branch field replaced.
PdnSystem with_param(const PdnSystem& system, const std::string& param, double value);

struct ComparisonPoint {
    double freq;
    ComplexValue closed_form;
    ComplexValue oracle;
    double relative_error;
};

struct OracleComparison {
    std::vector<ComparisonPoint> points;
    double max_relative_error = 0.0;
};

OracleComparison compare_with_oracle(const PdnSystem& system, const SweepGrid& grid, unsigned threads = 1);

/// Listing-based symmetric model vs delta-wye reduction with z12 = z23 = z31 = z0.
/// k = Z_listing / Z_reduction at the geometric centre of the grid; the spread
/// is max |k(f) - k| / |k| over the grid and the error is measured after
/// dividing the listing model by k. The reduction is evaluated pointwise
/// (three_supply_impedance); rf_max_relative_error repeats the error check
/// against the expanded three_supply_rf polynomials.
struct SymmetricComparison {
    ComplexValue k;
    double k_spread = 0.0;
    double max_relative_error = 0.0;
    double rf_max_relative_error = 0.0;
};

SymmetricComparison compare_symmetric_with_general(const SymmetricThreeSupplyPdn& p, const SweepGrid& grid,
                                                   Listing listing = Listing::corrected);

/// Max relative deviation of the printed three-supply expression (Z_U read as
/// Z12 + Z23 + Z31) from the reduction model over the grid.
double eq3_printed_deviation(const ThreeSupplyPdn& p, const SweepGrid& grid);

}  // namespace pdnz
