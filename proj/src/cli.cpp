#include "pdnz/cli.hpp"

#include "pdnz/analysis.hpp"
#include "pdnz/coefficients.hpp"
#include "pdnz/config.hpp"
#include "pdnz/format.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace pdnz {

namespace {

constexpr double kVerifyTolerance = 1e-8;
constexpr int kCsvDigits = 12;

struct Options {
    std::string config;
    std::string fmin, fmax, points;
    std::string out;
    std::string source = "closed";
    std::string ztarget;
    std::string param;
    std::string values;
    unsigned threads = 1;
    bool dump_config = false;
    bool as_printed = false;
};

std::string read_config_text(const std::string& path) {
    std::ostringstream os;
    if (path == "-") {
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read config file '" + path + "'");
    os << in.rdbuf();
    return os.str();
}

SweepGrid resolve_grid(const PdnConfig& cfg, const Options& o) {
    SweepGrid g;
    if (cfg.sweep.f_min) g.f_min = *cfg.sweep.f_min;
    if (cfg.sweep.f_max) g.f_max = *cfg.sweep.f_max;
    if (cfg.sweep.points) g.points = *cfg.sweep.points;
    if (!o.fmin.empty()) g.f_min = parse_si(o.fmin);
    if (!o.fmax.empty()) g.f_max = parse_si(o.fmax);
    if (!o.points.empty()) {
        const double p = parse_si(o.points);
        if (p != std::floor(p) || p < 2 || p > 1e8) throw BadRange("--points must be an integer >= 2");
        g.points = static_cast<int>(p);
    }
    return log_grid(g.f_min, g.f_max, g.points);
}

Source resolve_source(const Options& o) {
    if (o.source == "closed") return Source::closed_form;
    if (o.source == "oracle") return Source::oracle;
    throw InvalidArgument("--source must be closed or oracle");
}

std::string q_text(const std::optional<double>& q) {
    return q ? format_number(*q) : std::string("none");
}

void write_peak(std::ostream& out, const Peak& p, const char* indent = "") {
    out << indent << to_string(p.kind) << " freq_hz=" << format_number(p.freq)
        << " mag_ohms=" << format_number(p.magnitude) << " q=" << q_text(p.q) << '\n';
}

void write_csv(std::ostream& out, const SweepResult& s) {
    out << "freq_hz,re_ohms,im_ohms,mag_ohms,phase_deg\n";
    for (std::size_t i = 0; i < s.freqs.size(); ++i) {
        const auto z = s.z[i];
        const double phase = std::atan2(z.imag(), z.real()) * 180.0 / std::numbers::pi;
        out << format_number(s.freqs[i], kCsvDigits) << ',' << format_number(z.real(), kCsvDigits) << ','
            << format_number(z.imag(), kCsvDigits) << ',' << format_number(std::abs(z), kCsvDigits) << ','
            << format_number(phase, kCsvDigits) << '\n';
    }
}

template <class Writer>
void emit(const std::string& path, std::ostream& fallback, Writer writer) {
    if (path.empty()) {
        writer(fallback);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write '" + path + "'");
    writer(f);
}

int cmd_sweep(const PdnConfig& cfg, const Options& o, std::ostream& out) {
    const auto s = sweep(cfg.system(), resolve_grid(cfg, o), resolve_source(o), o.threads);
    emit(o.out, out, [&](std::ostream& os) { write_csv(os, s); });
    return kExitOk;
}

int cmd_peaks(const PdnConfig& cfg, const Options& o, std::ostream& out) {
    const auto system = cfg.system();
    const auto s = sweep(system, resolve_grid(cfg, o), resolve_source(o), o.threads);
    const auto report = polish_peaks(system, s, detect_peaks(s));
    if (report.peaks.empty()) out << "no peaks\n";
    for (const auto& p : report.peaks) write_peak(out, p);
    return kExitOk;
}

int cmd_comply(const PdnConfig& cfg, const Options& o, std::ostream& out) {
    double z_target = 0;
    if (!o.ztarget.empty())
        z_target = parse_si(o.ztarget);
    else if (cfg.supply)
        z_target = target_impedance(*cfg.supply);
    else
        throw InvalidArgument("no target impedance: add a supply line or pass --ztarget");
    if (!(z_target > 0)) throw InvalidArgument("--ztarget must be positive");

    const auto s = sweep(cfg.system(), resolve_grid(cfg, o), resolve_source(o), o.threads);
    const auto r = check_compliance(s, z_target);
    out << "z_target_ohms=" << format_number(r.z_target) << '\n';
    for (const auto& v : r.violations)
        out << "violation f_lo_hz=" << format_number(v.f_lo) << " f_hi_hz=" << format_number(v.f_hi) << '\n';
    out << "worst freq_hz=" << format_number(r.worst_freq) << " mag_ohms=" << format_number(r.worst_magnitude)
        << '\n';
    out << (r.compliant() ? "compliant" : "non-compliant") << '\n';
    return r.compliant() ? kExitOk : kExitViolation;
}

void write_coefficients(std::ostream& out, const CoefficientReport& r) {
    for (const auto& t : r.terms) {
        out << "  " << t.name << " listed=" << format_number(static_cast<double>(t.listed))
            << " expanded=" << format_number(static_cast<double>(t.expanded))
            << " rel_err=" << format_number(t.relative_error) << ' '
            << (t.status == TermStatus::match ? "MATCH" : "MISMATCH");
        if (!t.note.empty()) out << " (" << t.note << ')';
        out << '\n';
    }
}

int cmd_verify(const PdnConfig& cfg, const Options& o, std::ostream& out) {
    const auto system = cfg.system();
    const auto grid = resolve_grid(cfg, o);
    const auto cmp = compare_with_oracle(system, grid, o.threads);
    const Listing listing = o.as_printed ? Listing::as_printed : Listing::corrected;
    const char* listing_name = o.as_printed ? "as-printed" : "corrected";

    out << "points=" << cmp.points.size() << '\n';
    out << "max_rel_err=" << format_number(cmp.max_relative_error) << '\n';
    if (const auto* p = std::get_if<TwoSupplyPdn>(&system.topology)) {
        out << "two-supply coefficient listing (" << listing_name << ") vs product expansion:\n";
        write_coefficients(out, eq2_report(*p, listing));
    } else if (const auto* p = std::get_if<ThreeSupplyPdn>(&system.topology)) {
        out << "printed three-supply expression (Z_U = Z12+Z23+Z31) max_rel_dev="
            << format_number(eq3_printed_deviation(*p, grid)) << '\n';
    } else if (const auto* p = std::get_if<SymmetricThreeSupplyPdn>(&system.topology)) {
        out << "symmetric coefficient listing (" << listing_name << ") vs product expansion:\n";
        write_coefficients(out, eq4_report(*p, listing));
        const auto sym = compare_symmetric_with_general(*p, grid, listing);
        out << "symmetric vs delta-wye reduction k=" << format_number(sym.k.real()) << ','
            << format_number(sym.k.imag()) << " k_spread=" << format_number(sym.k_spread)
            << " max_rel_err=" << format_number(sym.max_relative_error)
            << " rf_max_rel_err=" << format_number(sym.rf_max_relative_error) << '\n';
    }

    if (!o.out.empty()) {
        emit(o.out, out, [&](std::ostream& os) {
            os << "freq_hz,closed_re,closed_im,oracle_re,oracle_im,rel_err\n";
            for (const auto& pt : cmp.points)
                os << format_number(pt.freq, kCsvDigits) << ',' << format_number(pt.closed_form.real(), kCsvDigits)
                   << ',' << format_number(pt.closed_form.imag(), kCsvDigits) << ','
                   << format_number(pt.oracle.real(), kCsvDigits) << ','
                   << format_number(pt.oracle.imag(), kCsvDigits) << ','
                   << format_number(pt.relative_error, kCsvDigits) << '\n';
        });
    }

    const bool ok = cmp.max_relative_error <= kVerifyTolerance;
    out << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kExitOk : kExitViolation;
}

void write_roots(std::ostream& out, const char* label, const RootSet& roots) {
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        const auto s = roots.unscaled(i);
        const double mag = std::abs(s);
        out << label << " freq_hz=" << format_number(mag / (2.0 * std::numbers::pi))
            << " damping=" << (mag > 0 ? format_number(-s.real() / mag) : std::string("none"))
            << " re_rad_s=" << format_number(s.real()) << " im_rad_s=" << format_number(s.imag()) << '\n';
    }
}

int cmd_poles(const PdnConfig& cfg, const Options&, std::ostream& out, std::ostream& err) {
    const auto system = cfg.system();
    const auto rf = system_rf(system);
    const double hint = root_scale_hint_hz(system);
    const auto zeros = rf_roots(rf.num(), hint);
    const auto poles = rf_roots(rf.den(), hint);
    out << "scale_rad_s=" << format_number(zeros.scale) << '\n';
    write_roots(out, "zero", zeros);
    write_roots(out, "pole", poles);
    const auto pairs = find_cancellations(zeros, poles);
    for (const auto& c : pairs)
        out << "cancelled zero_freq_hz=" << format_number(std::abs(zeros.unscaled(c.zero_index)) / (2 * std::numbers::pi))
            << " pole_freq_hz=" << format_number(std::abs(poles.unscaled(c.pole_index)) / (2 * std::numbers::pi))
            << " rel_dist=" << format_number(c.relative_distance) << '\n';
    if (pairs.empty()) out << "no cancellations\n";
    if (!zeros.converged || !poles.converged) {
        err << "root finder did not converge\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_target_z(const PdnConfig& cfg, std::ostream& out) {
    if (!cfg.supply) throw InvalidArgument("config has no supply line");
    out << format_number(target_impedance(*cfg.supply)) << '\n';
    return kExitOk;
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (!item.empty()) out.push_back(parse_si(item));
    }
    if (out.empty()) throw InvalidArgument("--values needs at least one value");
    return out;
}

std::string indexed_path(const std::string& path, std::size_t i) {
    const std::filesystem::path p(path);
    auto name = p.stem().string() + "_" + std::to_string(i) + p.extension().string();
    return (p.parent_path() / name).string();
}

int cmd_param_sweep(const PdnConfig& cfg, const Options& o, std::ostream& out) {
    if (o.param.empty()) throw InvalidArgument("param-sweep needs --param");
    const auto values = parse_values(o.values);
    const auto entries = param_sweep(cfg.system(), o.param, values, resolve_grid(cfg, o), resolve_source(o), o.threads);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (!o.out.empty()) {
            const auto path = indexed_path(o.out, i);
            emit(path, out, [&](std::ostream& os) { write_csv(os, e.sweep); });
        }
        out << o.param << '=' << format_number(e.value) << " peaks=" << e.peaks.peaks.size() << '\n';
        for (const auto& p : e.peaks.peaks) write_peak(out, p, "  ");
    }
    return kExitOk;
}

void add_grid_options(CLI::App* sub, Options& o) {
    sub->add_option("--fmin", o.fmin, "Sweep start frequency (Hz, SI suffix allowed)");
    sub->add_option("--fmax", o.fmax, "Sweep stop frequency (Hz)");
    sub->add_option("--points", o.points, "Number of log-spaced points");
    sub->add_option("--source", o.source, "Impedance source: closed or oracle")->check(CLI::IsMember({"closed", "oracle"}));
    sub->add_option("--threads", o.threads, "Worker threads for the sweep")->check(CLI::Range(1u, 256u));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Impedance analysis of multi-supply power distribution networks", "pdnz"};
    app.require_subcommand(1);
    Options o;

    struct Command {
        const char* name;
        const char* help;
        bool grid;
    };
    const Command commands[] = {
        {"sweep", "Write |Z(f)| as CSV", true},
        {"peaks", "List resonances and anti-resonances", true},
        {"comply", "Check |Z(f)| against the target impedance", true},
        {"verify", "Compare the closed form with the nodal oracle", true},
        {"poles", "List poles and zeros and flag cancelling pairs", false},
        {"target-z", "Print the target impedance of the supply", false},
        {"param-sweep", "Sweep one branch parameter", true},
    };
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("config", o.config, "PDN config file ('-' for stdin)")->required();
        sub->add_flag("--dump-config", o.dump_config, "Print the parsed config in canonical form and exit");
        if (c.grid) add_grid_options(sub, o);
        const std::string name = c.name;
        if (name == "sweep" || name == "verify" || name == "param-sweep")
            sub->add_option("--out", o.out, "Output file");
        if (name == "comply") sub->add_option("--ztarget", o.ztarget, "Target impedance override (ohms)");
        if (name == "verify") sub->add_flag("--as-printed", o.as_printed, "Use the verbatim coefficient listings");
        if (name == "param-sweep") {
            sub->add_option("--param", o.param, "Branch field, e.g. z12.C")->required();
            sub->add_option("--values", o.values, "Comma-separated values")->required();
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        // Help requests print to `out` and report success; real errors go to `err`.
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const PdnConfig cfg = parse_config(read_config_text(o.config));
        if (o.dump_config) {
            out << dump_config(cfg);
            return kExitOk;
        }
        if (command == "sweep") return cmd_sweep(cfg, o, out);
        if (command == "peaks") return cmd_peaks(cfg, o, out);
        if (command == "comply") return cmd_comply(cfg, o, out);
        if (command == "verify") return cmd_verify(cfg, o, out);
        if (command == "poles") return cmd_poles(cfg, o, out, err);
        if (command == "target-z") return cmd_target_z(cfg, out);
        return cmd_param_sweep(cfg, o, out);
    } catch (const ParseError& e) {
        err << "pdnz: " << o.config << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "pdnz: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "pdnz: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace pdnz
