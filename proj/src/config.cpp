#include "pdnz/config.hpp"

#include "pdnz/format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace pdnz {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

int suffix_exponent(const std::string& suffix) {
    if (suffix.empty()) return 0;
    if (suffix == "meg") return 6;
    if (suffix.size() == 1) {
        switch (suffix[0]) {
            case 'f': return -15;
            case 'p': return -12;
            case 'n': return -9;
            case 'u': return -6;
            case 'm': return -3;
            case 'k': return 3;
            case 'g': return 9;
            default: break;
        }
    }
    throw InvalidArgument("unknown suffix '" + suffix + "'");
}

struct BranchLine {
    RlcBranch value;
    int line;
};

// Parses "key=value" tokens; every key must be listed in `allowed`.
std::map<std::string, std::string_view> key_values(std::span<const std::string_view> tokens,
                                                   std::initializer_list<const char*> allowed, int line) {
    std::map<std::string, std::string_view> out;
    for (auto tok : tokens) {
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos) throw ParseError(line, "expected key=value, got '" + std::string(tok) + "'");
        const std::string key = lower(tok.substr(0, eq));
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; }))
            throw ParseError(line, "unknown key '" + key + "'");
        if (out.count(key)) throw ParseError(line, "duplicate key '" + key + "'");
        out[key] = tok.substr(eq + 1);
    }
    return out;
}

double value_at(std::string_view text, int line) {
    try {
        return parse_si(text);
    } catch (const InvalidArgument& e) {
        throw ParseError(line, e.what());
    }
}

RlcBranch parse_branch(std::span<const std::string_view> tokens, int line) {
    const auto kv = key_values(tokens, {"r", "l", "c"}, line);
    RlcBranch b;
    if (auto it = kv.find("r"); it != kv.end()) b.r = value_at(it->second, line);
    if (auto it = kv.find("l"); it != kv.end()) b.l = value_at(it->second, line);
    const auto c = kv.find("c");
    if (c == kv.end()) throw ParseError(line, "branch needs C=<value>");
    b.c = value_at(c->second, line);
    try {
        b.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(line, e.what());
    }
    return b;
}

RlcBranch take(std::map<std::string, BranchLine>& branches, const std::string& name, int topology_line) {
    const auto it = branches.find(name);
    if (it == branches.end()) throw ParseError(topology_line, "missing branch '" + name + "'");
    const RlcBranch b = it->second.value;
    branches.erase(it);
    return b;
}

}  // namespace

double parse_si(std::string_view text) {
    if (text.empty()) throw InvalidArgument("empty value");
    if (text.front() == '+') text.remove_prefix(1);
    double base = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), base);
    if (res.ec != std::errc{}) throw InvalidArgument("invalid number '" + std::string(text) + "'");
    const std::string_view number(text.data(), static_cast<std::size_t>(res.ptr - text.data()));
    const std::string suffix = lower(text.substr(number.size()));
    const int exponent = suffix_exponent(suffix);

    double value = base;
    if (exponent != 0) {
        if (number.find_first_of("eE") == std::string_view::npos) {
            // Re-read with the decimal exponent folded in, so "10m" rounds exactly like "10e-3".
            const std::string folded = std::string(number) + "e" + std::to_string(exponent);
            std::from_chars(folded.data(), folded.data() + folded.size(), value);
        } else {
            value = base * std::pow(10.0, exponent);
        }
    }
    if (!std::isfinite(value)) throw InvalidArgument("value '" + std::string(text) + "' is not finite");
    return value;
}

const char* topology_keyword(const Topology& t) {
    switch (t.index()) {
        case 0: return "two";
        case 1: return "three";
        default: return "three-symmetric";
    }
}

PdnSystem PdnConfig::system() const {
    if (!topology) throw InvalidArgument("config has no topology line");
    PdnSystem s{*topology, extras};
    s.validate();
    return s;
}

PdnConfig parse_config(std::string_view text) {
    PdnConfig cfg;
    std::optional<std::string> kind;
    int topology_line = 0;
    std::map<std::string, BranchLine> branches;
    std::map<std::string, int> extra_lines;
    bool seen_supply = false, seen_sweep = false;
    int line_no = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tokens = split_ws(line);
        if (tokens.empty()) continue;

        const std::string keyword = lower(tokens[0]);
        const std::span<const std::string_view> rest(tokens.data() + 1, tokens.size() - 1);
        if (keyword == "topology") {
            if (kind) throw ParseError(line_no, "duplicate topology");
            if (rest.size() != 1) throw ParseError(line_no, "topology takes one of two, three, three-symmetric");
            const std::string k = lower(rest[0]);
            if (k != "two" && k != "three" && k != "three-symmetric")
                throw ParseError(line_no, "unknown topology '" + k + "'");
            kind = k;
            topology_line = line_no;
        } else if (keyword == "branch" || keyword == "extra") {
            if (rest.empty()) throw ParseError(line_no, keyword + " needs a name");
            const std::string name = lower(rest[0]);
            if (name.find('=') != std::string::npos) throw ParseError(line_no, keyword + " needs a name");
            if (branches.count(name) || extra_lines.count(name))
                throw ParseError(line_no, "duplicate branch '" + name + "'");
            const RlcBranch b = parse_branch(rest.subspan(1), line_no);
            if (keyword == "branch") {
                branches[name] = {b, line_no};
            } else {
                if (cfg.extras.size() >= PdnSystem::kMaxExtraBranches)
                    throw ParseError(line_no, "too many extra branches");
                cfg.extras.push_back({name, b});
                extra_lines[name] = line_no;
            }
        } else if (keyword == "supply") {
            if (seen_supply) throw ParseError(line_no, "duplicate supply");
            seen_supply = true;
            const auto kv = key_values(rest, {"vdd", "ripple", "current"}, line_no);
            for (const char* k : {"vdd", "ripple", "current"})
                if (!kv.count(k)) throw ParseError(line_no, std::string("supply needs ") + k + "=<value>");
            TargetSpec t{value_at(kv.at("vdd"), line_no), value_at(kv.at("ripple"), line_no),
                         value_at(kv.at("current"), line_no)};
            try {
                t.validate();
            } catch (const InvalidArgument& e) {
                throw ParseError(line_no, e.what());
            }
            cfg.supply = t;
        } else if (keyword == "sweep") {
            if (seen_sweep) throw ParseError(line_no, "duplicate sweep");
            seen_sweep = true;
            const auto kv = key_values(rest, {"fmin", "fmax", "points"}, line_no);
            if (auto it = kv.find("fmin"); it != kv.end()) cfg.sweep.f_min = value_at(it->second, line_no);
            if (auto it = kv.find("fmax"); it != kv.end()) cfg.sweep.f_max = value_at(it->second, line_no);
            if (auto it = kv.find("points"); it != kv.end()) {
                const double p = value_at(it->second, line_no);
                if (p != std::floor(p) || p < 2 || p > 1e8) throw ParseError(line_no, "points must be an integer >= 2");
                cfg.sweep.points = static_cast<int>(p);
            }
        } else {
            throw ParseError(line_no, "unknown key '" + keyword + "'");
        }
    }

    if (!kind) {
        if (!branches.empty())
            throw ParseError(branches.begin()->second.line, "branch given without a topology line");
        if (!extra_lines.empty())
            throw ParseError(extra_lines.begin()->second, "extra given without a topology line");
        return cfg;
    }

    auto get = [&](const char* name) { return take(branches, name, topology_line); };
    if (*kind == "two") {
        TwoSupplyPdn p;
        p.z1 = get("z1");
        p.z12 = get("z12");
        p.z2 = get("z2");
        cfg.topology = p;
    } else if (*kind == "three") {
        ThreeSupplyPdn p;
        p.z1 = get("z1");
        p.z2 = get("z2");
        p.z3 = get("z3");
        p.z12 = get("z12");
        p.z23 = get("z23");
        p.z31 = get("z31");
        cfg.topology = p;
    } else {
        SymmetricThreeSupplyPdn p;
        p.z1 = get("z1");
        p.z2 = get("z2");
        p.z3 = get("z3");
        p.z0 = get("z0");
        cfg.topology = p;
    }
    if (!branches.empty()) {
        const auto& [name, bl] = *std::min_element(branches.begin(), branches.end(), [](const auto& a, const auto& b) {
            return a.second.line < b.second.line;
        });
        throw ParseError(bl.line, "branch '" + name + "' is not part of topology " + *kind);
    }
    return cfg;
}

std::string dump_config(const PdnConfig& cfg) {
    std::ostringstream os;
    auto branch = [&](const char* keyword, const std::string& name, const RlcBranch& b) {
        os << keyword << ' ' << name << " R=" << format_number(b.r) << " L=" << format_number(b.l)
           << " C=" << format_number(b.c) << '\n';
    };
    if (cfg.topology) {
        os << "topology " << topology_keyword(*cfg.topology) << '\n';
        const PdnSystem s{*cfg.topology, {}};
        for (const auto& name : topology_branch_names(*cfg.topology)) branch("branch", name, *find_branch(s, name));
    }
    for (const auto& e : cfg.extras) branch("extra", e.name, e.branch);
    if (cfg.supply)
        os << "supply vdd=" << format_number(cfg.supply->vdd) << " ripple=" << format_number(cfg.supply->ripple)
           << " current=" << format_number(cfg.supply->current) << '\n';
    if (cfg.sweep.f_min || cfg.sweep.f_max || cfg.sweep.points) {
        os << "sweep";
        if (cfg.sweep.f_min) os << " fmin=" << format_number(*cfg.sweep.f_min);
        if (cfg.sweep.f_max) os << " fmax=" << format_number(*cfg.sweep.f_max);
        if (cfg.sweep.points) os << " points=" << *cfg.sweep.points;
        os << '\n';
    }
    return os.str();
}

}  // namespace pdnz
