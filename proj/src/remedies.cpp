#include "pdnz/analysis.hpp"

#include <algorithm>
#include <cctype>

namespace pdnz {

PdnSystem add_parallel_decap(const PdnSystem& system, const RlcBranch& b, std::string name) {
    if (system.extras.size() >= PdnSystem::kMaxExtraBranches)
        throw TooManyBranches("system already has the maximum number of extra branches");
    b.validate();
    PdnSystem out = system;
    if (name.empty()) {
        int k = static_cast<int>(out.extras.size()) + 1;
        while (find_branch(out, "x" + std::to_string(k))) ++k;
        name = "x" + std::to_string(k);
    }
    if (find_branch(out, name)) throw InvalidArgument("branch name '" + name + "' already in use");
    out.extras.push_back({std::move(name), b});
    return out;
}

PdnSystem with_param(const PdnSystem& system, const std::string& param, double value) {
    const auto dot = param.rfind('.');
    if (dot == std::string::npos || dot + 2 != param.size())
        throw UnknownParam("parameter must look like <branch>.<R|L|C>, got '" + param + "'");
    std::string name = param.substr(0, dot);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    const char field = static_cast<char>(std::tolower(static_cast<unsigned char>(param[dot + 1])));

    PdnSystem out = system;
    RlcBranch* b = find_branch(out, name);
    if (!b) throw UnknownParam("no branch named '" + name + "'");
    switch (field) {
        case 'r': b->r = value; break;
        case 'l': b->l = value; break;
        case 'c': b->c = value; break;
        default: throw UnknownParam("unknown branch field '" + std::string(1, param[dot + 1]) + "'");
    }
    out.validate();
    return out;
}

std::vector<ParamSweepEntry> param_sweep(const PdnSystem& system, const std::string& param,
                                         std::span<const double> values, const SweepGrid& grid, Source source,
                                         unsigned threads) {
    for (double v : values)
        if (!(v > 0)) throw InvalidArgument("parameter values must be positive");
    std::vector<PdnSystem> variants;
    for (double v : values) variants.push_back(with_param(system, param, v));

    std::vector<ParamSweepEntry> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto s = sweep(variants[i], grid, source, threads);
        auto peaks = polish_peaks(variants[i], s, detect_peaks(s));
        out.push_back({values[i], std::move(s), std::move(peaks)});
    }
    return out;
}

}  // namespace pdnz
