#include "pdnz/coefficients.hpp"

#include "pdnz/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace pdnz {

namespace {

struct Rlc {
    Real r, l, g;  // g = 1/C
};

Rlc ext(const RlcBranch& b) {
    return {static_cast<Real>(b.r), static_cast<Real>(b.l), Real{1} / static_cast<Real>(b.c)};
}

// s * (R + sL + 1/(sC)) = L s^2 + R s + 1/C
Polynomial s_times(Real r, Real l, Real g) {
    return Polynomial{g, r, l};
}

std::vector<Real> padded(const Polynomial& p, std::size_t size) {
    std::vector<Real> out(size, Real{0});
    const auto& c = p.coeffs();
    for (std::size_t k = 0; k < c.size() && k < size; ++k) out[k] = c[k];
    return out;
}

}  // namespace

PrimedBranch primed(const RlcBranch& zi, const RlcBranch& z0) {
    const auto i = ext(zi);
    const auto o = ext(z0);
    return {3 * i.r + o.r, 3 * i.l + o.l, 3 * i.g + o.g};
}

CoefficientSet eq2_coefficients_paper(const TwoSupplyPdn& p, Listing listing) {
    const auto [r1, l1, g1] = ext(p.z1);
    const auto [r12, l12, g12] = ext(p.z12);
    const auto [r2, l2, g2] = ext(p.z2);
    const Real c1 = p.z1.c, c12 = p.z12.c, c2 = p.z2.c;
    const bool verbatim = listing == Listing::as_printed;

    CoefficientSet out;
    out.num.resize(5);
    out.den.resize(4);
    out.num[4] = l1 * (l12 + l2);
    out.num[3] = r1 * l12 + r12 * l1 + r1 * l2 + r2 * l1;
    out.num[2] = r1 * r12 + r1 * r2 + l1 * g12 + l12 * g1 + l1 * g2 + (verbatim ? l2 * c1 : l2 * g1);
    out.num[1] = r1 * g2 + r2 * g1 + r1 * g12 + r12 * g1;
    if (verbatim) {
        // C3 is not a component of the two-supply network.
        const Real c3 = std::numeric_limits<Real>::quiet_NaN();
        out.num[0] = (c12 + c2) / (c1 * c2 * c3);
    } else {
        out.num[0] = (c12 + c2) / (c1 * c12 * c2);
    }
    out.den[3] = l1 + l12 + l2;
    out.den[2] = r1 + r12 + r2;
    out.den[1] = g1 + g12 + g2;
    out.den[0] = 0;
    return out;
}

CoefficientSet eq2_expanded(const TwoSupplyPdn& p) {
    const auto z1 = ext(p.z1), z12 = ext(p.z12), z2 = ext(p.z2);
    const auto sz1 = s_times(z1.r, z1.l, z1.g);
    const auto sz12 = s_times(z12.r, z12.l, z12.g);
    const auto sz2 = s_times(z2.r, z2.l, z2.g);
    const auto num = poly_mul(sz1, poly_add(sz12, sz2));
    const auto den = poly_mul(Polynomial{0, 1}, poly_add(poly_add(sz1, sz12), sz2));
    return {padded(num, 5), padded(den, 4)};
}

CoefficientSet eq4_coefficients_paper(const SymmetricThreeSupplyPdn& p, Listing listing) {
    const auto [r1, l1, g1] = ext(p.z1);
    const auto [r0, l0, g0] = ext(p.z0);
    const auto q1 = primed(p.z1, p.z0);
    const auto q2 = primed(p.z2, p.z0);
    const auto q3 = primed(p.z3, p.z0);
    const bool verbatim = listing == Listing::as_printed;

    const Real sl = q2.l + q3.l;
    const Real sr = q2.r + q3.r;
    const Real sg = q2.inv_c + q3.inv_c;

    // Z1 Z0 (Z'2 + Z'3) part, term by term as listed.
    Real t[7];
    t[6] = l1 * l0 * sl;
    t[5] = r1 * l0 * sl + l1 * r0 * sl + l1 * l0 * sr;
    t[4] = r0 * r1 * sl + r1 * l0 * sr + l1 * r0 * sr + l1 * l0 * sg + l1 * sl * g0 +
           l0 * sl * (verbatim ? g0 : g1);
    t[3] = r0 * r1 * sr + r1 * l0 * sg + r1 * g0 * sl + l1 * r0 * sg + l1 * g0 * sr + r0 * g1 * sl +
           l0 * g1 * sr;
    t[2] = r0 * r1 * sg + r1 * sr * g0 + l1 * g0 * sg + l0 * g1 * sg + r0 * g1 * sr + sl * g1 * g0;
    t[1] = r1 * g0 * sg + r0 * g1 * sg + sr * g1 * g0;
    t[0] = g0 * g1 * sg;

    // Z'2 Z'3 product.
    Real q[5];
    q[4] = q2.l * q3.l;
    q[3] = q2.r * q3.l + q2.l * q3.r;
    q[2] = q2.r * q3.r + q2.l * q3.inv_c + q3.l * q2.inv_c;
    q[1] = q2.r * q3.inv_c + q3.r * q2.inv_c;
    q[0] = q3.inv_c * q2.inv_c;

    CoefficientSet out;
    out.num.assign(7, Real{0});
    for (int k = 0; k <= 6; ++k) out.num[static_cast<std::size_t>(k)] = t[k];
    if (verbatim) {
        const Real printed_q3 = q2.r * q3.l + q2.l * q3.l;
        out.num[5] += q[4];
        out.num[4] += printed_q3;
        out.num[3] += q[2];
        out.num[2] += q[1];
        out.num[1] += q[0];
    } else {
        // Z1 * Z'2 Z'3, i.e. (L1 s^2 + R1 s + 1/C1) times the q polynomial.
        for (int k = 0; k <= 6; ++k) {
            Real add = 0;
            if (k >= 2 && k - 2 <= 4) add += l1 * q[k - 2];
            if (k >= 1 && k - 1 <= 4) add += r1 * q[k - 1];
            if (k <= 4) add += g1 * q[k];
            out.num[static_cast<std::size_t>(k)] += add;
        }
    }

    out.den.assign(6, Real{0});
    out.den[5] = q2.l * q3.l + q1.l * sl;
    out.den[4] = q2.r * q3.l + q2.l * q3.r + q1.r * sl + q1.l * sr;
    out.den[3] = sl * q1.inv_c + q2.r * q3.r + q2.l * q3.inv_c + q3.l * q2.inv_c + q1.r * sr + q1.l * sg;
    out.den[2] = q1.r * sg + sr * q1.inv_c + q2.r * q3.inv_c + q3.r * q2.inv_c;
    out.den[1] = q1.inv_c * sg + q3.inv_c * q2.inv_c;
    out.den[0] = 0;
    return out;
}

CoefficientSet eq4_expanded(const SymmetricThreeSupplyPdn& p) {
    const auto z1 = ext(p.z1), z0 = ext(p.z0);
    const auto q1 = primed(p.z1, p.z0), q2 = primed(p.z2, p.z0), q3 = primed(p.z3, p.z0);
    const auto sz1 = s_times(z1.r, z1.l, z1.g);
    const auto sz0 = s_times(z0.r, z0.l, z0.g);
    const auto sq1 = s_times(q1.r, q1.l, q1.inv_c);
    const auto sq2 = s_times(q2.r, q2.l, q2.inv_c);
    const auto sq3 = s_times(q3.r, q3.l, q3.inv_c);
    const auto pair = poly_mul(sq2, sq3);
    const auto sum = poly_add(sq2, sq3);
    const auto num = poly_mul(sz1, poly_add(poly_mul(sz0, sum), pair));
    const auto den = poly_mul(Polynomial{0, 1}, poly_add(poly_mul(sq1, sum), pair));
    return {padded(num, 7), padded(den, 6)};
}

bool CoefficientReport::all_match() const {
    for (const auto& t : terms)
        if (t.status != TermStatus::match) return false;
    return true;
}

std::vector<std::string> CoefficientReport::mismatched_terms() const {
    std::vector<std::string> out;
    for (const auto& t : terms)
        if (t.status == TermStatus::mismatch) out.push_back(t.name);
    return out;
}

CoefficientReport compare_coefficients(const CoefficientSet& listed, const CoefficientSet& expanded, double rel_tol) {
    CoefficientReport report;
    auto add_terms = [&](const std::vector<Real>& a, const std::vector<Real>& b, char prefix, std::size_t first) {
        const std::size_t n = std::max(a.size(), b.size());
        for (std::size_t k = first; k < n; ++k) {
            const Real x = k < a.size() ? a[k] : Real{0};
            const Real y = k < b.size() ? b[k] : Real{0};
            double rel;
            if (std::isnan(x) || std::isnan(y))
                rel = std::numeric_limits<double>::quiet_NaN();
            else if (y == 0)
                rel = x == 0 ? 0.0 : std::numeric_limits<double>::infinity();
            else
                rel = static_cast<double>(std::fabs(x - y) / std::fabs(y));
            const bool ok = rel <= rel_tol;  // false for NaN
            report.terms.push_back({std::string(1, prefix) + std::to_string(k), x, y, rel,
                                    ok ? TermStatus::match : TermStatus::mismatch, {}});
        }
    };
    add_terms(listed.num, expanded.num, 'a', 0);
    add_terms(listed.den, expanded.den, 'b', 1);
    return report;
}

namespace {

void annotate(CoefficientReport& r, const std::string& term, const std::string& note) {
    for (auto& t : r.terms)
        if (t.name == term && t.status == TermStatus::mismatch) t.note = note;
}

}  // namespace

CoefficientReport eq2_report(const TwoSupplyPdn& p, Listing listing) {
    auto r = compare_coefficients(eq2_coefficients_paper(p, listing), eq2_expanded(p));
    annotate(r, "a2", "printed term (L2 C1) is dimensionally inconsistent; expected L2/C1");
    annotate(r, "a0", "printed denominator C1 C2 C3 references undefined C3; expected C1 C12 C2");
    return r;
}

CoefficientReport eq4_report(const SymmetricThreeSupplyPdn& p, Listing listing) {
    auto r = compare_coefficients(eq4_coefficients_paper(p, listing), eq4_expanded(p));
    for (const char* t : {"a6", "a5", "a3", "a2", "a1", "a0"})
        annotate(r, t, "printed Z'2 Z'3 product lacks the Z1 factor");
    annotate(r, "a4", "printed Z'2 Z'3 product lacks the Z1 factor; L'2 L'3 should be L'2 R'3; L0(L'2+L'3)/C0 should be /C1");
    return r;
}

ComplexValue eq3_printed_impedance(const ThreeSupplyPdn& p, double freq_hz) {
    if (!(freq_hz > 0) || !std::isfinite(freq_hz)) throw InvalidArgument("frequency must be positive and finite");
    const ComplexValue s(0.0, 2.0 * std::numbers::pi * freq_hz);
    auto z = [&](const RlcBranch& b) { return b.r + s * b.l + 1.0 / (s * b.c); };
    const auto z1 = z(p.z1), z2 = z(p.z2), z3 = z(p.z3);
    const auto z12 = z(p.z12), z23 = z(p.z23), z31 = z(p.z31);
    const auto z13 = z31;
    const auto zu = z12 + z23 + z31;
    const auto bracket = (z2 + z3) * zu + z23 * z12 + z31 * z23;
    const auto num = z1 * z2 * z3 * zu * zu + z1 * zu * z23 * (z2 * z31 + z3 * z12) + z1 * z23 * z23 * z12 * z13 +
                     z1 * z12 * z31 * bracket;
    const auto den = z2 * z3 * zu * zu + zu * z23 * (z2 * z31 + z3 * z12) + z23 * z23 * z12 * z31 +
                     (z1 * zu + z12 * z31) * bracket;
    if (den == ComplexValue{}) throw EvaluationSingular("printed three-supply expression has a zero denominator");
    return num / den;
}

}  // namespace pdnz
