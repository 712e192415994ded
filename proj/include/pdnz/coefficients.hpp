#pragma once

// Published closed-form coefficient listings for the two-supply and the
// symmetric three-supply impedance, plus the independent product expansions
// they are checked against.
//
// Two-supply:   Z = (a4 s^4 + ... + a0) / (b3 s^3 + b2 s^2 + b1 s)
// Symmetric:    Z = (a6 s^6 + ... + a0) / (b5 s^5 + ... + b1 s)
// with primed branches R'i = 3Ri + R0, L'i = 3Li + L0, 1/C'i = 3/Ci + 1/C0.
//
// The printed listings carry transcription errors. Listing::corrected fixes
// them; Listing::as_printed reproduces the text verbatim so the comparison
// report can point at each anomaly:
//   two-supply a2: "(L2 C1)" is read as L2/C1
//   two-supply a0: "(C12 + C2)/C1 C2 C3" names a C3 that does not exist in
//                  the two-supply network; corrected to C1 C12 C2
//   symmetric numerator: printed as Z1 Z0 (Z'2 + Z'3) + s Z'2 Z'3, i.e. the
//                  Z'2 Z'3 product is missing its Z1 factor; a4 also prints
//                  L'2 L'3 for L'2 R'3 and L0 (L'2 + L'3)/C0 for .../C1.
//                  The denominator listing is correct.

#include "pdnz/pdn_model.hpp"
#include "pdnz/ratfun.hpp"

#include <string>
#include <vector>

namespace pdnz {

/// Ascending coefficients; den[0] is the structural zero b0.
struct CoefficientSet {
    std::vector<Real> num;
    std::vector<Real> den;
};

struct PrimedBranch {
    Real r;
    Real l;
    Real inv_c;
};

/// (3 Zi + Z0) expressed as a series RLC.
PrimedBranch primed(const RlcBranch& zi, const RlcBranch& z0);

CoefficientSet eq2_coefficients_paper(const TwoSupplyPdn& p, Listing listing = Listing::corrected);
/// (sZ1)(sZ12 + sZ2) / (s (sZ1 + sZ12 + sZ2)) multiplied out with poly_mul.
CoefficientSet eq2_expanded(const TwoSupplyPdn& p);

CoefficientSet eq4_coefficients_paper(const SymmetricThreeSupplyPdn& p, Listing listing = Listing::corrected);
/// (sZ1)[(sZ0)(sZ'2 + sZ'3) + (sZ'2)(sZ'3)] / (s [(sZ'1)(sZ'2 + sZ'3) + (sZ'2)(sZ'3)]).
CoefficientSet eq4_expanded(const SymmetricThreeSupplyPdn& p);

enum class TermStatus { match, mismatch };

struct TermReport {
    std::string name;  // "a0".."a6", "b1".."b5"
    Real listed;
    Real expanded;
    double relative_error;
    TermStatus status;
    std::string note;
};

struct CoefficientReport {
    std::vector<TermReport> terms;

    bool all_match() const;
    std::vector<std::string> mismatched_terms() const;
};

/// Term-by-term comparison; b0 is skipped (structurally zero on both sides).
CoefficientReport compare_coefficients(const CoefficientSet& listed, const CoefficientSet& expanded,
                                       double rel_tol = 1e-12);

CoefficientReport eq2_report(const TwoSupplyPdn& p, Listing listing);
CoefficientReport eq4_report(const SymmetricThreeSupplyPdn& p, Listing listing);

/// Direct numeric evaluation of the printed three-supply expression with the
/// undefined symbol Z_U read as Z12 + Z23 + Z31 (and Z13 as Z31).
ComplexValue eq3_printed_impedance(const ThreeSupplyPdn& p, double freq_hz);

}  // namespace pdnz
