#pragma once

// Real-coefficient polynomials and rational functions in the Laplace
// variable s, evaluated on the imaginary axis s = j*2*pi*f.
//
// Coefficients are held in extended precision (long double). Composed PDN
// impedances reach degree 12 and more; evaluating the expanded form near a
// branch resonance loses several digits to cancellation, and the extra
// precision keeps the closed form well inside 1e-8 of the nodal oracle.

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace pdnz {

using Real = long double;
using ComplexValue = std::complex<double>;

/// Polynomial in s with ascending coefficients: coeffs()[k] multiplies s^k.
///
/// The highest-power coefficient is nonzero, except for the zero polynomial,
/// which is stored as the single coefficient 0 and has degree() == -1.
class Polynomial {
public:
    Polynomial() : coeffs_{0} {}
    Polynomial(std::initializer_list<Real> coeffs);
    explicit Polynomial(std::vector<Real> coeffs);

    static Polynomial zero() { return Polynomial{}; }
    static Polynomial constant(Real c) { return Polynomial{c}; }
    /// c * s^power
    static Polynomial monomial(Real c, int power);

    const std::vector<Real>& coeffs() const noexcept { return coeffs_; }
    Real operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Real{0}; }

    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0; }
    int degree() const noexcept { return is_zero() ? -1 : static_cast<int>(coeffs_.size()) - 1; }
    Real leading() const noexcept { return coeffs_.back(); }
    Real max_abs_coeff() const noexcept;

    /// Number of exactly-zero low-order coefficients (multiplicity of the root at s = 0).
    int low_order_zeros() const noexcept;

    /// p(s) for complex s, extended precision.
    std::complex<Real> operator()(std::complex<Real> s) const;
    /// p(j*omega), split into even and odd parts to keep the argument exact.
    std::complex<Real> eval_imag_axis(Real omega) const;

    /// Same polynomial in the variable s' = s / scale: coefficient k becomes a_k * scale^k.
    Polynomial rescaled(Real scale) const;

    Polynomial operator-() const;
    Polynomial scaled(Real factor) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void normalize();
    std::vector<Real> coeffs_;
};

Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);

/// num(s) / den(s). Canonical form: den is nonzero with positive leading
/// coefficient, and common factors of s (exact zero low-order coefficients in
/// both) are removed. No other cancellation is ever performed.
class RationalFunction {
public:
    /// Throws IdenticallyZeroDenominator if den is the zero polynomial.
    RationalFunction(Polynomial num, Polynomial den);
    explicit RationalFunction(Polynomial num) : RationalFunction(std::move(num), Polynomial{1}) {}

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }

    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

private:
    Polynomial num_;
    Polynomial den_;
};

RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b);
RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b);
/// a / b; throws IdenticallyZeroDenominator if b is identically zero.
RationalFunction rf_div(const RationalFunction& a, const RationalFunction& b);
RationalFunction rf_scale(const RationalFunction& a, Real factor);
/// a*b / (a + b), computed as na*nb / (na*db + nb*da).
/// Throws IdenticallyZeroDenominator when a + b is identically zero.
RationalFunction rf_parallel(const RationalFunction& a, const RationalFunction& b);

/// f(j*2*pi*freq_hz). Throws EvaluationSingular when the denominator vanishes
/// relative to its coefficient scale or the result is not finite, and
/// InvalidArgument for non-positive or non-finite frequencies.
ComplexValue rf_eval(const RationalFunction& f, double freq_hz);

/// Root set of a real polynomial computed in the scaled plane s' = s / scale.
struct RootSet {
    std::vector<std::complex<double>> roots;  // scaled plane
    std::vector<double> residual;             // |p(root)| of the scaled polynomial
    double scale = 1.0;                       // omega_c, rad/s
    bool converged = false;
    int iterations = 0;

    /// Root in rad/s.
    std::complex<double> unscaled(std::size_t i) const { return roots[i] * scale; }
};

/// All roots of p via Aberth-Ehrlich iteration on p(omega_c * s'), with
/// omega_c = 2*pi*scale_hint_hz. Exact zero low-order coefficients contribute
/// exact roots at 0. Non-convergence after 500 sweeps is reported through
/// RootSet::converged rather than thrown.
RootSet rf_roots(const Polynomial& p, double scale_hint_hz);

/// Pole/zero pairs closer than rel_tol relative distance (|z - p| <= rel_tol * |p|).
struct CancelledPair {
    std::size_t zero_index;
    std::size_t pole_index;
    double relative_distance;
};

std::vector<CancelledPair> find_cancellations(const RootSet& zeros, const RootSet& poles,
                                              double rel_tol = 1e-6);

}  // namespace pdnz
