#include "pdnz/ratfun.hpp"

#include "pdnz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pdnz {

Polynomial::Polynomial(std::initializer_list<Real> coeffs) : coeffs_(coeffs) {
    normalize();
}

Polynomial::Polynomial(std::vector<Real> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

Polynomial Polynomial::monomial(Real c, int power) {
    std::vector<Real> v(static_cast<std::size_t>(power) + 1, Real{0});
    v.back() = c;
    return Polynomial(std::move(v));
}

void Polynomial::normalize() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0);
}

Real Polynomial::max_abs_coeff() const noexcept {
    Real m = 0;
    for (Real c : coeffs_) m = std::max(m, std::fabs(c));
    return m;
}

int Polynomial::low_order_zeros() const noexcept {
    if (is_zero()) return 0;
    int k = 0;
    while (coeffs_[static_cast<std::size_t>(k)] == 0) ++k;
    return k;
}

std::complex<Real> Polynomial::operator()(std::complex<Real> s) const {
    std::complex<Real> acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

std::complex<Real> Polynomial::eval_imag_axis(Real omega) const {
    // p(jw) = E(-w^2) + j*w*O(-w^2) with E, O the even and odd coefficient sequences.
    const Real y = -omega * omega;
    Real even = 0;
    Real odd = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        if (k % 2 == 0)
            even = even * y + coeffs_[k];
        else
            odd = odd * y + coeffs_[k];
    }
    return {even, omega * odd};
}

Polynomial Polynomial::rescaled(Real scale) const {
    std::vector<Real> v(coeffs_);
    Real f = 1;
    for (auto& c : v) {
        c *= f;
        f *= scale;
    }
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-() const {
    return scaled(-1);
}

Polynomial Polynomial::scaled(Real factor) const {
    std::vector<Real> v(coeffs_);
    for (auto& c : v) c *= factor;
    return Polynomial(std::move(v));
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial::zero();
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Real> out(x.size() + y.size() - 1, Real{0});
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    return Polynomial(std::move(out));
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Real> out(std::max(x.size(), y.size()), Real{0});
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
    return Polynomial(std::move(out));
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    return poly_add(a, -b);
}

namespace {

Polynomial drop_low(const Polynomial& p, int k) {
    if (k == 0) return p;
    const auto& c = p.coeffs();
    return Polynomial(std::vector<Real>(c.begin() + k, c.end()));
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw IdenticallyZeroDenominator();
    if (num_.is_zero()) {
        den_ = Polynomial{1};
        return;
    }
    const int common = std::min(num_.low_order_zeros(), den_.low_order_zeros());
    if (common > 0) {
        num_ = drop_low(num_, common);
        den_ = drop_low(den_, common);
    }
    if (den_.leading() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den() == b.den()) return {poly_add(a.num(), b.num()), a.den()};
    return {poly_add(poly_mul(a.num(), b.den()), poly_mul(b.num(), a.den())), poly_mul(a.den(), b.den())};
}

RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b) {
    return {poly_mul(a.num(), b.num()), poly_mul(a.den(), b.den())};
}

RationalFunction rf_div(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw IdenticallyZeroDenominator();
    return {poly_mul(a.num(), b.den()), poly_mul(a.den(), b.num())};
}

RationalFunction rf_scale(const RationalFunction& a, Real factor) {
    return {a.num().scaled(factor), a.den()};
}

RationalFunction rf_parallel(const RationalFunction& a, const RationalFunction& b) {
    auto den = poly_add(poly_mul(a.num(), b.den()), poly_mul(b.num(), a.den()));
    if (den.is_zero()) throw IdenticallyZeroDenominator();
    return {poly_mul(a.num(), b.num()), std::move(den)};
}

ComplexValue rf_eval(const RationalFunction& f, double freq_hz) {
    if (!(freq_hz > 0) || !std::isfinite(freq_hz)) throw InvalidArgument("frequency must be positive and finite");
    const Real omega = 2 * std::numbers::pi_v<Real> * static_cast<Real>(freq_hz);
    const auto den = f.den().eval_imag_axis(omega);
    const Real den_mag = std::abs(den);
    const Real floor = 1e-300L * f.den().max_abs_coeff() * std::pow(omega, static_cast<Real>(f.den().degree()));
    if (!(den_mag > floor)) throw EvaluationSingular("denominator vanishes at f = " + std::to_string(freq_hz) + " Hz");
    const auto num = f.num().eval_imag_axis(omega);
    const auto z = num / den;
    const ComplexValue out(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
        throw EvaluationSingular("non-finite impedance at f = " + std::to_string(freq_hz) + " Hz");
    return out;
}

}  // namespace pdnz
