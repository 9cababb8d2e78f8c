#include "gheat/rational_poly.hpp"

#include "gheat/errors.hpp"

#include <sstream>

namespace gheat {

RationalPoly::RationalPoly(std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs))
{
    normalize();
    bool seen_even = false;
    bool seen_odd = false;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] != 0) {
            (k % 2 == 0 ? seen_even : seen_odd) = true;
        }
    }
    if (seen_even && seen_odd) {
        throw DomainError("RationalPoly: coefficients of mixed parity");
    }
    parity_ = seen_odd ? Parity::odd : Parity::even;
}

RationalPoly RationalPoly::monomial(int degree, Rational coeff)
{
    std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
    c.back() = std::move(coeff);
    return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::constant(Rational value)
{
    return monomial(0, std::move(value));
}

void RationalPoly::normalize()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

Rational RationalPoly::coeff(int k) const
{
    if (k < 0 || k > degree()) {
        return 0;
    }
    return coeffs_[static_cast<std::size_t>(k)];
}

bool RationalPoly::has_integer_coefficients() const
{
    for (const auto& c : coeffs_) {
        if (boost::multiprecision::denominator(c) != 1) {
            return false;
        }
    }
    return true;
}

RationalPoly RationalPoly::derivative() const
{
    if (coeffs_.size() <= 1) {
        return {};
    }
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d[k - 1] = coeffs_[k] * static_cast<long>(k);
    }
    return RationalPoly(std::move(d));
}

double RationalPoly::operator()(double x) const
{
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + static_cast<double>(*it);
    }
    return acc;
}

std::string RationalPoly::to_string() const
{
    if (is_zero()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) {
            continue;
        }
        if (!first) {
            out << (c < 0 ? " - " : " + ");
        } else if (c < 0) {
            out << "-";
        }
        const Rational mag = c < 0 ? Rational(-c) : c;
        if (mag != 1 || k == 0) {
            out << mag;
        }
        if (k >= 1) {
            out << "x";
        }
        if (k >= 2) {
            out << "^" << k;
        }
        first = false;
    }
    return out.str();
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& rhs)
{
    if (!is_zero() && !rhs.is_zero() && parity_ != rhs.parity_) {
        throw DomainError("RationalPoly: sum of polynomials with different parity");
    }
    if (is_zero()) {
        parity_ = rhs.parity_;
    }
    if (coeffs_.size() < rhs.coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size());
    }
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
        coeffs_[k] += rhs.coeffs_[k];
    }
    normalize();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& rhs)
{
    return *this += rhs * Rational(-1);
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& rhs)
{
    if (is_zero() || rhs.is_zero()) {
        *this = RationalPoly();
        return *this;
    }
    std::vector<Rational> prod(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    const bool odd = (parity_ == Parity::odd) != (rhs.parity_ == Parity::odd);
    coeffs_ = std::move(prod);
    normalize();
    parity_ = odd ? Parity::odd : Parity::even;
    return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& scalar)
{
    for (auto& c : coeffs_) {
        c *= scalar;
    }
    normalize();
    return *this;
}

FloatPoly::FloatPoly(const RationalPoly& p)
    : parity_(p.parity())
{
    const int first = parity_ == Parity::odd ? 1 : 0;
    for (int k = first; k <= p.degree(); k += 2) {
        packed_.push_back(static_cast<double>(p.coeff(k)));
    }
}

double FloatPoly::operator()(double x) const
{
    const double x2 = x * x;
    double acc = 0.0;
    for (auto it = packed_.rbegin(); it != packed_.rend(); ++it) {
        acc = acc * x2 + *it;
    }
    return parity_ == Parity::odd ? acc * x : acc;
}

} // namespace gheat
