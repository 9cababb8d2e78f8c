#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <string>
#include <vector>

namespace gheat {

using Rational = boost::multiprecision::cpp_rational;

enum class Parity { even, odd };

/// Polynomial with exact rational coefficients and a single parity.
///
/// Coefficients of the other parity are always zero; mixing parities in a sum
/// throws. The zero polynomial is compatible with either parity.
class RationalPoly {
public:
    RationalPoly() = default;

    /// coeffs[k] is the coefficient of x^k. Throws DomainError if both parities
    /// have non-zero entries.
    explicit RationalPoly(std::vector<Rational> coeffs);

    static RationalPoly monomial(int degree, Rational coeff = 1);
    static RationalPoly constant(Rational value);

    Parity parity() const { return parity_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Rational coeff(int k) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool has_integer_coefficients() const;
    RationalPoly derivative() const;
    double operator()(double x) const;
    std::string to_string() const;

    RationalPoly& operator+=(const RationalPoly& rhs);
    RationalPoly& operator-=(const RationalPoly& rhs);
    RationalPoly& operator*=(const RationalPoly& rhs);
    RationalPoly& operator*=(const Rational& scalar);

    friend RationalPoly operator+(RationalPoly lhs, const RationalPoly& rhs) { return lhs += rhs; }
    friend RationalPoly operator-(RationalPoly lhs, const RationalPoly& rhs) { return lhs -= rhs; }
    friend RationalPoly operator*(RationalPoly lhs, const RationalPoly& rhs) { return lhs *= rhs; }
    friend RationalPoly operator*(RationalPoly lhs, const Rational& s) { return lhs *= s; }
    friend RationalPoly operator*(const Rational& s, RationalPoly rhs) { return rhs *= s; }
    friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    void normalize();

    std::vector<Rational> coeffs_;
    Parity parity_ = Parity::even;
};

/// Double-precision copy of a RationalPoly stored by parity.
///
/// Only the coefficients of the active parity are kept and evaluation runs
/// Horner's scheme in x².
class FloatPoly {
public:
    FloatPoly() = default;
    explicit FloatPoly(const RationalPoly& p);

    Parity parity() const { return parity_; }
    std::span<const double> packed() const { return packed_; }
    double operator()(double x) const;

private:
    std::vector<double> packed_;
    Parity parity_ = Parity::even;
};

} // namespace gheat
