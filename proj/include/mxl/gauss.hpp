#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace mxl {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Exact complex number a + b i with a, b rational.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long value) : re_(value), im_(0) {}
    GaussRational(Rational re, Rational im = 0);

    static GaussRational imaginary_unit() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussRational conj() const { return {re_, -im_}; }
    /// |z|^2, exact.
    Rational norm() const { return re_ * re_ + im_ * im_; }
    Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussRational operator-() const { return {-re_, -im_}; }
    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);
    /// Throws std::domain_error on division by zero.
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Literal form accepted by the expression parser, e.g. "3/4", "2i", "(2+3i)".
    std::string to_string() const;

private:
    Rational re_{0};
    Rational im_{0};
};

/// x rounded to the nearest multiple of 2^-bits, as an exact rational.
Rational dyadic_round(double x, int bits);
GaussRational dyadic_round(Complex z, int bits);

std::string rational_to_string(const Rational& q);

}  // namespace mxl
