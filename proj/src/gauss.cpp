#include "mxl/gauss.hpp"

#include <cmath>
#include <stdexcept>

namespace mxl {

GaussRational::GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    Rational n = o.norm();
    Rational re = (re_ * o.re_ + im_ * o.im_) / n;
    Rational im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

namespace {

std::string imag_literal(const Rational& b) {
    // b is positive here
    if (b == 1) return "i";
    if (b.get_den() == 1) return b.get_str() + "i";
    return b.get_str() + "*i";
}

}  // namespace

std::string GaussRational::to_string() const {
    if (is_real()) return rational_to_string(re_);
    if (sgn(re_) == 0) {
        if (sgn(im_) > 0) return "(" + imag_literal(im_) + ")";
        return "(-" + imag_literal(-im_) + ")";
    }
    std::string out = "(" + rational_to_string(re_);
    out += sgn(im_) > 0 ? "+" + imag_literal(im_) : "-" + imag_literal(-im_);
    return out + ")";
}

Rational dyadic_round(double x, int bits) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite value");
    double scaled = std::nearbyint(std::ldexp(x, bits));
    mpz_class num(scaled);
    mpz_class den = 1;
    den <<= bits;
    Rational q(num, den);
    q.canonicalize();
    return q;
}

GaussRational dyadic_round(Complex z, int bits) {
    return {dyadic_round(z.real(), bits), dyadic_round(z.imag(), bits)};
}

}  // namespace mxl
