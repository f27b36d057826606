#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace mxl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, std::string expected)
        : Error("syntax error at position " + std::to_string(position) + ": expected " + expected),
          position_(position), expected_(std::move(expected)) {}
    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

class EmptyPolynomial : public Error {
public:
    EmptyPolynomial() : Error("polynomial is identically zero") {}
};

class NoCompactFace : public Error {
public:
    NoCompactFace() : Error("Newton boundary has no compact 1-face") {}
};

class FaceNotFound : public Error {
public:
    using Error::Error;
};

class NonSemiholomorphic : public Error {
public:
    NonSemiholomorphic() : Error("loop polynomial depends on conj(u)") {}
};

/// Carries the parameter value where a continuation or certificate broke down.
class ParameterError : public Error {
public:
    ParameterError(const std::string& what, double t)
        : Error(what + " at t=" + std::to_string(t)), t_(t) {}
    double t() const { return t_; }

private:
    double t_;
};

class LeadingCoefficientVanishes : public ParameterError {
public:
    explicit LeadingCoefficientVanishes(double t)
        : ParameterError("leading coefficient vanishes", t) {}
};

class StrandCollision : public ParameterError {
public:
    explicit StrandCollision(double t) : ParameterError("strands collide", t) {}
};

class TracingFailure : public ParameterError {
public:
    explicit TracingFailure(double t) : ParameterError("level-set continuation did not close", t) {}
};

class NonGenericProjection : public Error {
public:
    NonGenericProjection() : Error("projection stays non-generic after retries") {}
};

class FidelityLoss : public Error {
public:
    using Error::Error;
};

class NotAffine : public Error {
public:
    explicit NotAffine(std::size_t index)
        : Error("braid " + std::to_string(index) + " passes through 0"), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class DisjointnessFailure : public Error {
public:
    DisjointnessFailure() : Error("no scale separates the nested braids") {}
};

class SingularZeroSet : public Error {
public:
    explicit SingularZeroSet(std::complex<double> z, double angle)
        : Error("zero set is singular near z=(" + std::to_string(z.real()) + "," +
                std::to_string(z.imag()) + "), angle=" + std::to_string(angle)),
          z_(z), angle_(angle) {}
    std::complex<double> z() const { return z_; }
    double angle() const { return angle_; }

private:
    std::complex<double> z_;
    double angle_;
};

class CoreViolation : public Error {
public:
    explicit CoreViolation(std::size_t index)
        : Error("link piece " + std::to_string(index) + " meets the core"), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class PreconditionFailed : public Error {
public:
    PreconditionFailed(std::string which, std::string status)
        : Error("precondition failed: " + which + " is " + status),
          which_(std::move(which)), status_(std::move(status)) {}
    const std::string& which() const { return which_; }
    const std::string& status() const { return status_; }

private:
    std::string which_;
    std::string status_;
};

class ExponentTooLow : public Error {
public:
    ExponentTooLow(std::string which, std::string bound)
        : Error(which + " exponent must exceed " + bound), which_(std::move(which)),
          bound_(std::move(bound)) {}
    const std::string& which() const { return which_; }
    const std::string& bound() const { return bound_; }

private:
    std::string which_;
    std::string bound_;
};

class NotPFibered : public Error {
public:
    NotPFibered(std::size_t index, double min_derivative)
        : Error("braid " + std::to_string(index) + " is not P-fibered (min |d arg| = " +
                std::to_string(min_derivative) + ")"),
          index_(index), min_derivative_(min_derivative) {}
    std::size_t index() const { return index_; }
    double min_derivative() const { return min_derivative_; }

private:
    std::size_t index_;
    double min_derivative_;
};

class SearchExhausted : public Error {
public:
    SearchExhausted(std::size_t level, long max_r)
        : Error("no admissible exponent r for level " + std::to_string(level) + " up to " +
                std::to_string(max_r)),
          level_(level), max_r_(max_r) {}
    std::size_t level() const { return level_; }
    long max_r() const { return max_r_; }

private:
    std::size_t level_;
    long max_r_;
};

class IntegralityFailure : public Error {
public:
    using Error::Error;
};

class Mismatch : public Error {
public:
    using Error::Error;
};

}  // namespace mxl
