#pragma once

#include "mxl/gauss.hpp"

#include <map>
#include <utility>
#include <vector>

namespace mxl {

/// Laurent polynomial in e^{it}: frequency -> exact coefficient.
class TrigPoly {
public:
    using CoeffMap = std::map<int, GaussRational>;

    TrigPoly() = default;
    static TrigPoly constant(const GaussRational& c) { return monomial(0, c); }
    static TrigPoly monomial(int freq, const GaussRational& c);

    const CoeffMap& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    void add(int freq, const GaussRational& c);
    GaussRational coefficient(int freq) const;

    int min_freq() const;
    int max_freq() const;
    int max_abs_freq() const;
    /// Sum of coefficient moduli; bounds |F(t)|.
    double l1_norm() const;
    /// Sum of |k| |c_k|; Lipschitz constant of F.
    double lipschitz() const;

    Complex operator()(double t) const;
    /// d/dt, exact.
    TrigPoly derivative() const;
    /// Conjugate function: t -> conj(F(t)).
    TrigPoly conj() const;
    /// F(n t).
    TrigPoly scaled(int n) const;
    /// e^{i shift t} F(t).
    TrigPoly shifted(int shift) const;

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator-=(const TrigPoly& o);
    TrigPoly& operator*=(const GaussRational& c);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
    friend TrigPoly operator*(TrigPoly a, const GaussRational& c) { return a *= c; }
    TrigPoly operator-() const;
    friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    CoeffMap coeffs_;
};

/// Exact quotient a / b in the Laurent ring; throws std::domain_error when b does not divide a.
TrigPoly exact_divide(const TrigPoly& a, const TrigPoly& b);

/// Double-precision trig polynomial for fast evaluation.
class CompiledTrig {
public:
    CompiledTrig() = default;
    explicit CompiledTrig(const TrigPoly& p);
    Complex operator()(double t) const;
    /// Value and t-derivative.
    std::pair<Complex, Complex> with_derivative(double t) const;
    bool empty() const { return terms_.empty(); }

private:
    std::vector<std::pair<int, Complex>> terms_;
};

/// Polynomial in z and conj(z) with trig-polynomial coefficients in an angle t.
/// Keys are (exponent of z, exponent of conj(z)).
class LoopPoly {
public:
    using Key = std::pair<int, int>;
    using CoeffMap = std::map<Key, TrigPoly>;

    LoopPoly() = default;

    const CoeffMap& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    void add(int zexp, int zbar_exp, int freq, const GaussRational& c);
    void add(int zexp, int zbar_exp, const TrigPoly& c);
    TrigPoly coefficient(int zexp, int zbar_exp = 0) const;

    bool is_semiholomorphic() const;
    /// Largest exponent of z (plus conj(z)).
    int degree() const;
    /// Smallest total z-degree among the terms.
    int min_degree() const;
    int max_abs_freq() const;

    Complex operator()(Complex z, double t) const;

    LoopPoly derivative_z() const;
    LoopPoly derivative_zbar() const;
    LoopPoly derivative_t() const;
    /// Divides by z^m; every term must carry z^m.
    LoopPoly divided_by_z(int m) const;
    /// Substitutes e^{it} -> e^{int}.
    LoopPoly time_scaled(int n) const;
    LoopPoly times(const TrigPoly& c) const;

    /// Coefficients c_0..c_deg of the semiholomorphic polynomial at angle t.
    std::vector<Complex> coefficients_at(double t) const;

    friend LoopPoly operator+(const LoopPoly& a, const LoopPoly& b);
    friend LoopPoly operator*(const LoopPoly& a, const LoopPoly& b);
    friend bool operator==(const LoopPoly& a, const LoopPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    CoeffMap coeffs_;
};

/// Values of a loop polynomial and its first derivatives.
struct LoopJet {
    Complex g, gz, gzbar, gt;
};

/// Double-precision loop polynomial with cached derivative structure.
class CompiledLoop {
public:
    CompiledLoop() = default;
    explicit CompiledLoop(const LoopPoly& p);

    Complex operator()(Complex z, double t) const;
    LoopJet jet(Complex z, double t) const;
    int degree() const { return degree_; }

private:
    struct Term {
        int a, b;
        CompiledTrig c;
    };
    std::vector<Term> terms_;
    int degree_ = 0;
};

}  // namespace mxl
