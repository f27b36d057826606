#pragma once

#include "mxl/gauss.hpp"

#include <compare>
#include <map>
#include <set>
#include <vector>

namespace mxl {

/// Exponents of u, v, conj(u), conj(v) in one monomial.
struct Exponents {
    int u = 0;
    int v = 0;
    int ubar = 0;
    int vbar = 0;

    int u_degree() const { return u + ubar; }
    int v_degree() const { return v + vbar; }
    auto operator<=>(const Exponents&) const = default;
};

/// Point of the support: (degree in |u|, degree in |v|).
struct LatticePoint {
    long a = 0;
    long b = 0;
    auto operator<=>(const LatticePoint&) const = default;
};

enum class Var { U, Ubar, V, Vbar };

const char* var_name(Var x);

/// Polynomial in u, v, conj(u), conj(v) with exact Gaussian-rational coefficients.
/// The zero polynomial is the empty term map.
class MixedPoly {
public:
    using TermMap = std::map<Exponents, GaussRational>;

    MixedPoly() = default;
    static MixedPoly constant(const GaussRational& c);
    static MixedPoly monomial(const Exponents& e, const GaussRational& c = 1);
    static MixedPoly variable(Var x);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Adds c*monomial, merging like terms and dropping zeros.
    void add_term(const Exponents& e, const GaussRational& c);
    GaussRational coefficient(const Exponents& e) const;

    std::set<LatticePoint> support() const;
    bool depends_on(Var x) const;
    int max_exponent(Var x) const;
    /// Largest u+conj(u)+v+conj(v) degree.
    int total_degree() const;

    MixedPoly conj() const;
    MixedPoly pow(unsigned n) const;
    /// Terms whose support point satisfies pred.
    template <typename Pred>
    MixedPoly filter(Pred pred) const {
        MixedPoly out;
        for (const auto& [e, c] : terms_)
            if (pred(e)) out.terms_.emplace(e, c);
        return out;
    }

    MixedPoly& operator+=(const MixedPoly& o);
    MixedPoly& operator-=(const MixedPoly& o);
    MixedPoly& operator*=(const GaussRational& c);
    friend MixedPoly operator+(MixedPoly a, const MixedPoly& b) { return a += b; }
    friend MixedPoly operator-(MixedPoly a, const MixedPoly& b) { return a -= b; }
    friend MixedPoly operator*(const MixedPoly& a, const MixedPoly& b);
    friend MixedPoly operator*(MixedPoly a, const GaussRational& c) { return a *= c; }
    friend MixedPoly operator*(const GaussRational& c, MixedPoly a) { return a *= c; }
    MixedPoly operator-() const;
    friend bool operator==(const MixedPoly& a, const MixedPoly& b) { return a.terms_ == b.terms_; }

private:
    TermMap terms_;
};

/// Formal partial derivative treating u, v, conj(u), conj(v) as independent.
MixedPoly wirtinger(const MixedPoly& p, Var x);

Complex evaluate(const MixedPoly& p, Complex u, Complex v);

struct SingularResiduals {
    Complex s1;
    double s2 = 0;
    double s3 = 0;

    double norm() const;
};

SingularResiduals singular_residuals(const MixedPoly& p, Complex u, Complex v);

struct StructureReport {
    bool u_semiholomorphic = false;     ///< independent of conj(u)
    bool ubar_semiholomorphic = false;  ///< independent of u
    bool v_semiholomorphic = false;
    bool vbar_semiholomorphic = false;
    bool holomorphic = false;
    bool u_convenient = false;  ///< boundary meets the |u|-axis
    bool v_convenient = false;
    bool convenient = false;
};

StructureReport classify_structure(const MixedPoly& p);

/// Double-precision copy of a polynomial for repeated evaluation.
class CompiledPoly {
public:
    CompiledPoly() = default;
    explicit CompiledPoly(const MixedPoly& p);

    Complex operator()(Complex u, Complex v) const;
    bool empty() const { return terms_.empty(); }
    /// Sum of coefficient moduli.
    double l1_norm() const;

    struct Term {
        Exponents e;
        Complex c;
    };
    const std::vector<Term>& terms() const { return terms_; }

private:
    friend class ResidualEvaluator;
    std::vector<Term> terms_;
    int max_exp_ = 0;
};

/// Values of p and its four Wirtinger derivatives at one point.
struct Jet {
    Complex f, fu, fubar, fv, fvbar;

    SingularResiduals residuals() const;
};

/// Evaluates p together with its Wirtinger derivatives sharing one power table.
class ResidualEvaluator {
public:
    explicit ResidualEvaluator(const MixedPoly& p);

    Jet jet(Complex u, Complex v) const;
    SingularResiduals operator()(Complex u, Complex v) const { return jet(u, v).residuals(); }
    /// Largest coefficient modulus of p.
    double scale() const { return scale_; }

private:
    CompiledPoly f_, fu_, fubar_, fv_, fvbar_;
    int max_exp_ = 0;
    double scale_ = 1;
};

}  // namespace mxl
