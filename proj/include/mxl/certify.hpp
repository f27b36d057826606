#pragma once

#include "mxl/trig.hpp"

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <utility>

namespace mxl {

/// Outcome of a grid-plus-Lipschitz non-vanishing test.
struct GridCertificate {
    bool certified = false;   ///< min over nodes exceeds the Lipschitz slack
    double min_value = 0;     ///< smallest |F| on the final grid
    double slack = 0;         ///< Lipschitz bound times half the spacing
    int grid = 0;             ///< nodes per dimension on the final grid
    double argmin_x = 0;
    double argmin_y = 0;
};

/// Certifies |F(t)| > 0 on the circle; doubles the grid up to max_grid.
GridCertificate certify_nonvanishing(const TrigPoly& f, int grid, int max_grid);

/// Trig polynomial on the torus: (frequency in x, frequency in y) -> exact coefficient.
class TorusPoly {
public:
    using Key = std::pair<int, int>;
    using CoeffMap = std::map<Key, GaussRational>;

    void add(int fx, int fy, const GaussRational& c);
    const CoeffMap& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Complex operator()(double x, double y) const;
    TorusPoly derivative_x() const;
    TorusPoly derivative_y() const;
    TorusPoly conj() const;
    double lipschitz_x() const;
    double lipschitz_y() const;
    bool depends_on_x() const;

    friend TorusPoly operator+(const TorusPoly& a, const TorusPoly& b);
    friend TorusPoly operator-(const TorusPoly& a, const TorusPoly& b);
    friend TorusPoly operator*(const TorusPoly& a, const TorusPoly& b);

private:
    CoeffMap coeffs_;
};

/// Im(conj(a) b) as an exact real torus polynomial.
TorusPoly imag_conj_product(const TorusPoly& a, const TorusPoly& b);

/// Certifies |F| > 0 on the torus; doubles the grid up to max_grid.
GridCertificate certify_nonvanishing(const TorusPoly& f, int grid, int max_grid);

/// Levenberg-Marquardt on a residual vector with forward-difference Jacobian.
struct LeastSquaresResult {
    Eigen::VectorXd x;
    double norm = 0;  ///< Euclidean norm of the final residual
    int iterations = 0;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

LeastSquaresResult levenberg_marquardt(const ResidualFn& residual, Eigen::VectorXd x0, int max_iter = 200,
                                       double tol = 1e-15);

}  // namespace mxl
