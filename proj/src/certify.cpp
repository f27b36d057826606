#include "mxl/certify.hpp"

#include "mxl/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace mxl {

GridCertificate certify_nonvanishing(const TrigPoly& f, int grid, int max_grid) {
    GridCertificate cert;
    const double lip = f.lipschitz();
    CompiledTrig cf(f);
    for (int n = std::max(grid, 8);; n *= 2) {
        double h = kTwoPi / n;
        cert.grid = n;
        cert.min_value = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            double v = std::abs(cf(k * h));
            if (v < cert.min_value) {
                cert.min_value = v;
                cert.argmin_x = k * h;
            }
        }
        cert.slack = lip * h / 2;
        cert.certified = cert.min_value > cert.slack;
        // A refinement only helps while the minimum stays clearly positive.
        if (cert.certified || n * 2 > max_grid || cert.min_value < 1e-12 * (1 + f.l1_norm())) break;
    }
    return cert;
}

void TorusPoly::add(int fx, int fy, const GaussRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace({fx, fy}, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
}

Complex TorusPoly::operator()(double x, double y) const {
    Complex acc = 0;
    for (const auto& [k, c] : coeffs_) acc += c.to_complex() * std::polar(1.0, k.first * x + k.second * y);
    return acc;
}

TorusPoly TorusPoly::derivative_x() const {
    TorusPoly out;
    for (const auto& [k, c] : coeffs_) out.add(k.first, k.second, c * GaussRational(0, k.first));
    return out;
}

TorusPoly TorusPoly::derivative_y() const {
    TorusPoly out;
    for (const auto& [k, c] : coeffs_) out.add(k.first, k.second, c * GaussRational(0, k.second));
    return out;
}

TorusPoly TorusPoly::conj() const {
    TorusPoly out;
    for (const auto& [k, c] : coeffs_) out.add(-k.first, -k.second, c.conj());
    return out;
}

double TorusPoly::lipschitz_x() const {
    double s = 0;
    for (const auto& [k, c] : coeffs_) s += std::abs(k.first) * std::abs(c.to_complex());
    return s;
}

double TorusPoly::lipschitz_y() const {
    double s = 0;
    for (const auto& [k, c] : coeffs_) s += std::abs(k.second) * std::abs(c.to_complex());
    return s;
}

bool TorusPoly::depends_on_x() const {
    return std::any_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.first.first != 0; });
}

TorusPoly operator+(const TorusPoly& a, const TorusPoly& b) {
    TorusPoly out = a;
    for (const auto& [k, c] : b.coeffs_) out.add(k.first, k.second, c);
    return out;
}

TorusPoly operator-(const TorusPoly& a, const TorusPoly& b) {
    TorusPoly out = a;
    for (const auto& [k, c] : b.coeffs_) out.add(k.first, k.second, -c);
    return out;
}

TorusPoly operator*(const TorusPoly& a, const TorusPoly& b) {
    TorusPoly out;
    for (const auto& [ka, ca] : a.coeffs_)
        for (const auto& [kb, cb] : b.coeffs_) out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

TorusPoly imag_conj_product(const TorusPoly& a, const TorusPoly& b) {
    // Im(w) = (w - conj(w)) / (2i)
    TorusPoly w = a.conj() * b;
    TorusPoly d = w - w.conj();
    TorusPoly out;
    GaussRational scale = GaussRational(1) / GaussRational(0, 2);
    for (const auto& [k, c] : d.coeffs()) out.add(k.first, k.second, c * scale);
    return out;
}

GridCertificate certify_nonvanishing(const TorusPoly& f, int grid, int max_grid) {
    GridCertificate cert;
    const double lx = f.lipschitz_x(), ly = f.lipschitz_y();
    double l1 = 0;
    std::vector<std::pair<std::pair<int, int>, Complex>> terms;
    for (const auto& [k, c] : f.coeffs()) {
        terms.emplace_back(k, c.to_complex());
        l1 += std::abs(c.to_complex());
    }
    const bool two_d = f.depends_on_x();
    for (int n = std::max(grid, 8);; n *= 2) {
        const double h = kTwoPi / n;
        const int nx = two_d ? n : 1;
        cert.grid = n;
        cert.min_value = std::numeric_limits<double>::infinity();
        // Separable evaluation: sum over x-frequencies of e^{i fx x} times a y-series.
        std::map<int, std::vector<std::pair<int, Complex>>> by_x;
        for (const auto& [k, c] : terms) by_x[k.first].emplace_back(k.second, c);
        std::vector<Complex> ey_cache;
        for (int j = 0; j < n; ++j) {
            const double y = j * h;
            std::vector<std::pair<int, Complex>> partial;
            partial.reserve(by_x.size());
            for (const auto& [fx, list] : by_x) {
                Complex s = 0;
                for (const auto& [fy, c] : list) s += c * std::polar(1.0, fy * y);
                partial.emplace_back(fx, s);
            }
            for (int i = 0; i < nx; ++i) {
                const double x = i * h;
                Complex v = 0;
                for (const auto& [fx, s] : partial) v += s * std::polar(1.0, fx * x);
                double a = std::abs(v);
                if (a < cert.min_value) {
                    cert.min_value = a;
                    cert.argmin_x = x;
                    cert.argmin_y = y;
                }
            }
        }
        cert.slack = (lx + ly) * h / 2;
        cert.certified = cert.min_value > cert.slack;
        if (cert.certified || n * 2 > max_grid || cert.min_value < 1e-12 * (1 + l1)) break;
    }
    return cert;
}

LeastSquaresResult levenberg_marquardt(const ResidualFn& residual, Eigen::VectorXd x, int max_iter, double tol) {
    LeastSquaresResult out;
    Eigen::VectorXd r = residual(x);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    const Eigen::Index n = x.size();
    int it = 0;
    for (; it < max_iter && cost > tol * tol; ++it) {
        Eigen::MatrixXd jac(r.size(), n);
        for (Eigen::Index k = 0; k < n; ++k) {
            double h = 1e-7 * std::max(1.0, std::abs(x[k]));
            Eigen::VectorXd xp = x;
            xp[k] += h;
            jac.col(k) = (residual(xp) - r) / h;
        }
        Eigen::MatrixXd jtj = jac.transpose() * jac;
        Eigen::VectorXd g = jac.transpose() * r;
        bool improved = false;
        for (int tries = 0; tries < 12; ++tries) {
            Eigen::MatrixXd a = jtj;
            a.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
            Eigen::VectorXd step = a.ldlt().solve(-g);
            if (!step.allFinite()) {
                lambda *= 10;
                continue;
            }
            Eigen::VectorXd xn = x + step;
            Eigen::VectorXd rn = residual(xn);
            double cn = rn.squaredNorm();
            if (std::isfinite(cn) && cn < cost) {
                x = xn;
                r = rn;
                lambda = std::max(lambda / 5, 1e-12);
                improved = cost - cn > 1e-16 * cost || cn < tol * tol;
                cost = cn;
                break;
            }
            lambda *= 10;
        }
        if (!improved) break;
    }
    out.x = x;
    out.norm = std::sqrt(cost);
    out.iterations = it;
    return out;
}

}  // namespace mxl
