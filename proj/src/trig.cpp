#include "mxl/trig.hpp"

#include "mxl/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace mxl {


TrigPoly TrigPoly::monomial(int freq, const GaussRational& c) {
    TrigPoly p;
    p.add(freq, c);
    return p;
}

void TrigPoly::add(int freq, const GaussRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(freq, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
}

GaussRational TrigPoly::coefficient(int freq) const {
    auto it = coeffs_.find(freq);
    return it == coeffs_.end() ? GaussRational{} : it->second;
}

int TrigPoly::min_freq() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
int TrigPoly::max_freq() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
int TrigPoly::max_abs_freq() const { return std::max(std::abs(min_freq()), std::abs(max_freq())); }

double TrigPoly::l1_norm() const {
    double s = 0;
    for (const auto& [k, c] : coeffs_) s += std::abs(c.to_complex());
    return s;
}

double TrigPoly::lipschitz() const {
    double s = 0;
    for (const auto& [k, c] : coeffs_) s += std::abs(k) * std::abs(c.to_complex());
    return s;
}

Complex TrigPoly::operator()(double t) const {
    Complex acc = 0;
    for (const auto& [k, c] : coeffs_) acc += c.to_complex() * std::polar(1.0, k * t);
    return acc;
}

TrigPoly TrigPoly::derivative() const {
    TrigPoly out;
    for (const auto& [k, c] : coeffs_) out.add(k, c * GaussRational(0, k));
    return out;
}

TrigPoly TrigPoly::conj() const {
    TrigPoly out;
    for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(-k, c.conj());
    return out;
}

TrigPoly TrigPoly::scaled(int n) const {
    if (n == 0) {
        TrigPoly out;
        for (const auto& [k, c] : coeffs_) out.add(0, c);
        return out;
    }
    TrigPoly out;
    for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(k * n, c);
    return out;
}

TrigPoly TrigPoly::shifted(int shift) const {
    TrigPoly out;
    for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(k + shift, c);
    return out;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    for (const auto& [k, c] : o.coeffs_) add(k, c);
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
    for (const auto& [k, c] : o.coeffs_) add(k, -c);
    return *this;
}

TrigPoly& TrigPoly::operator*=(const GaussRational& c) {
    if (c.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [k, coeff] : coeffs_) coeff *= c;
    return *this;
}

TrigPoly TrigPoly::operator-() const {
    TrigPoly out = *this;
    for (auto& [k, c] : out.coeffs_) c = -c;
    return out;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out;
    for (const auto& [ka, ca] : a.coeffs_)
        for (const auto& [kb, cb] : b.coeffs_) out.add(ka + kb, ca * cb);
    return out;
}

TrigPoly exact_divide(const TrigPoly& a, const TrigPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero trig polynomial");
    if (a.is_zero()) return {};
    // Ordinary polynomial long division after shifting both to start at frequency 0.
    const int a0 = a.min_freq(), b0 = b.min_freq();
    const int da = a.max_freq() - a0, db = b.max_freq() - b0;
    if (da < db) throw std::domain_error("trig polynomial does not divide");
    std::vector<GaussRational> rem(da + 1), den(db + 1);
    for (const auto& [k, c] : a.coeffs()) rem[k - a0] = c;
    for (const auto& [k, c] : b.coeffs()) den[k - b0] = c;
    const GaussRational lead = den[db];
    TrigPoly q;
    for (int k = da - db; k >= 0; --k) {
        if (rem[k + db].is_zero()) continue;
        GaussRational f = rem[k + db] / lead;
        q.add(k + a0 - b0, f);
        for (int j = 0; j <= db; ++j)
            if (!den[j].is_zero()) rem[k + j] -= f * den[j];
    }
    for (const auto& r : rem)
        if (!r.is_zero()) throw std::domain_error("trig polynomial does not divide");
    return q;
}

CompiledTrig::CompiledTrig(const TrigPoly& p) {
    for (const auto& [k, c] : p.coeffs()) terms_.emplace_back(k, c.to_complex());
}

Complex CompiledTrig::operator()(double t) const {
    Complex acc = 0;
    for (const auto& [k, c] : terms_) acc += c * std::polar(1.0, k * t);
    return acc;
}

std::pair<Complex, Complex> CompiledTrig::with_derivative(double t) const {
    Complex v = 0, d = 0;
    for (const auto& [k, c] : terms_) {
        Complex term = c * std::polar(1.0, k * t);
        v += term;
        d += Complex(0, k) * term;
    }
    return {v, d};
}

void LoopPoly::add(int zexp, int zbar_exp, int freq, const GaussRational& c) {
    if (c.is_zero()) return;
    auto& slot = coeffs_[{zexp, zbar_exp}];
    slot.add(freq, c);
    if (slot.is_zero()) coeffs_.erase({zexp, zbar_exp});
}

void LoopPoly::add(int zexp, int zbar_exp, const TrigPoly& c) {
    if (c.is_zero()) return;
    auto& slot = coeffs_[{zexp, zbar_exp}];
    slot += c;
    if (slot.is_zero()) coeffs_.erase({zexp, zbar_exp});
}

TrigPoly LoopPoly::coefficient(int zexp, int zbar_exp) const {
    auto it = coeffs_.find({zexp, zbar_exp});
    return it == coeffs_.end() ? TrigPoly{} : it->second;
}

bool LoopPoly::is_semiholomorphic() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.first.second == 0; });
}

int LoopPoly::degree() const {
    int d = 0;
    for (const auto& [key, c] : coeffs_) d = std::max(d, key.first + key.second);
    return d;
}

int LoopPoly::min_degree() const {
    if (coeffs_.empty()) return 0;
    int d = coeffs_.begin()->first.first + coeffs_.begin()->first.second;
    for (const auto& [key, c] : coeffs_) d = std::min(d, key.first + key.second);
    return d;
}

int LoopPoly::max_abs_freq() const {
    int m = 0;
    for (const auto& [key, c] : coeffs_) m = std::max(m, c.max_abs_freq());
    return m;
}

Complex LoopPoly::operator()(Complex z, double t) const {
    Complex acc = 0;
    for (const auto& [key, c] : coeffs_)
        acc += c(t) * ipow(z, key.first) * ipow(std::conj(z), key.second);
    return acc;
}

LoopPoly LoopPoly::derivative_z() const {
    LoopPoly out;
    for (const auto& [key, c] : coeffs_)
        if (key.first > 0) out.add(key.first - 1, key.second, c * GaussRational(key.first));
    return out;
}

LoopPoly LoopPoly::derivative_zbar() const {
    LoopPoly out;
    for (const auto& [key, c] : coeffs_)
        if (key.second > 0) out.add(key.first, key.second - 1, c * GaussRational(key.second));
    return out;
}

LoopPoly LoopPoly::derivative_t() const {
    LoopPoly out;
    for (const auto& [key, c] : coeffs_) out.add(key.first, key.second, c.derivative());
    return out;
}

LoopPoly LoopPoly::divided_by_z(int m) const {
    LoopPoly out;
    for (const auto& [key, c] : coeffs_) {
        if (key.first < m) throw std::domain_error("loop polynomial not divisible by z^m");
        out.add(key.first - m, key.second, c);
    }
    return out;
}

LoopPoly LoopPoly::time_scaled(int n) const {
    LoopPoly out;
    for (const auto& [key, c] : coeffs_) out.add(key.first, key.second, c.scaled(n));
    return out;
}

LoopPoly LoopPoly::times(const TrigPoly& c) const {
    LoopPoly out;
    for (const auto& [key, coeff] : coeffs_) out.add(key.first, key.second, coeff * c);
    return out;
}

std::vector<Complex> LoopPoly::coefficients_at(double t) const {
    std::vector<Complex> out(degree() + 1, Complex(0));
    for (const auto& [key, c] : coeffs_) out[key.first + key.second] += c(t);
    return out;
}

LoopPoly operator+(const LoopPoly& a, const LoopPoly& b) {
    LoopPoly out = a;
    for (const auto& [key, c] : b.coeffs_) out.add(key.first, key.second, c);
    return out;
}

LoopPoly operator*(const LoopPoly& a, const LoopPoly& b) {
    LoopPoly out;
    for (const auto& [ka, ca] : a.coeffs_)
        for (const auto& [kb, cb] : b.coeffs_) out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

CompiledLoop::CompiledLoop(const LoopPoly& p) : degree_(p.degree()) {
    for (const auto& [key, c] : p.coeffs()) terms_.push_back({key.first, key.second, CompiledTrig(c)});
}

Complex CompiledLoop::operator()(Complex z, double t) const {
    Complex acc = 0;
    const Complex zb = std::conj(z);
    for (const auto& term : terms_) acc += term.c(t) * ipow(z, term.a) * ipow(zb, term.b);
    return acc;
}

LoopJet CompiledLoop::jet(Complex z, double t) const {
    LoopJet j{0, 0, 0, 0};
    const Complex zb = std::conj(z);
    for (const auto& term : terms_) {
        auto [c, ct] = term.c.with_derivative(t);
        Complex za = ipow(z, term.a), zbb = ipow(zb, term.b);
        j.g += c * za * zbb;
        j.gt += ct * za * zbb;
        if (term.a > 0) j.gz += c * double(term.a) * ipow(z, term.a - 1) * zbb;
        if (term.b > 0) j.gzbar += c * double(term.b) * za * ipow(zb, term.b - 1);
    }
    return j;
}

}  // namespace mxl
