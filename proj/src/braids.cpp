#include "mxl/braids.hpp"

#include "mxl/certify.hpp"
#include "mxl/critical.hpp"
#include "mxl/errors.hpp"
#include "mxl/numeric.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace mxl {

// ---------------------------------------------------------------- words

std::vector<int> BraidWord::permutation() const {
    std::vector<int> at(strands);  // at[position] = starting position of the strand there
    std::iota(at.begin(), at.end(), 0);
    for (int l : letters) {
        int j = std::abs(l) - 1;
        std::swap(at[j], at[j + 1]);
    }
    std::vector<int> out(strands);
    for (int p = 0; p < strands; ++p) out[at[p]] = p;
    return out;
}

int cycle_count(const std::vector<int>& perm) {
    std::vector<char> seen(perm.size(), 0);
    int cycles = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = perm[j]) seen[j] = 1;
    }
    return cycles;
}

int BraidWord::components() const { return cycle_count(permutation()); }

BraidWord BraidWord::power(int n) const {
    BraidWord out{strands, {}};
    if (n >= 0) {
        for (int k = 0; k < n; ++k) out.letters.insert(out.letters.end(), letters.begin(), letters.end());
    } else {
        for (int k = 0; k < -n; ++k)
            for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back(-*it);
    }
    return out;
}

std::string BraidWord::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < letters.size(); ++k) {
        if (k) out += ' ';
        out += std::to_string(letters[k]);
    }
    return out;
}

BraidWord BraidWord::parse(std::string_view text, int strands) {
    BraidWord w;
    std::istringstream in{std::string(text)};
    std::string tok;
    int top = 0;
    while (in >> tok) {
        std::size_t used = 0;
        int l = 0;
        try {
            l = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || l == 0) throw std::invalid_argument("bad braid letter '" + tok + "'");
        w.letters.push_back(l);
        top = std::max(top, std::abs(l));
    }
    w.strands = strands > 0 ? strands : top + 1;
    if (top >= w.strands) throw std::invalid_argument("generator index exceeds strand count");
    return w;
}

// ---------------------------------------------------------------- geometric braids

GeometricBraid make_braid(std::vector<std::vector<Complex>> strands) {
    GeometricBraid b;
    double scale = 1;
    for (const auto& st : strands) scale = std::max(scale, std::abs(st[0]));
    // ties in real part are ordered as a small positive rotation would order them
    std::sort(strands.begin(), strands.end(), [scale](const auto& x, const auto& y) {
        if (std::abs(x[0].real() - y[0].real()) > 1e-9 * scale) return x[0].real() < y[0].real();
        return x[0].imag() > y[0].imag();
    });
    b.strands = std::move(strands);
    const int s = b.strand_count();
    std::vector<Complex> ends, starts;
    for (const auto& st : b.strands) {
        starts.push_back(st.front());
        ends.push_back(st.back());
    }
    b.permutation = match_points(ends, starts);
    double big = 0;
    for (const auto& st : b.strands)
        for (Complex z : st) big = std::max(big, std::abs(z));
    double smallest = std::numeric_limits<double>::infinity();
    double sep = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= b.samples(); ++k)
        for (int i = 0; i < s; ++i) {
            smallest = std::min(smallest, std::abs(b.strands[i][k]));
            for (int j = i + 1; j < s; ++j) sep = std::min(sep, std::abs(b.strands[i][k] - b.strands[j][k]));
        }
    b.affine = smallest > 1e-9 * (1 + big);
    b.min_separation = s > 1 ? sep : 0;
    return b;
}

namespace {

struct LoopCoefficients {
    std::vector<CompiledTrig> c;
    double scale = 0;

    explicit LoopCoefficients(const LoopPoly& g) {
        for (int k = 0; k <= g.degree(); ++k) {
            TrigPoly ck = g.coefficient(k);
            c.emplace_back(ck);
            scale += ck.l1_norm();
        }
    }
    std::vector<Complex> at(double t) const {
        std::vector<Complex> out(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) out[k] = c[k](t);
        return out;
    }
};

double min_pair_distance(const std::vector<Complex>& z) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) d = std::min(d, std::abs(z[i] - z[j]));
    return d;
}

}  // namespace

GeometricBraid track_roots(const LoopPoly& g, int samples) {
    if (!g.is_semiholomorphic()) throw NonSemiholomorphic();
    if (samples < 4) throw std::invalid_argument("need at least 4 samples");
    const int s = g.degree();
    LoopCoefficients lc(g);
    CompiledLoop cg(g);
    auto coeffs_at = [&](double t) {
        std::vector<Complex> c = lc.at(t);
        if (std::abs(c.back()) <= 1e-10 * lc.scale) throw LeadingCoefficientVanishes(t);
        return c;
    };
    if (s == 0) return make_braid({});

    std::vector<Complex> z = polynomial_roots(coeffs_at(0));
    auto collision_tol = [&](const std::vector<Complex>& pts) {
        double big = 0;
        for (Complex p : pts) big = std::max(big, std::abs(p));
        return 1e-9 * (1 + big);
    };
    if (min_pair_distance(z) < 10 * collision_tol(z)) throw StrandCollision(0);
    std::vector<std::vector<Complex>> strands(s);
    for (int j = 0; j < s; ++j) strands[j].push_back(z[j]);

    const double h = kTwoPi / samples;
    double dt = h;
    for (int k = 0; k < samples; ++k) {
        double t = k * h;
        const double target = (k + 1) * h;
        while (t < target - 1e-15) {
            const double step = std::min(dt, target - t);
            const double t1 = t + step;
            std::vector<Complex> c1 = coeffs_at(t1);
            const double d_old = min_pair_distance(z);
            std::vector<Complex> next(s);
            bool ok = true;
            for (int j = 0; j < s && ok; ++j) {
                LoopJet jet = cg.jet(z[j], t);
                Complex guess = z[j] - step * jet.gt / jet.gz;
                Complex w = guess;
                bool converged = false;
                for (int it = 0; it < 12; ++it) {
                    auto [p, dp] = horner_with_derivative(c1, w);
                    Complex delta = p / dp;
                    if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) break;
                    w -= delta;
                    if (std::abs(delta) < 1e-13 * (1 + std::abs(w))) {
                        converged = true;
                        break;
                    }
                }
                ok = converged && std::abs(w - z[j]) < 0.3 * d_old && std::abs(w - guess) < 0.1 * d_old;
                next[j] = w;
            }
            if (ok) {
                const double d_new = min_pair_distance(next);
                ok = d_new > 10 * collision_tol(next);
            }
            if (ok) {
                z = next;
                t = t1;
                dt = std::min(h, dt * 2);
            } else {
                dt = step / 2;
                if (dt < 1e-10 * h) throw StrandCollision(t);
            }
        }
        for (int j = 0; j < s; ++j) strands[j].push_back(z[j]);
    }
    return make_braid(std::move(strands));
}

BraidWord extract_word(const GeometricBraid& b) {
    const int s = b.strand_count();
    BraidWord w{std::max(s, 1), {}};
    if (s <= 1) return w;
    const int n = b.samples();
    std::vector<Complex> starts;
    for (const auto& st : b.strands) starts.push_back(st.front());

    for (int attempt = 0; attempt < 4; ++attempt) {
        const Complex rot = std::polar(1.0, -0.0137 * attempt);
        auto x = [&](int j, int k) { return (rot * b.strands[j][k]).real(); };
        auto y = [&](int j, int k) { return (rot * b.strands[j][k]).imag(); };
        std::vector<int> order(s);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int i, int j) { return x(i, 0) < x(j, 0); });
        std::vector<int> pos(s);
        for (int p = 0; p < s; ++p) pos[order[p]] = p;
        const std::vector<int> pos0 = pos;

        std::vector<int> letters;
        bool generic = true;
        struct Event {
            double tau;
            int i, j;
            double yi, yj;
        };
        for (int k = 0; k < n && generic; ++k) {
            std::vector<Event> events;
            for (int i = 0; i < s; ++i)
                for (int j = i + 1; j < s; ++j) {
                    double d0 = x(i, k) - x(j, k), d1 = x(i, k + 1) - x(j, k + 1);
                    if ((d0 < 0) == (d1 < 0)) continue;
                    double tau = d0 / (d0 - d1);
                    double yi = y(i, k) + tau * (y(i, k + 1) - y(i, k));
                    double yj = y(j, k) + tau * (y(j, k + 1) - y(j, k));
                    events.push_back({tau, i, j, yi, yj});
                }
            std::sort(events.begin(), events.end(), [](const Event& a, const Event& e) { return a.tau < e.tau; });
            for (std::size_t e = 0; e < events.size() && generic; ++e) {
                const Event& ev = events[e];
                const double size = std::max(std::abs(b.strands[ev.i][k]), std::abs(b.strands[ev.j][k]));
                if (std::abs(ev.yi - ev.yj) < 1e-12 * size) generic = false;
                for (std::size_t f = e + 1; f < events.size() && events[f].tau - ev.tau < 1e-9; ++f) {
                    const Event& o = events[f];
                    if (o.i == ev.i || o.i == ev.j || o.j == ev.i || o.j == ev.j) generic = false;
                }
                int pi = pos[ev.i], pj = pos[ev.j];
                if (std::abs(pi - pj) != 1) generic = false;
                if (!generic) break;
                const int p = std::min(pi, pj);
                const int left = order[p];
                const double y_left = left == ev.i ? ev.yi : ev.yj;
                const double y_right = left == ev.i ? ev.yj : ev.yi;
                letters.push_back(y_left < y_right ? p + 1 : -(p + 1));
                std::swap(order[p], order[p + 1]);
                pos[order[p]] = p;
                pos[order[p + 1]] = p + 1;
            }
        }
        if (!generic) continue;
        bool consistent = true;
        for (int j = 0; j < s; ++j)
            if (pos[j] != pos0[b.permutation[j]]) consistent = false;
        if (!consistent) continue;
        w.letters = std::move(letters);
        return w;
    }
    throw NonGenericProjection();
}

// ---------------------------------------------------------------- fibration

FibrationCertificate check_pfibered(const LoopPoly& g, int m, int samples) {
    if (!g.is_semiholomorphic()) throw NonSemiholomorphic();
    FibrationCertificate cert;
    cert.m = m;
    cert.samples = samples;
    if (m > 0) {
        GridCertificate avoid = certify_nonvanishing(g.coefficient(0), 256, 8192);
        if (!avoid.certified && avoid.min_value < 1e-9) {
            cert.status = Status::Refuted;
            cert.witness_t = avoid.argmin_x;
            cert.witness_point = 0;
            cert.note = "a strand passes through 0";
            return cert;
        }
    }
    CriticalScan scan = scan_critical_points(g, m, samples);
    cert.fd_error = scan.fd_error;
    double best = std::numeric_limits<double>::infinity();
    double scale = 0;
    for (const auto& [k, c] : g.coeffs()) scale = std::max(scale, c.l1_norm());
    for (const auto& br : scan.branches) {
        for (std::size_t k = 0; k < br.size(); ++k) {
            const auto& cs = br[k];
            if (std::abs(cs.value) < 1e-12 * scale) {
                cert.status = Status::Refuted;
                cert.min_arg_derivative = 0;
                cert.witness_t = cs.t;
                cert.witness_point = cs.point;
                cert.note = "critical value vanishes";
                return cert;
            }
            if (std::abs(cs.rate) < best) {
                best = std::abs(cs.rate);
                cert.witness_t = cs.t;
                cert.witness_point = cs.point;
            }
            if (k > 0 && (br[k - 1].rate < 0) != (cs.rate < 0)) {
                cert.status = Status::Refuted;
                cert.min_arg_derivative = 0;
                cert.witness_t = cs.t;
                cert.witness_point = cs.point;
                cert.note = "argument derivative changes sign along a critical value";
                return cert;
            }
        }
    }
    if (scan.branches.empty()) {
        cert.status = Status::Verified;
        cert.min_arg_derivative = std::numeric_limits<double>::infinity();
        cert.witness_t.reset();
        cert.witness_point.reset();
        cert.note = "no critical points";
        return cert;
    }
    cert.min_arg_derivative = best;
    if (best < 1e-9) {
        cert.status = Status::Refuted;
        cert.note = "argument derivative vanishes";
    } else if (best > std::max(scan.fd_error, 1e-9)) {
        cert.status = Status::Verified;
        cert.witness_t.reset();
        cert.witness_point.reset();
    } else {
        cert.note = "argument derivative within the finite-difference error";
    }
    return cert;
}

// ---------------------------------------------------------------- braids from words

namespace {

struct HalfTurnModel {
    const BraidWord& w;
    std::vector<double> base;
    std::vector<std::vector<int>> order_before;  ///< order_before[slot][position] = strand (by start position)

    HalfTurnModel(const BraidWord& word, bool affine) : w(word) {
        const int s = w.strands;
        for (int p = 0; p < s; ++p) base.push_back(affine ? p + 1.0 : p - (s - 1) / 2.0);
        std::vector<int> order(s);
        std::iota(order.begin(), order.end(), 0);
        order_before.push_back(order);
        for (int l : w.letters) {
            int j = std::abs(l) - 1;
            std::swap(order[j], order[j + 1]);
            order_before.push_back(order);
        }
    }

    /// Position of the strand starting at position `strand` at time T in [0, 2 pi].
    Complex operator()(int strand, double T) const {
        const int L = static_cast<int>(w.letters.size());
        if (L == 0) return base[strand];
        double slot_f = T / kTwoPi * L;
        int slot = std::clamp(static_cast<int>(std::floor(slot_f)), 0, L - 1);
        double frac = std::clamp(slot_f - slot, 0.0, 1.0);
        const auto& order = order_before[slot];
        int p = static_cast<int>(std::find(order.begin(), order.end(), strand) - order.begin());
        int l = w.letters[slot];
        int j = std::abs(l) - 1;
        if (p != j && p != j + 1) return base[p];
        double mid = 0.5 * (base[j] + base[j + 1]);
        double theta = kPi * frac * (l > 0 ? 1 : -1);
        return p == j ? mid + std::polar(0.5, kPi + theta) : mid + std::polar(0.5, theta);
    }
};

std::vector<std::vector<int>> cycles_of(const std::vector<int>& perm) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(perm.size(), 0);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = 1;
            cyc.push_back(static_cast<int>(j));
        }
        out.push_back(cyc);
    }
    return out;
}

/// Fourier series of one cycle curve: coefficient of e^{i k tau / c} for |k| <= K.
struct CycleFit {
    std::vector<int> strands;
    int c = 1;
    int K = 0;
    std::vector<Complex> coeff;  ///< index k + K

    /// Fitted values of the strand at cycle slot `i` at t = 2 pi m / n, m = 0..n-1.
    std::vector<Complex> sample(int i, int n) const {
        const int size = n * c;
        std::vector<Complex> spec(size, Complex(0));
        for (int k = -K; k <= K; ++k) spec[((k % size) + size) % size] += coeff[k + K];
        Eigen::FFT<double> fft;
        std::vector<Complex> vals;
        fft.inv(vals, spec);
        std::vector<Complex> out(n);
        for (int m = 0; m < n; ++m) out[m] = vals[(m + i * n) % size] * double(size);
        return out;
    }
};

CycleFit fit_cycle(const HalfTurnModel& model, const std::vector<int>& cyc, int K) {
    CycleFit fit;
    fit.strands = cyc;
    fit.c = static_cast<int>(cyc.size());
    fit.K = K;
    int size = 64;
    while (size < 8 * K * fit.c) size *= 2;
    std::vector<Complex> vals(size);
    for (int m = 0; m < size; ++m) {
        double tau = kTwoPi * fit.c * m / size;
        int i = std::min(static_cast<int>(tau / kTwoPi), fit.c - 1);
        vals[m] = model(cyc[i], tau - kTwoPi * i);
    }
    Eigen::FFT<double> fft;
    std::vector<Complex> spec;
    fft.fwd(spec, vals);
    fit.coeff.assign(2 * K + 1, 0);
    for (int k = -K; k <= K; ++k) fit.coeff[k + K] = spec[((k % size) + size) % size] / double(size);
    return fit;
}

LoopPoly loop_from_fits(const std::vector<CycleFit>& fits, int s) {
    int freq_bound = 0;
    for (const auto& f : fits) freq_bound += f.K;
    int n = 64;
    while (n < 2 * freq_bound + 2) n *= 2;
    // strand values at t = 2 pi m / n
    std::vector<std::vector<Complex>> vals;
    for (const auto& f : fits)
        for (int i = 0; i < f.c; ++i) vals.push_back(f.sample(i, n));
    // elementary symmetric functions, e[k][m]
    std::vector<std::vector<Complex>> e(s + 1, std::vector<Complex>(n, Complex(0)));
    for (int m = 0; m < n; ++m) {
        std::vector<Complex> poly(1, Complex(1));  // prod (x + z_j) coefficients, low to high
        for (int j = 0; j < s; ++j) {
            std::vector<Complex> next(poly.size() + 1, Complex(0));
            for (std::size_t a = 0; a < poly.size(); ++a) {
                next[a] += poly[a] * vals[j][m];
                next[a + 1] += poly[a];
            }
            poly = std::move(next);
        }
        for (int k = 0; k <= s; ++k) e[k][m] = poly[s - k];
    }
    LoopPoly g;
    Eigen::FFT<double> fft;
    for (int k = 0; k <= s; ++k) {
        std::vector<Complex> spec;
        fft.fwd(spec, e[k]);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (int idx = 0; idx < n; ++idx) {
            int freq = idx <= n / 2 ? idx : idx - n;
            GaussRational c = dyadic_round(sign * spec[idx] / double(n), 40);
            if (!c.is_zero()) g.add(s - k, 0, freq, c);
        }
    }
    return g;
}

}  // namespace

WordBraid braid_from_word(const BraidWord& w, int harmonics, bool affine_offset, int samples) {
    const int s = w.strands;
    const int L = static_cast<int>(w.letters.size());
    HalfTurnModel model(w, affine_offset);
    const auto cycles = cycles_of(w.permutation());
    constexpr int kCap = 4096;
    for (int base = 4;; base *= 2) {
        std::vector<CycleFit> fits;
        int used = 0;
        for (const auto& cyc : cycles) {
            int K = harmonics > 0 ? harmonics : std::max(1, base * std::max(L, 1) * static_cast<int>(cyc.size()));
            K = std::min(K, kCap);
            used = std::max(used, K);
            fits.push_back(fit_cycle(model, cyc, K));
        }
        std::vector<std::vector<Complex>> strands;
        for (const auto& f : fits)
            for (int i = 0; i < f.c; ++i) {
                std::vector<Complex> st = f.sample(i, samples);
                st.push_back(f.sample((i + 1) % f.c, samples).front());
                strands.push_back(std::move(st));
            }
        WordBraid out;
        out.braid = make_braid(std::move(strands));
        out.loop = loop_from_fits(fits, s);
        out.harmonics = used;
        bool faithful = false;
        try {
            faithful = extract_word(out.braid) == w && extract_word(track_roots(out.loop, samples)) == w;
        } catch (const Error&) {
            faithful = false;
        }
        if (faithful) return out;
        if (harmonics > 0 || used >= kCap)
            throw FidelityLoss("fitted representative no longer reproduces the word " + w.to_string());
    }
}

}  // namespace mxl
