#include "mxl/expr.hpp"

#include "mxl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace mxl {

namespace {

constexpr long kMaxPower = 256;

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    MixedPoly parse() {
        MixedPoly p = sum();
        skip_space();
        if (pos_ != text_.size()) fail("operator or end of input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& expected) const { throw SyntaxError(pos_, expected); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("'") + c + "'");
    }

    bool accept_word(std::string_view w) {
        skip_space();
        if (text_.substr(pos_, w.size()) != w) return false;
        std::size_t end = pos_ + w.size();
        if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
        pos_ = end;
        return true;
    }

    MixedPoly sum() {
        MixedPoly acc;
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        MixedPoly t = product();
        acc = negate ? -t : t;
        for (;;) {
            if (accept('+')) acc += product();
            else if (accept('-')) acc -= product();
            else break;
        }
        return acc;
    }

    MixedPoly product() {
        MixedPoly acc = power();
        for (;;) {
            if (accept('*')) {
                acc = acc * power();
            } else if (peek() == '/') {
                std::size_t at = pos_;
                ++pos_;
                MixedPoly d = power();
                if (d.size() != 1 || d.terms().begin()->first != Exponents{}) {
                    pos_ = at;
                    fail("constant divisor");
                }
                acc *= GaussRational(1) / d.terms().begin()->second;
            } else {
                break;
            }
        }
        return acc;
    }

    MixedPoly power() {
        MixedPoly base = primary();
        if (accept('^')) {
            skip_space();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("positive integer exponent");
            long k = std::stol(std::string(text_.substr(start, std::min<std::size_t>(pos_ - start, 9))));
            if (k < 1 || k > kMaxPower || pos_ - start > 9) {
                pos_ = start;
                fail("exponent between 1 and " + std::to_string(kMaxPower));
            }
            return base.pow(static_cast<unsigned>(k));
        }
        return base;
    }

    MixedPoly primary() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (accept('(')) {
            MixedPoly inner = sum();
            expect(')');
            return inner;
        }
        if (accept('~')) return primary().conj();
        if (accept_word("conj")) {
            expect('(');
            MixedPoly inner = sum();
            expect(')');
            return inner.conj();
        }
        if (accept_word("u")) return MixedPoly::variable(Var::U);
        if (accept_word("v")) return MixedPoly::variable(Var::V);
        if (accept_word("i")) return MixedPoly::constant(GaussRational::imaginary_unit());
        fail("number, variable, conj(...) or '('");
    }

    MixedPoly number() {
        std::size_t start = pos_;
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
        mpz_class den = 1;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            std::size_t frac_start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_++];
                den *= 10;
            }
            if (frac_start == pos_ && digits.empty()) {
                pos_ = start;
                fail("number");
            }
        }
        if (digits.empty()) {
            pos_ = start;
            fail("number");
        }
        Rational value(mpz_class(digits, 10), den);
        value.canonicalize();
        if (pos_ < text_.size() && text_[pos_] == 'i' &&
            (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
            ++pos_;
            return MixedPoly::constant(GaussRational(0, value));
        }
        return MixedPoly::constant(GaussRational(value));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string factor(const char* name, int k) {
    std::string s = name;
    if (k > 1) s += "^" + std::to_string(k);
    return s;
}

std::string monomial_text(const Exponents& e) {
    std::vector<std::string> parts;
    if (e.u) parts.push_back(factor("u", e.u));
    if (e.ubar) parts.push_back(factor("conj(u)", e.ubar));
    if (e.v) parts.push_back(factor("v", e.v));
    if (e.vbar) parts.push_back(factor("conj(v)", e.vbar));
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k) out += "*";
        out += parts[k];
    }
    return out;
}

}  // namespace

MixedPoly parse_poly(std::string_view text) {
    MixedPoly p = Parser(text).parse();
    if (p.is_zero()) throw EmptyPolynomial();
    return p;
}

std::string format_poly(const MixedPoly& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Exponents, GaussRational>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
        const Exponents& a = x.first;
        const Exponents& b = y.first;
        if (a.u_degree() != b.u_degree()) return a.u_degree() > b.u_degree();
        if (a.u != b.u) return a.u > b.u;
        if (a.v_degree() != b.v_degree()) return a.v_degree() > b.v_degree();
        return a.v > b.v;
    });
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms) {
        GaussRational coeff = c;
        bool negative = coeff.is_real() && sgn(coeff.re()) < 0;
        if (negative) coeff = -coeff;
        if (first) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        first = false;
        std::string mono = monomial_text(e);
        if (mono.empty()) out += coeff.to_string();
        else if (coeff.is_one()) out += mono;
        else out += coeff.to_string() + "*" + mono;
    }
    return out;
}

}  // namespace mxl
