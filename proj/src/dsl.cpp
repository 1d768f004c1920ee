#include "crystalline/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <vector>

namespace crystalline {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExpPoly parse() {
        skip_ws();
        std::vector<Term> terms;
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = (get() == '-') ? -1.0 : 1.0;
        }
        append_term(terms, sign);
        skip_ws();
        while (pos_ < text_.size()) {
            const char op = get();
            if (op != '+' && op != '-') {
                fail("expected '+' or '-'", pos_ - 1);
            }
            append_term(terms, op == '-' ? -1.0 : 1.0);
            skip_ws();
        }
        if (terms.empty()) fail("empty expression", 0);
        return ExpPoly::make(std::move(terms));
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, at);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    bool consume(std::string_view word) {
        if (text_.substr(pos_, word.size()) == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (get() != c) fail(std::string("expected '") + c + "'", pos_ == 0 ? 0 : pos_ - 1);
    }

    std::optional<double> try_number() {
        skip_ws();
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr == begin) return std::nullopt;
        pos_ += static_cast<std::size_t>(ptr - begin);
        return value;
    }

    double number() {
        const std::size_t at = pos_;
        if (auto v = try_number()) return *v;
        fail("expected a number", at);
    }

    // rate inside sin(...)/cos(...), up to and including the 'z'
    double angular_rate() {
        skip_ws();
        if (consume("z")) return 1.0;
        double rate;
        if (consume("pi")) {
            rate = std::numbers::pi;
        } else {
            rate = number();
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                if (consume("pi")) rate *= std::numbers::pi;
                else if (consume("z")) return rate;
                else fail("expected 'pi' or 'z'", pos_);
            } else {
                fail("expected '*z'", pos_);
            }
        }
        skip_ws();
        expect('*');
        skip_ws();
        if (!consume("z")) fail("expected 'z'", pos_);
        return rate;
    }

    // primary as a term list (without the leading scalar factor)
    std::vector<Term> primary() {
        skip_ws();
        const std::size_t at = pos_;
        if (consume("sin(")) {
            skip_ws();
            const double rate = angular_rate();
            skip_ws();
            expect(')');
            return from_trig(TrigKind::Sin, rate).terms();
        }
        if (consume("cos(")) {
            skip_ws();
            const double rate = angular_rate();
            skip_ws();
            expect(')');
            return from_trig(TrigKind::Cos, rate).terms();
        }
        if (consume("e(")) {
            skip_ws();
            const double freq = number();
            skip_ws();
            expect(')');
            return {{freq, cplx(1.0)}};
        }
        if (auto v = try_number()) {
            return {{0.0, cplx(*v)}};
        }
        fail("expected sin(, cos(, e( or a number", at);
    }

    void append_term(std::vector<Term>& out, double sign) {
        skip_ws();
        double scale = sign;
        const std::size_t save = pos_;
        if (auto v = try_number()) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                scale *= *v;
            } else {
                out.push_back({0.0, cplx(sign * *v)});
                return;
            }
        } else {
            pos_ = save;
        }
        for (Term t : primary()) {
            t.b *= scale;
            out.push_back(t);
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// "" for factor 1, "<v>*" otherwise
std::string factor_prefix(double v) {
    if (v == 1.0) return "";
    return format_number(v) + "*";
}

std::string rate_text(double rate) {
    const double k_pi = std::round(rate / std::numbers::pi);
    if (k_pi >= 1.0 && std::abs(rate - k_pi * std::numbers::pi) <= 1e-9 * rate) {
        return k_pi == 1.0 ? "pi*z" : format_number(k_pi) + "*pi*z";
    }
    if (rate == 1.0) return "z";
    return format_number(rate) + "*z";
}

}  // namespace

ExpPoly parse_poly_dsl(std::string_view text) { return Parser(text).parse(); }

std::string print_poly_dsl(const ExpPoly& p) {
    const double scale = p.max_abs_coeff();
    const double tol = 1e-12 * scale;

    struct Piece {
        double order;  // for output ordering: descending rate first
        std::string text;
        bool negative;
    };
    std::vector<Piece> pieces;
    std::vector<bool> used(p.size(), false);

    for (std::size_t j = 0; j < p.size(); ++j) {
        if (used[j]) continue;
        const double a = p.alpha(j);
        if (a < -kFreqTol) {
            // find the partner at -a
            std::size_t partner = p.size();
            for (std::size_t k = j + 1; k < p.size(); ++k) {
                if (!used[k] && std::abs(p.alpha(k) + a) <= kFreqTol) {
                    partner = k;
                    break;
                }
            }
            if (partner < p.size()) {
                const cplx b_minus = p.coeff(j), b_plus = p.coeff(partner);
                const cplx c_cos = b_plus + b_minus;
                const cplx c_sin = cplx(0.0, 1.0) * (b_plus - b_minus);
                if (std::abs(c_cos.imag()) <= tol && std::abs(c_sin.imag()) <= tol) {
                    used[j] = used[partner] = true;
                    const double rate = -kTwoPi * a;
                    if (std::abs(c_sin.real()) > tol) {
                        pieces.push_back({rate,
                                          factor_prefix(std::abs(c_sin.real())) + "sin(" +
                                              rate_text(rate) + ")",
                                          c_sin.real() < 0});
                    }
                    if (std::abs(c_cos.real()) > tol) {
                        pieces.push_back({rate,
                                          factor_prefix(std::abs(c_cos.real())) + "cos(" +
                                              rate_text(rate) + ")",
                                          c_cos.real() < 0});
                    }
                    continue;
                }
            }
        }
        // plain term: constant or real e-term
        const cplx b = p.coeff(j);
        if (std::abs(b.imag()) > tol) {
            throw Error("polynomial is not representable in the DSL");
        }
        used[j] = true;
        if (std::abs(a) <= kFreqTol) {
            pieces.push_back({0.0, format_number(std::abs(b.real())), b.real() < 0});
        } else {
            pieces.push_back({-1.0,
                              factor_prefix(std::abs(b.real())) + "e(" + format_number(a) + ")",
                              b.real() < 0});
        }
    }

    std::stable_sort(pieces.begin(), pieces.end(),
                     [](const Piece& a, const Piece& b) { return a.order > b.order; });
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i == 0) {
            if (pieces[i].negative) out += "-";
        } else {
            out += pieces[i].negative ? "-" : "+";
        }
        out += pieces[i].text;
    }
    return out;
}

}  // namespace crystalline
