#include <cctype>
#include <map>

#include "pairent/qstate.hpp"

namespace pairent::qstate {

namespace {

struct KetParser {
    const std::string& text;
    std::size_t pos = 0;

    explicit KetParser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw UsageError("parse_ket: " + msg + " at position " + std::to_string(pos));
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    bool consume_word(const std::string& w) {
        skip_ws();
        if (text.compare(pos, w.size(), w) == 0) {
            pos += w.size();
            return true;
        }
        return false;
    }

    double number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
            ++pos;
        if (pos == start) fail("expected a number");
        try {
            return std::stod(text.substr(start, pos - start));
        } catch (const std::exception&) {
            pos = start;
            fail("malformed number");
        }
    }

    // factor := number | sqrt(expr) | i | (expr) | -factor
    cplx factor() {
        if (consume('-')) return -factor();
        if (consume('+')) return factor();
        if (consume_word("sqrt")) {
            if (!consume('(')) fail("expected '(' after sqrt");
            cplx v = expr();
            if (!consume(')')) fail("expected ')'");
            if (std::abs(v.imag()) > 0 || v.real() < 0) fail("sqrt of a negative or complex value");
            return std::sqrt(v.real());
        }
        if (consume('(')) {
            cplx v = expr();
            if (!consume(')')) fail("expected ')'");
            return v;
        }
        if (peek() == 'i' || peek() == 'j') {
            ++pos;
            return cplx(0, 1);
        }
        cplx v = number();
        // allow "2i" for 2*i
        if (pos < text.size() && (text[pos] == 'i' || text[pos] == 'j')) {
            ++pos;
            return v * cplx(0, 1);
        }
        return v;
    }

    // product := factor (('*' | '/') factor)*
    cplx product() {
        cplx v = factor();
        while (true) {
            if (consume('*')) {
                v *= factor();
            } else if (peek() == '/') {
                ++pos;
                cplx f = factor();
                if (std::abs(f) == 0) fail("division by zero");
                v /= f;
            } else {
                return v;
            }
        }
    }

    // expr := product (('+' | '-') product)*   (only inside parentheses)
    cplx expr() {
        cplx v = product();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos;
                v += product();
            } else if (c == '-') {
                ++pos;
                v -= product();
            } else {
                return v;
            }
        }
    }

    std::string ket_digits() {
        if (!consume('|')) fail("expected '|'");
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected basis digits inside ket");
        std::string digits = text.substr(start, pos - start);
        if (consume('>')) return digits;
        if (text.compare(pos, 3, "\xe2\x9f\xa9") == 0) {  // '⟩'
            pos += 3;
            return digits;
        }
        fail("expected closing '>' or '⟩'");
    }
};

}  // namespace

ParsedKet parse_ket(const std::string& text) {
    KetParser p(text);
    std::map<std::string, cplx> terms;
    std::size_t width = 0;
    bool first = true;
    while (!p.at_end()) {
        double sign = 1.0;
        if (p.consume('-')) {
            sign = -1.0;
        } else if (p.consume('+')) {
            if (first) p.fail("unexpected leading '+'");
        } else if (!first) {
            p.fail("expected '+' or '-' between terms");
        }
        cplx coeff = 1.0;
        if (p.peek() != '|') coeff = p.product();
        std::string digits = p.ket_digits();
        if (first) {
            width = digits.size();
        } else if (digits.size() != width) {
            p.fail("inconsistent digit lengths");
        }
        terms[digits] += sign * coeff;
        first = false;
    }
    if (terms.empty()) throw UsageError("parse_ket: empty expression");

    int d = 2;
    for (auto& [digits, _] : terms)
        for (char c : digits) d = std::max(d, c - '0' + 1);

    const int n = static_cast<int>(width);
    Vector amps = Vector::Zero(pow_int(d, n));
    for (auto& [digits, coeff] : terms) {
        std::int64_t idx = 0;
        for (char c : digits) idx = idx * d + (c - '0');
        amps[idx] += coeff;
    }
    const double norm = amps.norm();
    if (norm < 1e-12) throw UsageError("parse_ket: amplitudes sum to the zero vector");
    ParsedKet out;
    out.normalization_warning = std::abs(norm - 1.0) > 1e-6;
    amps /= norm;
    out.state = StateVector{n, d, std::move(amps)};
    return out;
}

}  // namespace pairent::qstate
