#ifndef COMMGRAPH_IO_HPP
#define COMMGRAPH_IO_HPP

#include "commgraph/poly.hpp"
#include "commgraph/ring.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace commgraph {

// Text formats.
//
// Field spec:   gf(p) | gf(p^m) | gf(p^m; modulus=<poly in x over F_p>) | q
// Ring spec:    M(n, gf(...)) | M(n, quat(a,b))
// Polynomial:   <field spec>[x]: c0 + c1*x + ... + cd*x^d
// Matrix file:  "ring: <ring spec>" header line, then n rows of n
//               whitespace-separated entry tokens. F_q entries are
//               t-polynomials like 1+2*t^2 (no spaces); quaternion entries
//               are w+x*i+y*j+z*k with rational components p/q.

namespace detail_io {

inline std::string strip(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

inline std::string remove_spaces(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

// split a sum like "1+2*t-t^2" into signed terms ("+1", "+2*t", "-t^2")
inline std::vector<std::string> signed_terms(const std::string& s) {
    std::vector<std::string> terms;
    std::string cur;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == '+' || c == '-') && depth == 0 && i > 0 && s[i - 1] != '/') {
            terms.push_back(cur);
            cur.clear();
            cur.push_back(c);
        } else {
            if (cur.empty() && c != '+' && c != '-') cur.push_back('+');
            cur.push_back(c);
        }
    }
    if (!cur.empty()) terms.push_back(cur);
    return terms;
}

// parse "sym^k", "sym", or "" exponent part after an optional '*'
inline std::optional<int> parse_power(std::string_view s, char sym) {
    if (s.empty()) return 0;
    if (s.front() == '*') s.remove_prefix(1);
    if (s.empty() || s.front() != sym) return std::nullopt;
    s.remove_prefix(1);
    if (s.empty()) return 1;
    if (s.front() != '^') return std::nullopt;
    s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    int v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

} // namespace detail_io

// --- field / ring specs ------------------------------------------------------

struct FieldSpec {
    bool rationals = false;
    const FqCtx* fq = nullptr;
};

inline std::optional<FieldSpec> parse_field_spec(std::string_view text) {
    const std::string s = detail_io::remove_spaces(text);
    if (s == "q" || s == "Q") return FieldSpec{true, nullptr};
    if (s.rfind("gf(", 0) != 0 || s.back() != ')') return std::nullopt;
    const std::string body = s.substr(3, s.size() - 4);
    std::string head = body, modulus_text;
    if (auto semi = body.find(';'); semi != std::string::npos) {
        head = body.substr(0, semi);
        std::string rest = body.substr(semi + 1);
        if (rest.rfind("modulus=", 0) != 0) return std::nullopt;
        modulus_text = rest.substr(8);
    }
    std::uint32_t p = 0;
    int m = 1;
    if (auto caret = head.find('^'); caret != std::string::npos) {
        try {
            p = static_cast<std::uint32_t>(std::stoul(head.substr(0, caret)));
            m = std::stoi(head.substr(caret + 1));
        } catch (...) { return std::nullopt; }
    } else {
        try { p = static_cast<std::uint32_t>(std::stoul(head)); } catch (...) { return std::nullopt; }
    }
    std::vector<std::uint32_t> modulus;
    if (!modulus_text.empty()) {
        // polynomial in x over F_p
        modulus.assign(static_cast<std::size_t>(m) + 1, 0);
        for (const auto& term : detail_io::signed_terms(modulus_text)) {
            bool neg = term[0] == '-';
            std::string t = term.substr(1);
            std::uint64_t coeff = 1;
            std::size_t i = 0;
            if (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
                coeff = 0;
                while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i])))
                    coeff = coeff * 10 + static_cast<std::uint64_t>(t[i++] - '0');
            }
            auto pw = detail_io::parse_power(std::string_view(t).substr(i), 'x');
            if (!pw || *pw > m) return std::nullopt;
            std::uint64_t c = coeff % p;
            if (neg) c = (p - c) % p;
            modulus[static_cast<std::size_t>(*pw)] =
                static_cast<std::uint32_t>((modulus[static_cast<std::size_t>(*pw)] + c) % p);
        }
    }
    try {
        return FieldSpec{false, FqCtx::get(p, m, modulus)};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline std::optional<const RingContext*> parse_ring_spec(std::string_view text) {
    const std::string s = detail_io::remove_spaces(text);
    if (s.rfind("M(", 0) != 0 || s.back() != ')') return std::nullopt;
    const std::string body = s.substr(2, s.size() - 3);
    const auto comma = body.find(',');
    if (comma == std::string::npos) return std::nullopt;
    int n = 0;
    try { n = std::stoi(body.substr(0, comma)); } catch (...) { return std::nullopt; }
    const std::string inner = body.substr(comma + 1);
    if (inner.rfind("quat(", 0) == 0 && inner.back() == ')') {
        const std::string args = inner.substr(5, inner.size() - 6);
        const auto c2 = args.find(',');
        if (c2 == std::string::npos) return std::nullopt;
        auto a = parse_rational(args.substr(0, c2));
        auto b = parse_rational(args.substr(c2 + 1));
        if (!a || !b) return std::nullopt;
        try {
            return RingContext::get(n, QuatCtx::get(*a, *b));
        } catch (const std::exception&) { return std::nullopt; }
    }
    auto fs = parse_field_spec(inner);
    if (!fs || fs->rationals) return std::nullopt;
    try {
        return RingContext::get(n, fs->fq);
    } catch (const std::exception&) { return std::nullopt; }
}

// --- element tokens ----------------------------------------------------------

inline std::optional<Fq> parse_fq_entry(const FqCtx* ctx, std::string_view token) {
    const std::string s = detail_io::remove_spaces(token);
    if (s.empty()) return std::nullopt;
    std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(ctx->m), 0);
    for (const auto& term : detail_io::signed_terms(s)) {
        bool neg = term[0] == '-';
        std::string t = term.substr(1);
        if (t.empty()) return std::nullopt;
        std::uint64_t coeff = 1;
        bool saw_digits = false;
        std::size_t i = 0;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
            if (!saw_digits) coeff = 0;
            saw_digits = true;
            coeff = coeff * 10 + static_cast<std::uint64_t>(t[i++] - '0');
        }
        auto pw = detail_io::parse_power(std::string_view(t).substr(i), 't');
        if (!pw || *pw >= ctx->m) return std::nullopt;
        (void)saw_digits;
        std::uint64_t c = coeff % ctx->p;
        if (neg) c = (ctx->p - c) % ctx->p;
        coeffs[static_cast<std::size_t>(*pw)] =
            static_cast<std::uint32_t>((coeffs[static_cast<std::size_t>(*pw)] + c) % ctx->p);
    }
    return Fq(ctx, std::vector<std::uint32_t>(coeffs));
}

inline std::optional<Quat> parse_quat_entry(const QuatCtx* ctx, std::string_view token) {
    const std::string s = detail_io::remove_spaces(token);
    if (s.empty()) return std::nullopt;
    Rational coord[4] = {Rational(0), Rational(0), Rational(0), Rational(0)};
    for (const auto& term : detail_io::signed_terms(s)) {
        const bool neg = term[0] == '-';
        std::string t = term.substr(1);
        if (t.empty()) return std::nullopt;
        int slot = 0;
        if (!t.empty() && (t.back() == 'i' || t.back() == 'j' || t.back() == 'k')) {
            slot = t.back() == 'i' ? 1 : (t.back() == 'j' ? 2 : 3);
            t.pop_back();
            if (!t.empty() && t.back() == '*') t.pop_back();
            if (t.empty()) t = "1";
        }
        auto r = parse_rational(t);
        if (!r) return std::nullopt;
        coord[slot] += neg ? -*r : *r;
    }
    return Quat(ctx, coord[0], coord[1], coord[2], coord[3]);
}

// --- matrices ----------------------------------------------------------------

using MatrixVariant = std::variant<DMatrix<Fq>, DMatrix<Quat>>;

inline const RingContext* ring_of(const MatrixVariant& v) {
    return std::visit([](const auto& m) { return m.ring; }, v);
}

template <class D>
std::string matrix_to_text(const DMatrix<D>& A) {
    std::ostringstream os;
    os << "ring: " << A.ring->spec_string() << "\n";
    for (int i = 0; i < A.ring->n; ++i) {
        for (int j = 0; j < A.ring->n; ++j) {
            if (j) os << " ";
            if constexpr (std::is_same_v<D, Fq>) os << A.m(i, j).to_string();
            else os << A.m(i, j).to_string();
        }
        os << "\n";
    }
    return os.str();
}

inline std::string matrix_to_text(const MatrixVariant& v) {
    return std::visit([](const auto& m) { return matrix_to_text(m); }, v);
}

inline MatrixVariant parse_matrix_text(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    while (std::getline(is, header)) {
        header = detail_io::strip(header);
        if (!header.empty() && header[0] != '#') break;
    }
    if (header.rfind("ring:", 0) != 0)
        throw std::invalid_argument("matrix file: missing 'ring:' header line");
    auto ring = parse_ring_spec(header.substr(5));
    if (!ring) throw std::invalid_argument("matrix file: unknown ring spec '" + detail_io::strip(header.substr(5)) + "'");
    const RingContext* r = *ring;

    std::vector<std::string> tokens;
    std::string tok;
    while (is >> tok)
        if (tok[0] != '#') tokens.push_back(tok);
    const std::size_t need = static_cast<std::size_t>(r->n) * static_cast<std::size_t>(r->n);
    if (tokens.size() != need) {
        std::ostringstream os;
        os << "matrix file: expected " << need << " entries for " << r->spec_string() << ", found " << tokens.size();
        throw std::invalid_argument(os.str());
    }
    if (r->is_fq()) {
        DMatrix<Fq> A = DMatrix<Fq>::zero(r);
        std::size_t t = 0;
        for (int i = 0; i < r->n; ++i)
            for (int j = 0; j < r->n; ++j) {
                auto e = parse_fq_entry(r->fq, tokens[t++]);
                if (!e) throw std::invalid_argument("matrix file: bad F_q entry '" + tokens[t - 1] + "'");
                A.m(i, j) = *e;
            }
        return A;
    }
    DMatrix<Quat> A = DMatrix<Quat>::zero(r);
    std::size_t t = 0;
    for (int i = 0; i < r->n; ++i)
        for (int j = 0; j < r->n; ++j) {
            auto e = parse_quat_entry(r->quat, tokens[t++]);
            if (!e) throw std::invalid_argument("matrix file: bad quaternion entry '" + tokens[t - 1] + "'");
            A.m(i, j) = *e;
        }
    return A;
}

// --- polynomials ---------------------------------------------------------------

inline std::string poly_to_text(const QPoly& f) { return "q[x]: " + f.to_string(); }
inline std::string poly_to_text(const FqPoly& f, const FqCtx* ctx) {
    return ctx->spec_string() + "[x]: " + f.to_string();
}

// parses "gf(2)[x]: 1 + x + x^3" or "q[x]: 1/2 + x"
inline std::variant<QPoly, FqPoly> parse_poly_text(const std::string& text) {
    const auto tagend = text.find("[x]:");
    if (tagend == std::string::npos) throw std::invalid_argument("polynomial: missing '[x]:' tag");
    auto fs = parse_field_spec(text.substr(0, tagend));
    if (!fs) throw std::invalid_argument("polynomial: unknown base field");
    const std::string body = detail_io::remove_spaces(text.substr(tagend + 4));
    if (body.empty()) throw std::invalid_argument("polynomial: empty body");

    auto terms = detail_io::signed_terms(body);
    if (fs->rationals) {
        std::vector<Rational> coeffs;
        for (const auto& term : terms) {
            const bool neg = term[0] == '-';
            std::string t = term.substr(1);
            // split optional coefficient and x-power at the last '*'
            std::string cs = t;
            int power = 0;
            if (auto xpos = t.find('x'); xpos != std::string::npos) {
                auto pw = detail_io::parse_power(std::string_view(t).substr(xpos == 0 ? 0 : xpos - (t[xpos - 1] == '*' ? 1 : 0)), 'x');
                if (!pw) throw std::invalid_argument("polynomial: bad term '" + term + "'");
                power = *pw;
                cs = xpos == 0 ? "1" : t.substr(0, xpos - (t[xpos - 1] == '*' ? 1 : 0));
                if (cs.empty()) cs = "1";
            }
            if (!cs.empty() && cs.front() == '(' && cs.back() == ')') cs = cs.substr(1, cs.size() - 2);
            auto r = parse_rational(cs);
            if (!r) throw std::invalid_argument("polynomial: bad coefficient '" + cs + "'");
            if (static_cast<int>(coeffs.size()) <= power) coeffs.resize(static_cast<std::size_t>(power) + 1, Rational(0));
            coeffs[static_cast<std::size_t>(power)] += neg ? -*r : *r;
        }
        return QPoly(std::move(coeffs));
    }

    const FqCtx* ctx = fs->fq;
    std::vector<Fq> coeffs;
    for (const auto& term : terms) {
        const bool neg = term[0] == '-';
        std::string t = term.substr(1);
        std::string cs = t;
        int power = 0;
        if (auto xpos = t.find('x'); xpos != std::string::npos) {
            auto pw = detail_io::parse_power(std::string_view(t).substr(xpos == 0 ? 0 : xpos - (t[xpos - 1] == '*' ? 1 : 0)), 'x');
            if (!pw) throw std::invalid_argument("polynomial: bad term '" + term + "'");
            power = *pw;
            cs = xpos == 0 ? "1" : t.substr(0, xpos - (t[xpos - 1] == '*' ? 1 : 0));
            if (cs.empty()) cs = "1";
        }
        if (!cs.empty() && cs.front() == '(' && cs.back() == ')') cs = cs.substr(1, cs.size() - 2);
        auto e = parse_fq_entry(ctx, cs);
        if (!e) throw std::invalid_argument("polynomial: bad coefficient '" + cs + "'");
        Fq c = neg ? -*e : *e;
        if (static_cast<int>(coeffs.size()) <= power) coeffs.resize(static_cast<std::size_t>(power) + 1, Fq::zero(ctx));
        coeffs[static_cast<std::size_t>(power)] = coeffs[static_cast<std::size_t>(power)] + c;
    }
    return FqPoly(std::move(coeffs));
}

} // namespace commgraph

#endif // COMMGRAPH_IO_HPP
