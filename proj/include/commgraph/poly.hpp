#ifndef COMMGRAPH_POLY_HPP
#define COMMGRAPH_POLY_HPP

#include "commgraph/fq.hpp"
#include "commgraph/rational.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace commgraph {

// Dense univariate polynomial over a field scalar K (Rational or Fq).
// Coefficients are stored low -> high and kept canonical: no trailing
// zeros, the zero polynomial has an empty coefficient vector.
template <class K>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly zero() { return Poly(); }
    static Poly constant(K v) { return Poly(std::vector<K>{std::move(v)}); }
    static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }
    // x - c
    static Poly linear_root(const K& c) { return Poly(std::vector<K>{K(0) - c, K(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const K& leading() const {
        if (c_.empty()) throw std::domain_error("Poly: zero polynomial has no leading coefficient");
        return c_.back();
    }
    const K& coeff(int i) const {
        static const K kZero = K(0);
        if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
        return c_[static_cast<std::size_t>(i)];
    }
    const std::vector<K>& coeffs() const { return c_; }

    bool is_monic() const { return !c_.empty() && c_.back() == K(1); }
    Poly monic() const {
        if (c_.empty()) return *this;
        Poly r = *this;
        const K inv = K(1) / c_.back();
        for (auto& v : r.c_) v = v * inv;
        return r;
    }

    friend Poly operator+(const Poly& f, const Poly& g) {
        std::vector<K> r(std::max(f.c_.size(), g.c_.size()), K(0));
        for (std::size_t i = 0; i < f.c_.size(); ++i) r[i] = r[i] + f.c_[i];
        for (std::size_t i = 0; i < g.c_.size(); ++i) r[i] = r[i] + g.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& f, const Poly& g) {
        std::vector<K> r(std::max(f.c_.size(), g.c_.size()), K(0));
        for (std::size_t i = 0; i < f.c_.size(); ++i) r[i] = r[i] + f.c_[i];
        for (std::size_t i = 0; i < g.c_.size(); ++i) r[i] = r[i] - g.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& f) { return Poly() - f; }
    friend Poly operator*(const Poly& f, const Poly& g) {
        if (f.is_zero() || g.is_zero()) return Poly();
        std::vector<K> r(f.c_.size() + g.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < f.c_.size(); ++i) {
            if (f.c_[i] == K(0)) continue;
            for (std::size_t j = 0; j < g.c_.size(); ++j)
                r[i + j] = r[i + j] + f.c_[i] * g.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& f, const K& s) {
        Poly r = f;
        for (auto& v : r.c_) v = v * s;
        r.trim();
        return r;
    }

    friend bool operator==(const Poly& f, const Poly& g) {
        if (f.c_.size() != g.c_.size()) return false;
        for (std::size_t i = 0; i < f.c_.size(); ++i)
            if (!(f.c_[i] == g.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& f, const Poly& g) { return !(f == g); }

    K eval(const K& x0) const {
        K r = K(0);
        for (int i = degree(); i >= 0; --i) r = r * x0 + c_[static_cast<std::size_t>(i)];
        return r;
    }

    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i <= degree(); ++i) {
            const K& c = c_[static_cast<std::size_t>(i)];
            if (c == K(0)) continue;
            if (!first) os << " + ";
            const std::string cs = coeff_string(c);
            if (i == 0) os << cs;
            else {
                if (cs != "1") os << maybe_paren(cs) << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << f.to_string(); }

private:
    static std::string coeff_string(const K& c) {
        if constexpr (std::is_same_v<K, Rational>) return commgraph::to_string(c);
        else return c.to_string();
    }
    static std::string maybe_paren(const std::string& s) {
        if (s.find('+') != std::string::npos || s.find('-') != std::string::npos) return "(" + s + ")";
        return s;
    }
    void trim() {
        while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
    }

    std::vector<K> c_;
};

using FqPoly = Poly<Fq>;
using QPoly = Poly<Rational>;

// Attach a concrete field context to every coefficient. Dependence
// coefficients coming out of echelon computations can be context-free
// integer constants; all downstream F_q arithmetic needs the context.
inline QPoly with_scalar_ctx(QPoly f, const Rational&) { return f; }
inline FqPoly with_scalar_ctx(const FqPoly& f, const Fq& sample) {
    if (!sample.has_ctx()) return f;
    std::vector<Fq> c;
    c.reserve(static_cast<std::size_t>(f.degree()) + 1);
    for (int i = 0; i <= f.degree(); ++i) c.push_back(f.coeff(i).with_ctx(sample.ctx()));
    return FqPoly(std::move(c));
}

// quotient and remainder; divisor must be nonzero
template <class K>
std::pair<Poly<K>, Poly<K>> poly_divmod(const Poly<K>& f, const Poly<K>& g) {
    if (g.is_zero()) throw std::domain_error("poly_divmod: division by zero polynomial");
    std::vector<K> r(f.coeffs());
    const int dg = g.degree();
    const K lginv = K(1) / g.leading();
    std::vector<K> q(std::max<std::size_t>(
                         f.degree() >= dg ? static_cast<std::size_t>(f.degree() - dg + 1) : 0, 0),
                     K(0));
    int dr = static_cast<int>(r.size()) - 1;
    while (dr >= 0 && r[static_cast<std::size_t>(dr)] == K(0)) --dr;
    while (dr >= dg) {
        const K c = r[static_cast<std::size_t>(dr)] * lginv;
        q[static_cast<std::size_t>(dr - dg)] = c;
        for (int i = 0; i <= dg; ++i)
            r[static_cast<std::size_t>(dr - dg + i)] = r[static_cast<std::size_t>(dr - dg + i)] - c * g.coeff(i);
        while (dr >= 0 && r[static_cast<std::size_t>(dr)] == K(0)) --dr;
    }
    r.resize(static_cast<std::size_t>(dr + 1));
    return {Poly<K>(std::move(q)), Poly<K>(std::move(r))};
}

template <class K>
Poly<K> poly_mod(const Poly<K>& f, const Poly<K>& g) { return poly_divmod(f, g).second; }

// exact division; throws if the remainder is nonzero
template <class K>
Poly<K> poly_div_exact(const Poly<K>& f, const Poly<K>& g) {
    auto [q, r] = poly_divmod(f, g);
    if (!r.is_zero()) throw std::logic_error("poly_div_exact: division is not exact");
    return q;
}

// monic gcd; gcd(f, 0) = monic(f)
template <class K>
Poly<K> poly_gcd(Poly<K> f, Poly<K> g) {
    while (!g.is_zero()) {
        Poly<K> r = poly_mod(f, g);
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

// extended gcd: returns (g, u, v) with u*f + v*h = g, g monic
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> poly_xgcd(const Poly<K>& f, const Poly<K>& h) {
    Poly<K> r0 = f, r1 = h;
    Poly<K> u0 = Poly<K>::constant(K(1)), u1;
    Poly<K> v0, v1 = Poly<K>::constant(K(1));
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(r0, r1);
        r0 = std::move(r1); r1 = std::move(r);
        Poly<K> u2 = u0 - q * u1; u0 = std::move(u1); u1 = std::move(u2);
        Poly<K> v2 = v0 - q * v1; v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) return {r0, u0, v0};
    const K inv = K(1) / r0.leading();
    return {r0 * inv, u0 * inv, v0 * inv};
}

template <class K>
Poly<K> poly_derivative(const Poly<K>& f) {
    if (f.degree() < 1) return Poly<K>();
    std::vector<K> r(static_cast<std::size_t>(f.degree()), K(0));
    for (int i = 1; i <= f.degree(); ++i) {
        K m = K(0);
        for (int t = 0; t < i; ++t) m = m + K(1); // i as a field element (handles char p)
        r[static_cast<std::size_t>(i - 1)] = f.coeff(i) * m;
    }
    return Poly<K>(std::move(r));
}

template <class K>
Poly<K> poly_powmod(Poly<K> base, Integer e, const Poly<K>& mod) {
    Poly<K> acc = Poly<K>::constant(K(1));
    base = poly_mod(base, mod);
    while (e > 0) {
        if (mpz_tstbit(e.get_mpz_t(), 0)) acc = poly_mod(acc * base, mod);
        base = poly_mod(base * base, mod);
        e >>= 1;
    }
    return acc;
}

namespace detail_poly {

inline const FqCtx* ctx_of(const Poly<Fq>& f) {
    for (const auto& c : f.coeffs())
        if (c.has_ctx()) return c.ctx();
    return nullptr;
}

// p-th root of f = h(x^p) over F_{p^m}; coefficient roots are a^(p^(m-1))
inline Poly<Fq> pth_root(const Poly<Fq>& f) {
    const FqCtx* ctx = ctx_of(f);
    if (!ctx) throw std::logic_error("pth_root: polynomial has no field context");
    const std::uint32_t p = ctx->p;
    std::vector<Fq> r;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) {
        Fq c = f.coeff(i);
        for (int t = 0; t < ctx->m - 1; ++t) {
            Fq acc = c;
            for (std::uint32_t s = 1; s < p; ++s) acc = acc * c;
            c = acc; // c^p
        }
        r.push_back(c);
    }
    return Poly<Fq>(std::move(r));
}

template <class K>
constexpr bool is_char_zero() { return std::is_same_v<K, Rational>; }

} // namespace detail_poly

// Squarefree part (radical) of a nonzero polynomial, with char-p handling:
// when f' = 0, f = h(x^p) and we recurse on the p-th root; primes whose
// multiplicity is divisible by p are recovered from the gcd cofactor.
// Also reports whether f itself was squarefree.
template <class K>
std::pair<Poly<K>, bool> squarefree_part(const Poly<K>& f) {
    if (f.is_zero()) throw std::domain_error("squarefree_part: zero polynomial");
    if (f.is_constant()) return {Poly<K>::constant(K(1)), true};

    const Poly<K> fm = f.monic();
    const Poly<K> df = poly_derivative(fm);

    if (df.is_zero()) {
        // char p only
        if constexpr (detail_poly::is_char_zero<K>()) {
            throw std::logic_error("squarefree_part: zero derivative in characteristic 0");
        } else {
            auto [rad, sf] = squarefree_part(detail_poly::pth_root(fm));
            (void)sf;
            return {rad, false};
        }
    }

    Poly<K> g = poly_gcd(fm, df);
    if (g.degree() == 0) return {fm, true};

    Poly<K> w = poly_div_exact(fm, g); // primes with multiplicity not divisible by char
    // strip w-primes from g; what survives is a perfect p-th power part
    while (true) {
        Poly<K> d = poly_gcd(g, w);
        if (d.degree() == 0) break;
        g = poly_div_exact(g, d);
    }
    if (g.degree() == 0) return {w.monic(), false};
    if constexpr (detail_poly::is_char_zero<K>()) {
        throw std::logic_error("squarefree_part: unexpected residual factor in characteristic 0");
    } else {
        auto [rest, sf] = squarefree_part(detail_poly::pth_root(g));
        (void)sf;
        return {(w * rest).monic(), false};
    }
}

// Split lcm(f, g) into coprime parts: returns (f1, g1), f1 | f, g1 | g,
// f1 * g1 = lcm(f, g), gcd(f1, g1) = 1. Uses only gcds and exact division.
template <class K>
std::pair<Poly<K>, Poly<K>> coprime_split(const Poly<K>& f, const Poly<K>& g) {
    const Poly<K> fm = f.monic(), gm = g.monic();
    const Poly<K> d = poly_gcd(fm, gm);
    Poly<K> fpart = poly_div_exact(fm, d); // primes where mult_f > mult_g (partial exponents)
    // f1 = full f-exponent part of f supported on fpart's primes
    Poly<K> rest = fm;
    while (true) {
        Poly<K> c = poly_gcd(rest, fpart);
        if (c.degree() == 0) break;
        rest = poly_div_exact(rest, c);
    }
    Poly<K> f1 = poly_div_exact(fm, rest).monic();
    // g1 = part of g coprime to f1
    Poly<K> g1 = gm;
    while (true) {
        Poly<K> c = poly_gcd(g1, f1);
        if (c.degree() == 0) break;
        g1 = poly_div_exact(g1, c);
    }
    return {f1, g1.monic()};
}

template <class K>
Poly<K> poly_lcm(const Poly<K>& f, const Poly<K>& g) {
    if (f.is_zero() || g.is_zero()) return Poly<K>();
    return poly_div_exact(f * g, poly_gcd(f, g)).monic();
}

} // namespace commgraph

#endif // COMMGRAPH_POLY_HPP
