#ifndef COMMGRAPH_FQ_HPP
#define COMMGRAPH_FQ_HPP

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace commgraph {

namespace detail_fp {

// Minimal F_p[t] helpers, self-contained so FqCtx can validate its own
// modulus without the full polynomial layer. Coefficients low -> high.
using FpPoly = std::vector<std::uint32_t>;

inline void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int fp_deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

inline FpPoly fp_mul(const FpPoly& f, const FpPoly& g, std::uint32_t p) {
    if (f.empty() || g.empty()) return {};
    FpPoly h(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            h[i + j] = static_cast<std::uint32_t>((h[i + j] + static_cast<std::uint64_t>(f[i]) * g[j]) % p);
    }
    fp_trim(h);
    return h;
}

inline std::uint32_t fp_inv_scalar(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on integers
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        std::int64_t q = r / newr;
        t -= q * newt; std::swap(t, newt);
        r -= q * newr; std::swap(r, newr);
    }
    if (r != 1) throw std::domain_error("fp_inv_scalar: not invertible");
    return static_cast<std::uint32_t>(((t % p) + p) % p);
}

inline FpPoly fp_mod(FpPoly f, const FpPoly& g, std::uint32_t p) {
    fp_trim(f);
    const int dg = fp_deg(g);
    if (dg < 0) throw std::domain_error("fp_mod: division by zero polynomial");
    const std::uint32_t lginv = fp_inv_scalar(g.back(), p);
    while (fp_deg(f) >= dg) {
        const int df = fp_deg(f);
        const std::uint64_t c = static_cast<std::uint64_t>(f.back()) * lginv % p;
        for (int i = 0; i <= dg; ++i) {
            std::uint64_t sub = c * g[i] % p;
            f[df - dg + i] = static_cast<std::uint32_t>((f[df - dg + i] + p - sub) % p);
        }
        fp_trim(f);
    }
    return f;
}

inline FpPoly fp_gcd(FpPoly f, FpPoly g, std::uint32_t p) {
    fp_trim(f); fp_trim(g);
    while (!g.empty()) {
        FpPoly r = fp_mod(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    if (!f.empty()) { // monic
        const std::uint32_t inv = fp_inv_scalar(f.back(), p);
        for (auto& c : f) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * inv % p);
    }
    return f;
}

inline FpPoly fp_mulmod(const FpPoly& f, const FpPoly& g, const FpPoly& mod, std::uint32_t p) {
    return fp_mod(fp_mul(f, g, p), mod, p);
}

// t^(p^e) mod f, by repeated p-th powering
inline FpPoly fp_frobenius_power(const FpPoly& mod, std::uint32_t p, unsigned e) {
    FpPoly x = {0, 1};
    FpPoly r = fp_mod(x, mod, p);
    for (unsigned s = 0; s < e; ++s) {
        // r <- r^p mod f via square-and-multiply on the exponent p
        FpPoly acc = {1};
        FpPoly base = r;
        std::uint32_t exp = p;
        while (exp > 0) {
            if (exp & 1u) acc = fp_mulmod(acc, base, mod, p);
            base = fp_mulmod(base, base, mod, p);
            exp >>= 1u;
        }
        r = std::move(acc);
    }
    return r;
}

inline bool fp_is_irreducible(const FpPoly& f, std::uint32_t p) {
    const int m = fp_deg(f);
    if (m < 1) return false;
    if (m == 1) return true;
    // Rabin: t^(p^m) == t mod f, and gcd(t^(p^(m/l)) - t, f) = 1 for prime l | m
    FpPoly xm = fp_frobenius_power(f, p, static_cast<unsigned>(m));
    FpPoly x = fp_mod({0, 1}, f, p);
    if (xm != x) return false;
    for (int l = 2; l <= m; ++l) {
        if (m % l != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= l; ++d) if (l % d == 0) { prime = false; break; }
        if (!prime) continue;
        FpPoly xe = fp_frobenius_power(f, p, static_cast<unsigned>(m / l));
        // xe - x
        FpPoly diff = xe;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
        fp_trim(diff);
        FpPoly g = fp_gcd(f, diff, p);
        if (fp_deg(g) != 0) return false;
    }
    return true;
}

} // namespace detail_fp

// Field descriptor for F_{p^m}. Immutable and interned: FqCtx::get returns a
// pointer that stays valid for the process lifetime, so elements can carry a
// raw pointer.
class FqCtx {
public:
    static constexpr int kMaxDegree = 8;

    std::uint32_t p;
    int m;
    std::vector<std::uint32_t> modulus; // monic, degree m, low -> high

    std::uint64_t q() const {
        std::uint64_t r = 1;
        for (int i = 0; i < m; ++i) r *= p;
        return r;
    }
    bool prime_field() const { return m == 1; }

    static bool is_small_prime(std::uint32_t p) {
        if (p < 2) return false;
        for (std::uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    // lexicographically first monic irreducible of degree m over F_p
    // (deterministic default modulus; no Conway table dependency)
    static std::vector<std::uint32_t> default_modulus(std::uint32_t p, int m) {
        if (m == 1) return {0, 1}; // t
        std::vector<std::uint32_t> f(static_cast<std::size_t>(m) + 1, 0);
        f[static_cast<std::size_t>(m)] = 1;
        std::uint64_t total = 1;
        for (int i = 0; i < m; ++i) total *= p;
        for (std::uint64_t c = 0; c < total; ++c) {
            std::uint64_t t = c;
            for (int i = 0; i < m; ++i) { f[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(t % p); t /= p; }
            if (detail_fp::fp_is_irreducible(f, p)) return f;
        }
        throw std::logic_error("default_modulus: no irreducible found"); // unreachable
    }

    static const FqCtx* get(std::uint32_t p, int m, std::vector<std::uint32_t> modulus = {}) {
        if (!is_small_prime(p)) throw std::invalid_argument("gf: characteristic must be a (small) prime");
        if (m < 1 || m > kMaxDegree) throw std::invalid_argument("gf: extension degree out of range");
        if (modulus.empty()) modulus = default_modulus(p, m);
        detail_fp::fp_trim(modulus);
        if (detail_fp::fp_deg(modulus) != m || modulus.back() % p != 1)
            throw std::invalid_argument("gf: modulus must be monic of degree m");
        for (auto& c : modulus) c %= p;
        if (m > 1 && !detail_fp::fp_is_irreducible(modulus, p))
            throw std::invalid_argument("gf: modulus is not irreducible over F_p");

        static std::mutex mu;
        static std::vector<std::unique_ptr<FqCtx>> registry;
        std::lock_guard<std::mutex> lock(mu);
        for (const auto& c : registry)
            if (c->p == p && c->m == m && c->modulus == modulus) return c.get();
        auto ctx = std::unique_ptr<FqCtx>(new FqCtx());
        ctx->p = p; ctx->m = m; ctx->modulus = std::move(modulus);
        registry.push_back(std::move(ctx));
        return registry.back().get();
    }

    std::string spec_string() const {
        std::ostringstream os;
        if (m == 1) { os << "gf(" << p << ")"; return os.str(); }
        os << "gf(" << p << "^" << m << "; modulus=";
        bool first = true;
        for (int i = 0; i <= m; ++i) {
            const std::uint32_t c = modulus[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            if (!first) os << "+";
            if (i == 0) os << c;
            else {
                if (c != 1) os << c << "*";
                os << "x";
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        os << ")";
        return os.str();
    }

private:
    FqCtx() = default;
};

// Element of F_{p^m}: residue polynomial of degree < m.
//
// A default-constructed element (or one made from a bare integer, as Eigen
// does for Scalar(0)/Scalar(1)) carries no field context; it behaves as the
// integer constant and adopts the field of the other operand on first
// contact.
class Fq {
public:
    Fq() : ctx_(nullptr), iconst_(0) { coeffs_.fill(0); }
    Fq(long v) : ctx_(nullptr), iconst_(v) { coeffs_.fill(0); } // NOLINT(google-explicit-constructor)
    Fq(int v) : Fq(static_cast<long>(v)) {}                     // NOLINT(google-explicit-constructor)

    Fq(const FqCtx* ctx, long v) : ctx_(ctx), iconst_(0) {
        coeffs_.fill(0);
        coeffs_[0] = mod_p(v);
    }
    Fq(const FqCtx* ctx, std::vector<std::uint32_t> coeffs) : ctx_(ctx), iconst_(0) {
        coeffs_.fill(0);
        if (static_cast<int>(coeffs.size()) > ctx->m) throw std::invalid_argument("Fq: too many coefficients");
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs_[i] = coeffs[i] % ctx->p;
    }

    static Fq zero(const FqCtx* ctx) { return Fq(ctx, 0L); }
    static Fq one(const FqCtx* ctx) { return Fq(ctx, 1L); }
    static Fq gen(const FqCtx* ctx) {
        if (ctx->m == 1) throw std::domain_error("Fq::gen: prime field has no extension generator");
        Fq r(ctx, 0L);
        r.coeffs_[1] = 1;
        return r;
    }

    const FqCtx* ctx() const { return ctx_; }
    bool has_ctx() const { return ctx_ != nullptr; }
    // lift a context-free constant into a concrete field
    Fq with_ctx(const FqCtx* ctx) const { return ctx_ ? *this : Fq(ctx, iconst_); }

    bool is_zero() const {
        if (!ctx_) return iconst_ == 0;
        for (int i = 0; i < ctx_->m; ++i) if (coeffs_[static_cast<std::size_t>(i)] != 0) return false;
        return true;
    }

    // canonical index in [0, q): sum coeffs[i] * p^i
    std::uint64_t index() const {
        require_ctx();
        std::uint64_t idx = 0;
        for (int i = ctx_->m - 1; i >= 0; --i) idx = idx * ctx_->p + coeffs_[static_cast<std::size_t>(i)];
        return idx;
    }
    static Fq from_index(const FqCtx* ctx, std::uint64_t idx) {
        Fq r(ctx, 0L);
        for (int i = 0; i < ctx->m; ++i) { r.coeffs_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(idx % ctx->p); idx /= ctx->p; }
        return r;
    }

    std::uint32_t coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

    friend Fq operator+(const Fq& a, const Fq& b) {
        const FqCtx* ctx = merged(a, b);
        if (!ctx) return Fq(a.iconst_ + b.iconst_);
        const Fq x = a.ctx_ ? a : Fq(ctx, a.iconst_);
        const Fq y = b.ctx_ ? b : Fq(ctx, b.iconst_);
        Fq r(ctx, 0L);
        for (int i = 0; i < ctx->m; ++i)
            r.coeffs_[static_cast<std::size_t>(i)] = (x.coeffs_[static_cast<std::size_t>(i)] + y.coeffs_[static_cast<std::size_t>(i)]) % ctx->p;
        return r;
    }
    friend Fq operator-(const Fq& a, const Fq& b) {
        const FqCtx* ctx = merged(a, b);
        if (!ctx) return Fq(a.iconst_ - b.iconst_);
        const Fq x = a.ctx_ ? a : Fq(ctx, a.iconst_);
        const Fq y = b.ctx_ ? b : Fq(ctx, b.iconst_);
        Fq r(ctx, 0L);
        for (int i = 0; i < ctx->m; ++i)
            r.coeffs_[static_cast<std::size_t>(i)] = (x.coeffs_[static_cast<std::size_t>(i)] + ctx->p - y.coeffs_[static_cast<std::size_t>(i)]) % ctx->p;
        return r;
    }
    friend Fq operator-(const Fq& a) {
        if (!a.ctx_) return Fq(-a.iconst_);
        return Fq(a.ctx_, 0L) - a;
    }
    friend Fq operator*(const Fq& a, const Fq& b) {
        const FqCtx* ctx = merged(a, b);
        if (!ctx) return Fq(a.iconst_ * b.iconst_);
        const Fq x = a.ctx_ ? a : Fq(ctx, a.iconst_);
        const Fq y = b.ctx_ ? b : Fq(ctx, b.iconst_);
        const std::uint32_t p = ctx->p;
        const int m = ctx->m;
        std::array<std::uint64_t, 2 * kMax> prod{};
        for (int i = 0; i < m; ++i) {
            if (x.coeffs_[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; j < m; ++j)
                prod[static_cast<std::size_t>(i + j)] += static_cast<std::uint64_t>(x.coeffs_[static_cast<std::size_t>(i)]) * y.coeffs_[static_cast<std::size_t>(j)];
        }
        // reduce mod modulus: t^m = -(modulus below m)
        for (int d = 2 * m - 2; d >= m; --d) {
            const std::uint64_t c = prod[static_cast<std::size_t>(d)] % p;
            if (c == 0) continue;
            prod[static_cast<std::size_t>(d)] = 0;
            for (int i = 0; i < m; ++i) {
                const std::uint64_t sub = c * ctx->modulus[static_cast<std::size_t>(i)] % p;
                prod[static_cast<std::size_t>(d - m + i)] += p - sub;
            }
        }
        Fq r(ctx, 0L);
        for (int i = 0; i < m; ++i) r.coeffs_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(prod[static_cast<std::size_t>(i)] % p);
        return r;
    }

    Fq inverse() const {
        require_ctx();
        if (is_zero()) throw std::domain_error("Fq: division by zero");
        // a^(q-2)
        Fq base = *this;
        Fq acc = one(ctx_);
        std::uint64_t e = ctx_->q() - 2;
        while (e > 0) {
            if (e & 1u) acc = acc * base;
            base = base * base;
            e >>= 1u;
        }
        return acc;
    }
    friend Fq operator/(const Fq& a, const Fq& b) {
        const FqCtx* ctx = merged(a, b);
        if (!ctx) {
            if (b.iconst_ == 0) throw std::domain_error("Fq: division by zero");
            if (a.iconst_ % b.iconst_ != 0) throw std::domain_error("Fq: context-free division is integral only");
            return Fq(a.iconst_ / b.iconst_);
        }
        const Fq x = a.ctx_ ? a : Fq(ctx, a.iconst_);
        const Fq y = b.ctx_ ? b : Fq(ctx, b.iconst_);
        return x * y.inverse();
    }

    Fq& operator+=(const Fq& o) { *this = *this + o; return *this; }
    Fq& operator-=(const Fq& o) { *this = *this - o; return *this; }
    Fq& operator*=(const Fq& o) { *this = *this * o; return *this; }
    Fq& operator/=(const Fq& o) { *this = *this / o; return *this; }

    friend bool operator==(const Fq& a, const Fq& b) {
        const FqCtx* ctx = merged(a, b);
        if (!ctx) return a.iconst_ == b.iconst_;
        const Fq x = a.ctx_ ? a : Fq(ctx, a.iconst_);
        const Fq y = b.ctx_ ? b : Fq(ctx, b.iconst_);
        return x.coeffs_ == y.coeffs_;
    }
    friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

    // element as polynomial in the residue generator t, no spaces:
    // "0", "1", "t", "1+t", "2+t^2"
    std::string to_string() const {
        if (!ctx_) return std::to_string(iconst_);
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i < ctx_->m; ++i) {
            const std::uint32_t c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            if (!first) os << "+";
            if (i == 0) os << c;
            else {
                if (c != 1) os << c << "*";
                os << "t";
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Fq& a) { return os << a.to_string(); }

private:
    static constexpr int kMax = FqCtx::kMaxDegree;

    static const FqCtx* merged(const Fq& a, const Fq& b) {
        if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_)
            throw std::invalid_argument("Fq: mixed field contexts");
        return a.ctx_ ? a.ctx_ : b.ctx_;
    }

    std::uint32_t mod_p(long v) const {
        const long p = static_cast<long>(ctx_->p);
        long r = v % p;
        if (r < 0) r += p;
        return static_cast<std::uint32_t>(r);
    }
    void require_ctx() const {
        if (!ctx_) throw std::logic_error("Fq: operation requires a field context");
    }

    const FqCtx* ctx_;
    long iconst_; // value when ctx_ == nullptr
    std::array<std::uint32_t, kMax> coeffs_;
};

} // namespace commgraph

namespace Eigen {

template <>
struct NumTraits<commgraph::Fq> : GenericNumTraits<commgraph::Fq> {
    typedef commgraph::Fq Real;
    typedef commgraph::Fq NonInteger;
    typedef commgraph::Fq Nested;
    typedef commgraph::Fq Literal;

    static inline Real epsilon() { return commgraph::Fq(0); }
    static inline Real dummy_precision() { return commgraph::Fq(0); }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 0,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 10,
        MulCost = 20
    };
};

} // namespace Eigen

#endif // COMMGRAPH_FQ_HPP
