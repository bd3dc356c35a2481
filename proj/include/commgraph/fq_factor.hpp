#ifndef COMMGRAPH_FQ_FACTOR_HPP
#define COMMGRAPH_FQ_FACTOR_HPP

#include "commgraph/poly.hpp"
#include "commgraph/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace commgraph {

using FqPoly = Poly<Fq>;
using FqFactor = std::pair<FqPoly, int>; // (monic irreducible, multiplicity)

namespace detail_factor {

inline const FqCtx* require_ctx(const FqPoly& f) {
    const FqCtx* ctx = detail_poly::ctx_of(f);
    if (!ctx) throw std::invalid_argument("factor: polynomial has no finite-field context");
    return ctx;
}

// x^(q^e) mod f by e rounds of q-powering
inline FqPoly x_poly(const FqCtx* ctx) {
    return FqPoly(std::vector<Fq>{Fq::zero(ctx), Fq::one(ctx)});
}

inline FqPoly frobenius_power(const FqPoly& f, const FqCtx* ctx, int e) {
    FqPoly h = poly_mod(x_poly(ctx), f);
    const Integer q(static_cast<unsigned long>(ctx->q()));
    for (int i = 0; i < e; ++i) h = poly_powmod(h, q, f);
    return h;
}

// squarefree decomposition: f = prod g_i^{e_i}, g_i squarefree, pairwise coprime
inline std::vector<FqFactor> squarefree_decompose(const FqPoly& f0) {
    const FqCtx* ctx = require_ctx(f0);
    const int p = static_cast<int>(ctx->p);
    FqPoly f = f0.monic();
    std::vector<FqFactor> out;
    if (f.degree() < 1) return out;

    FqPoly df = poly_derivative(f);
    if (df.is_zero()) {
        for (auto& [g, e] : squarefree_decompose(detail_poly::pth_root(f)))
            out.emplace_back(g, e * p);
        return out;
    }

    FqPoly c = poly_gcd(f, df);
    FqPoly w = poly_div_exact(f, c);
    int i = 1;
    while (w.degree() > 0) {
        FqPoly y = poly_gcd(w, c);
        FqPoly z = poly_div_exact(w, y);
        if (z.degree() > 0) out.emplace_back(z.monic(), i);
        c = poly_div_exact(c, y);
        w = std::move(y);
        ++i;
    }
    if (c.degree() > 0) {
        for (auto& [g, e] : squarefree_decompose(detail_poly::pth_root(c)))
            out.emplace_back(g, e * p);
    }
    return out;
}

// distinct-degree: f monic squarefree -> list of (product of irreducibles of degree d, d)
inline std::vector<std::pair<FqPoly, int>> distinct_degree(const FqPoly& f0) {
    const FqCtx* ctx = require_ctx(f0);
    const Integer q(static_cast<unsigned long>(ctx->q()));
    std::vector<std::pair<FqPoly, int>> out;
    FqPoly fstar = f0.monic();
    FqPoly h = poly_mod(x_poly(ctx), fstar);
    int d = 0;
    while (fstar.degree() >= 2 * (d + 1)) {
        ++d;
        h = poly_powmod(h, q, fstar);
        FqPoly hx = h - poly_mod(x_poly(ctx), fstar);
        FqPoly gd = poly_gcd(hx, fstar);
        if (gd.degree() > 0) {
            out.emplace_back(gd.monic(), d);
            fstar = poly_div_exact(fstar, gd);
            h = poly_mod(h, fstar);
        }
    }
    if (fstar.degree() > 0) out.emplace_back(fstar.monic(), fstar.degree());
    return out;
}

inline FqPoly random_poly_below(int deg, const FqCtx* ctx, Rng& rng) {
    std::vector<Fq> c(static_cast<std::size_t>(deg), Fq(0));
    for (auto& v : c) v = Fq::from_index(ctx, rng.below(ctx->q()));
    return FqPoly(std::move(c));
}

// Cantor-Zassenhaus equal-degree splitting of a product of irreducibles of
// degree d. Seeded and therefore deterministic per seed.
inline void equal_degree(const FqPoly& f, int d, const FqCtx* ctx, Rng& rng,
                         std::vector<FqPoly>& out) {
    if (f.degree() == d) { out.push_back(f.monic()); return; }
    if (f.degree() <= 0) return;

    while (true) {
        FqPoly r = random_poly_below(f.degree(), ctx, rng);
        if (r.is_zero()) continue;
        FqPoly g;
        if (ctx->p == 2) {
            // trace map to F_2: r + r^2 + r^4 + ... over m*d squarings
            FqPoly t = poly_mod(r, f);
            FqPoly acc = t;
            const int rounds = ctx->m * d;
            for (int s = 1; s < rounds; ++s) {
                t = poly_mod(t * t, f);
                acc = acc + t;
            }
            g = poly_gcd(acc, f);
        } else {
            Integer e = 1;
            for (int s = 0; s < d; ++s) e *= static_cast<unsigned long>(ctx->q());
            e = (e - 1) / 2;
            FqPoly pw = poly_powmod(r, e, f);
            g = poly_gcd(pw - FqPoly::constant(Fq::one(ctx)), f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, ctx, rng, out);
            equal_degree(poly_div_exact(f, g), d, ctx, rng, out);
            return;
        }
    }
}

inline bool poly_less(const FqPoly& a, const FqPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        const std::uint64_t ia = a.coeff(i).has_ctx() ? a.coeff(i).index() : 0;
        const std::uint64_t ib = b.coeff(i).has_ctx() ? b.coeff(i).index() : 0;
        if (ia != ib) return ia < ib;
    }
    return false;
}

} // namespace detail_factor

// Irreducibility over F_q (Rabin's test). f nonconstant.
inline bool irreducible_fq(const FqPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("irreducible_fq: constant polynomial");
    const FqCtx* ctx = detail_factor::require_ctx(f);
    const int n = f.degree();
    if (n == 1) return true;
    const FqPoly fm = f.monic();
    const FqPoly x = poly_mod(detail_factor::x_poly(ctx), fm);
    FqPoly xn = detail_factor::frobenius_power(fm, ctx, n);
    if (xn != x) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= l; ++d) if (l % d == 0) { prime = false; break; }
        if (!prime) continue;
        FqPoly xe = detail_factor::frobenius_power(fm, ctx, n / l);
        if (poly_gcd(xe - x, fm).degree() != 0) return false;
    }
    return true;
}

// Full factorization over F_q: squarefree -> distinct-degree -> equal-degree.
// Result is sorted (degree, then coefficient indexes), so it is deterministic
// regardless of the seed; the seed only affects the internal splitting walk.
inline std::vector<FqFactor> factor_fq(const FqPoly& f, std::uint64_t seed = 1) {
    if (f.is_zero()) throw std::invalid_argument("factor_fq: zero polynomial");
    const FqCtx* ctx = detail_factor::require_ctx(f);
    std::vector<FqFactor> out;
    if (f.degree() < 1) return out;
    Rng rng(seed ^ 0xC0FFEE123456789ULL);
    for (auto& [g, e] : detail_factor::squarefree_decompose(f)) {
        for (auto& [prod, d] : detail_factor::distinct_degree(g)) {
            std::vector<FqPoly> irr;
            detail_factor::equal_degree(prod, d, ctx, rng, irr);
            for (auto& h : irr) out.emplace_back(std::move(h), e);
        }
    }
    std::sort(out.begin(), out.end(), [](const FqFactor& a, const FqFactor& b) {
        return detail_factor::poly_less(a.first, b.first);
    });
    return out;
}

// lexicographically first monic irreducible of degree d over F_q
inline FqPoly find_irreducible_fq(const FqCtx* ctx, int d) {
    if (d < 1) throw std::invalid_argument("find_irreducible_fq: degree must be >= 1");
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= ctx->q();
    for (std::uint64_t c = 0; c < total; ++c) {
        std::vector<Fq> coeffs(static_cast<std::size_t>(d) + 1, Fq::zero(ctx));
        std::uint64_t t = c;
        for (int i = 0; i < d; ++i) { coeffs[static_cast<std::size_t>(i)] = Fq::from_index(ctx, t % ctx->q()); t /= ctx->q(); }
        coeffs[static_cast<std::size_t>(d)] = Fq::one(ctx);
        FqPoly f(std::move(coeffs));
        if (irreducible_fq(f)) return f;
    }
    throw std::logic_error("find_irreducible_fq: none found"); // unreachable
}

} // namespace commgraph

#endif // COMMGRAPH_FQ_FACTOR_HPP
