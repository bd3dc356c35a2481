#ifndef COMMGRAPH_RAT_FACTOR_HPP
#define COMMGRAPH_RAT_FACTOR_HPP

#include "commgraph/fq_factor.hpp"
#include "commgraph/poly.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace commgraph {

using QPoly = Poly<Rational>;

// Partial factor structure over Q. Full rational factorization is out of
// scope; what is provided is exactly what the witness constructions need:
//   - complete rational root extraction (candidate-divisor search),
//   - the quartic resolvent-cubic analysis, which either produces a
//     rational quadratic factorization, or proves irreducibility and
//     constructs explicit degree-2 elements of Q[x]/(f) when the quartic
//     field has a quadratic subfield,
//   - a proof of "no proper subfield" for quartics whose resolvent cubic
//     has no rational root.

struct RatRoots {
    std::vector<Rational> roots; // verified roots, each exact
    bool complete = true;        // false if divisor enumeration was truncated
};

namespace detail_ratfactor {

struct DivisorSet {
    std::vector<Integer> divisors;
    bool complete = true;
};

inline DivisorSet divisors_of(Integer n, std::size_t cap = 4096) {
    DivisorSet out;
    n = abs(n);
    if (n == 0) { out.complete = true; return out; }
    // trial division with single-word candidates; the cofactor beyond the
    // bound is kept whole (primality-tested for the completeness flag)
    std::vector<std::pair<Integer, int>> fac;
    const unsigned long bound = 65536;
    for (unsigned long d = 2; d <= bound; ++d) {
        if (mpz_cmp_ui(n.get_mpz_t(), d * d) < 0) break;
        if (mpz_fdiv_ui(n.get_mpz_t(), d) != 0) continue;
        int e = 0;
        while (mpz_fdiv_ui(n.get_mpz_t(), d) == 0) { n /= static_cast<long>(d); ++e; }
        fac.emplace_back(Integer(static_cast<long>(d)), e);
    }
    if (n > 1) {
        const bool small = mpz_cmp_ui(n.get_mpz_t(), bound) <= 0 ||
                           n < Integer(static_cast<long>(bound)) * static_cast<long>(bound);
        fac.emplace_back(n, 1);
        if (!small && mpz_probab_prime_p(n.get_mpz_t(), 40) == 0) {
            // composite cofactor: its internal divisors are not enumerated
            out.complete = false;
        }
    }
    out.divisors.push_back(1);
    for (auto& [p, e] : fac) {
        const std::size_t base = out.divisors.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) {
                if (out.divisors.size() >= cap) { out.complete = false; return out; }
                out.divisors.push_back(out.divisors[i] * pk);
            }
        }
    }
    return out;
}

} // namespace detail_ratfactor

// All rational roots of f (complete unless flagged otherwise); each returned
// root is verified by exact evaluation.
inline RatRoots rational_roots(const QPoly& f) {
    RatRoots out;
    if (f.is_zero() || f.is_constant()) return out;

    // clear denominators to a primitive integer polynomial
    Integer den = 1;
    for (int i = 0; i <= f.degree(); ++i) {
        Integer d = f.coeff(i).get_den();
        den = den / gcd(den, d) * d;
    }
    std::vector<Integer> ic;
    for (int i = 0; i <= f.degree(); ++i) {
        Rational t = f.coeff(i) * Rational(den);
        ic.push_back(t.get_num());
    }
    std::size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    if (low > 0) out.roots.push_back(Rational(0));
    if (ic.size() - low <= 1) return out;

    auto nums = detail_ratfactor::divisors_of(ic[low]);
    auto dens = detail_ratfactor::divisors_of(ic.back());
    out.complete = nums.complete && dens.complete;

    auto eval_int = [&](const Rational& r) {
        Rational s = 0;
        for (std::size_t i = ic.size(); i-- > low;) s = s * r + Rational(ic[i]);
        return s;
    };
    for (const auto& p : nums.divisors) {
        for (const auto& q : dens.divisors) {
            for (int sgn = 0; sgn < 2; ++sgn) {
                Rational r(sgn ? -p : p, q);
                r.canonicalize();
                if (eval_int(r) == 0 &&
                    std::find(out.roots.begin(), out.roots.end(), r) == out.roots.end())
                    out.roots.push_back(r);
            }
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

// Analysis of a squarefree monic rational polynomial. Splits are coprime by
// squarefreeness. subfield_generators are polynomials g (deg < deg f) such
// that, for any A with minimal polynomial f, g(A) generates a proper
// intermediate extension (degree 2); produced only in the quartic case.
struct RatMinpolyAnalysis {
    std::optional<std::pair<QPoly, QPoly>> split;
    std::vector<QPoly> subfield_generators;
    bool irreducible_proven = false;
    bool no_proper_subfield_proven = false;
};

namespace detail_ratfactor {

inline void try_quadratic_factor(const QPoly& f, const Rational& u, const Rational& v,
                                 RatMinpolyAnalysis& out) {
    if (out.split) return;
    QPoly g(std::vector<Rational>{v, -u, Rational(1)}); // x^2 - u x + v
    auto [q, r] = poly_divmod(f, g);
    if (r.is_zero()) out.split = std::make_pair(g, q);
}

} // namespace detail_ratfactor

inline RatMinpolyAnalysis analyze_squarefree_rational_minpoly(const QPoly& f0) {
    RatMinpolyAnalysis out;
    const QPoly f = f0.monic();
    const int d = f.degree();
    if (d <= 1) { out.irreducible_proven = (d == 1); return out; }

    RatRoots rr = rational_roots(f);
    if (!rr.roots.empty()) {
        QPoly lin = QPoly::linear_root(rr.roots.front());
        out.split = std::make_pair(lin, poly_div_exact(f, lin));
        return out;
    }
    if (d == 2 || d == 3) {
        out.irreducible_proven = rr.complete;
        out.no_proper_subfield_proven = rr.complete; // prime degree: no intermediate level
        return out;
    }
    if (d != 4) return out; // degree >= 5: nothing proven beyond the root search

    // quartic x^4 + p x^3 + q x^2 + r x + s; resolvent cubic
    //   y^3 - q y^2 + (pr - 4s) y - (p^2 s - 4 q s + r^2)
    const Rational p = f.coeff(3), q = f.coeff(2), r = f.coeff(1), s = f.coeff(0);
    QPoly resolvent(std::vector<Rational>{-(p * p * s - 4 * q * s + r * r), p * r - 4 * s, -q, Rational(1)});
    RatRoots ry = rational_roots(resolvent);

    for (const Rational& y : ry.roots) {
        // the pairing {a1,a2},{a3,a4} behind this root has
        //   u = a1 + a2 a root of z^2 + p z + (q - y),
        //   v = a1 a2 a root of z^2 - y z + s,
        // and any rational quadratic factor x^2 - u x + v of f shows up here
        QPoly uquad(std::vector<Rational>{q - y, p, Rational(1)});
        QPoly vquad(std::vector<Rational>{s, -y, Rational(1)});
        RatRoots uroots = rational_roots(uquad);
        RatRoots vroots = rational_roots(vquad);

        for (const Rational& u : uroots.roots) {
            if (2 * u + p != 0) {
                detail_ratfactor::try_quadratic_factor(f, u, (r + u * y) / (2 * u + p), out);
            } else {
                for (const Rational& v : vroots.roots)
                    detail_ratfactor::try_quadratic_factor(f, u, v, out);
            }
        }
        if (out.split) return out;

        // no rational factorization through this pairing: u or v generates
        // a genuine quadratic subfield of Q[x]/(f)
        if (!uroots.roots.empty()) {
            // u rational, v irrational: v = u*x - x^2 as an element of Q[x]/(f)
            const Rational& u = uroots.roots.front();
            out.subfield_generators.push_back(
                QPoly(std::vector<Rational>{Rational(0), u, Rational(-1)}));
        } else {
            // u irrational: solve u * (2x^2 + p x + y) = -(p x^2 + 2(q-y) x + r) in Q[x]/(f)
            QPoly denom(std::vector<Rational>{y, p, Rational(2)});
            auto [g, inv, junk] = poly_xgcd(denom, f);
            (void)junk;
            if (g.degree() > 0) {
                // the xgcd found a proper factor of f instead
                out.split = std::make_pair(g, poly_div_exact(f, g));
                return out;
            }
            QPoly num(std::vector<Rational>{-r, -2 * (q - y), -p});
            out.subfield_generators.push_back(poly_mod(num * inv, f));
        }
    }

    const bool searched_all = rr.complete && ry.complete;
    if (!out.split && searched_all) {
        out.irreducible_proven = true;
        if (ry.roots.empty()) out.no_proper_subfield_proven = true;
    }
    return out;
}

// Subfield obstruction for sextics via reduction mod p. If the monicized
// integer form of f is squarefree mod an odd prime p and factors there with
// degree multiset {5, 1}, the Frobenius at p acts on the roots as a 5-cycle
// with a fixed point. No permutation of that type preserves a partition of
// six points into blocks of size 2 or 3, so the splitting-field group has no
// block system: f is irreducible (given that the complete rational-root
// search found nothing) and Q[x]/(f) has no proper subfield. Returns the
// witness prime.
inline std::optional<std::uint32_t> sextic_no_subfield_witness_prime(const QPoly& f0) {
    const QPoly f = f0.monic();
    if (f.degree() != 6) return std::nullopt;
    // monic integer model: nu(y) = c^6 f(y/c), roots scaled by the common
    // denominator c (same field, same group)
    Integer c = 1;
    for (int i = 0; i <= 6; ++i) {
        Integer d = f.coeff(i).get_den();
        c = c / gcd(c, d) * d;
    }
    std::vector<Integer> nu(7);
    Integer ck = 1;
    for (int i = 6; i >= 0; --i) {
        Rational t = f.coeff(i) * Rational(ck);
        nu[static_cast<std::size_t>(i)] = t.get_num();
        ck *= c;
    }
    static const std::uint32_t primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                                           53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
                                           109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179};
    for (std::uint32_t p : primes) {
        const FqCtx* fp = FqCtx::get(p, 1);
        std::vector<Fq> coeffs;
        coeffs.reserve(7);
        for (int i = 0; i <= 6; ++i) {
            Integer r = nu[static_cast<std::size_t>(i)] % p;
            coeffs.emplace_back(fp, static_cast<long>(r.get_si()));
        }
        FqPoly red(std::move(coeffs));
        if (red.degree() != 6) continue; // p divides nothing here (monic), defensive
        auto fac = factor_fq(red, 17);
        bool squarefree = true;
        std::vector<int> degs;
        for (const auto& [g, e] : fac) {
            if (e > 1) squarefree = false;
            degs.push_back(g.degree());
        }
        if (!squarefree) continue;
        std::sort(degs.begin(), degs.end());
        if (degs == std::vector<int>{1, 5}) return p;
    }
    return std::nullopt;
}

} // namespace commgraph

#endif // COMMGRAPH_RAT_FACTOR_HPP
