#ifndef COMMGRAPH_ANALYZER_HPP
#define COMMGRAPH_ANALYZER_HPP

#include "commgraph/centralizer.hpp"
#include "commgraph/fq_factor.hpp"
#include "commgraph/frobenius.hpp"
#include "commgraph/rat_factor.hpp"
#include "commgraph/ring.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace commgraph {

enum class AlgebraKind { FIELD, SEMISIMPLE_NON_FIELD, NON_SEMISIMPLE };
enum class Tri { Yes, No, Unknown };

inline const char* to_string(AlgebraKind k) {
    switch (k) {
        case AlgebraKind::FIELD: return "FIELD";
        case AlgebraKind::SEMISIMPLE_NON_FIELD: return "SEMISIMPLE_NON_FIELD";
        default: return "NON_SEMISIMPLE";
    }
}
inline const char* to_string(Tri t) {
    switch (t) {
        case Tri::Yes: return "true";
        case Tri::No: return "false";
        default: return "unknown";
    }
}

// Classification of <A> = F[A] plus the constructive witnesses: a noncentral
// E with E^2 = E or N with N^2 = 0 commuting with A, whenever one of the
// proof branches applies.
template <class D>
struct AlgebraReport {
    using F = typename ring_traits<D>::F;

    Poly<F> minpoly;
    int dim = 0; // deg minpoly = dim_F <A>
    AlgebraKind kind = AlgebraKind::FIELD;
    bool kind_exact = true; // always true over F_q; over Q, true when proven
    Tri derogatory = Tri::Unknown;
    std::optional<DMatrix<D>> witness;
    std::string witness_origin; // which branch produced it

    // factor data when available
    std::vector<FqFactor> fq_factors;                       // F_q case
    std::optional<std::pair<QPoly, QPoly>> coprime_split;   // Q case, if discovered
    std::vector<QPoly> subfield_generators;                 // Q quartic case
    bool no_proper_subfield_proven = false;                 // Q quartic S4/A4 certificate

    int centralizer_dim = -1; // filled when the cascade needed it
};

// --- witness builders --------------------------------------------------------

// nonzero nilpotent reduced to index 2 by repeated squaring
template <class D>
DMatrix<D> reduce_to_index2(DMatrix<D> J) {
    if (is_zero(J)) throw std::logic_error("reduce_to_index2: zero input");
    while (!is_zero(mat_mul(J, J))) J = mat_mul(J, J);
    return J;
}

// J = g(A) with g the squarefree part of the (non-squarefree) minimal
// polynomial; then power-reduced to index exactly 2
template <class D>
DMatrix<D> radical_nilpotent(const DMatrix<D>& A, const AlgebraReport<D>& report) {
    if (report.kind != AlgebraKind::NON_SEMISIMPLE)
        throw std::invalid_argument("radical_nilpotent: minimal polynomial is squarefree, radical is zero");
    auto [g, was_sf] = squarefree_part(report.minpoly);
    (void)was_sf;
    DMatrix<D> J = eval_poly(g, A);
    if (is_zero(J)) throw std::logic_error("radical_nilpotent: squarefree part annihilates A");
    J = reduce_to_index2(J);
    return J;
}

// E = (v f2)(A) from a Bezout identity u f1 + v f2 = 1 for a coprime split
// minpoly = f1 f2
template <class D>
DMatrix<D> crt_idempotent_from_split(const DMatrix<D>& A, const Poly<typename ring_traits<D>::F>& f1,
                                     const Poly<typename ring_traits<D>::F>& f2) {
    auto [g, u, v] = poly_xgcd(f1, f2);
    if (g.degree() != 0) throw std::invalid_argument("crt_idempotent: factors are not coprime");
    (void)u;
    DMatrix<D> E = eval_poly<D>((v * f2), A);
    if (!is_idempotent(E) || is_central(E))
        throw std::logic_error("crt_idempotent: verification failed");
    return E;
}

template <class D>
DMatrix<D> crt_idempotent(const DMatrix<D>& A, const AlgebraReport<D>& report) {
    if (report.kind != AlgebraKind::SEMISIMPLE_NON_FIELD)
        throw std::invalid_argument("crt_idempotent: need a semisimple non-field algebra");
    if constexpr (std::is_same_v<D, Fq>) {
        const FqPoly f1 = report.fq_factors.front().first;
        const FqPoly f2 = poly_div_exact(report.minpoly, f1);
        return crt_idempotent_from_split(A, f1, f2);
    } else {
        if (!report.coprime_split) throw std::invalid_argument("crt_idempotent: no split available");
        return crt_idempotent_from_split(A, report.coprime_split->first, report.coprime_split->second);
    }
}

// Field-entry case: block idempotent from the Frobenius form,
// E = S^{-1} (I_{C_1} + 0 + ... + 0) S.
inline DMatrix<Fq> derogatory_idempotent_field(const DMatrix<Fq>& A) {
    auto form = frobenius_form(A.m);
    if (form.block_count() < 2)
        throw std::domain_error("derogatory_idempotent: matrix is nonderogatory");
    const int n = A.ring->n;
    DenseMat<Fq> E0 = DenseMat<Fq>::Constant(n, n, Fq::zero(A.ring->fq));
    for (int i = 0; i < form.block_sizes[0]; ++i) E0(i, i) = Fq::one(A.ring->fq);
    DMatrix<Fq> E(A.ring, form.similarity_inv * E0 * form.similarity);
    if (!is_idempotent(E) || is_central(E) || !commutes(A, E))
        throw std::logic_error("derogatory_idempotent: verification failed");
    return E;
}

// --- randomized witness search in a centralizer (quaternion cascade) --------

struct WitnessSearchConfig {
    std::uint64_t seed = 1;
    int draws = 64;
    long height = 2;
    bool enable_subfield_hop = true;
};

// Draw random Y in span(C), inspect the factor structure of minpoly(Y) that
// is discoverable over Q, and pull a CRT idempotent or radical nilpotent out
// of Q[Y]. Sound (every returned witness is verified); incomplete.
inline std::optional<std::pair<DMatrix<Quat>, std::string>> search_witness_in_centralizer(
    const DMatrix<Quat>& A, const CentralizerBasis<Quat>& C, const WitnessSearchConfig& cfg) {
    Rng rng(cfg.seed ^ 0x51ce915ab1fbd2c4ULL);
    const int dim = C.dim();
    if (dim <= 1) return std::nullopt;

    auto inspect = [&](const DMatrix<Quat>& Y) -> std::optional<std::pair<DMatrix<Quat>, std::string>> {
        if (is_central(Y)) return std::nullopt;
        // direct membership first: basis elements are frequently already
        // idempotent or nilpotent
        if (is_idempotent(Y)) return std::make_pair(Y, "idempotent element of C(A)");
        DMatrix<Quat> Y2 = mat_mul(Y, Y);
        if (is_zero(Y2)) return std::make_pair(Y, "nilpotent element of C(A)");

        const QPoly mu = minpoly(Y);
        auto [sf, is_sf] = squarefree_part(mu);
        (void)sf;
        if (!is_sf) {
            AlgebraReport<Quat> stub;
            stub.kind = AlgebraKind::NON_SEMISIMPLE;
            stub.minpoly = mu;
            DMatrix<Quat> J = radical_nilpotent(Y, stub);
            if (!is_central(J) && commutes(A, J)) return std::make_pair(J, "radical nilpotent in Q[Y], Y in C(A)");
            return std::nullopt;
        }
        auto analysis = analyze_squarefree_rational_minpoly(mu);
        if (analysis.split) {
            DMatrix<Quat> E = crt_idempotent_from_split(Y, analysis.split->first, analysis.split->second);
            if (commutes(A, E)) return std::make_pair(E, "CRT idempotent in Q[Y], Y in C(A)");
        }
        return std::nullopt;
    };

    // deterministic pass over the basis itself, then seeded random combos
    for (int s = 0; s < dim; ++s)
        if (auto w = inspect(C.element(s))) return w;

    for (int t = 0; t < cfg.draws; ++t) {
        DenseVec<Rational> coeffs(dim);
        bool all_zero = true;
        for (int s = 0; s < dim; ++s) {
            const long c = rng.range(-cfg.height, cfg.height);
            coeffs(s) = Rational(c);
            if (c != 0) all_zero = false;
        }
        if (all_zero) continue;
        DenseVec<Rational> flat = DenseVec<Rational>::Constant(A.ring->flat_dim(), Rational(0));
        for (int s = 0; s < dim; ++s)
            if (coeffs(s) != 0) flat += C.basis[static_cast<std::size_t>(s)] * coeffs(s);
        make_primitive_integer(flat);
        if (auto w = inspect(unflatten<Quat>(A.ring, flat))) return w;
    }
    return std::nullopt;
}

// --- classify ----------------------------------------------------------------

template <class D>
AlgebraReport<D> classify(const DMatrix<D>& A, const WitnessSearchConfig& cfg = {});

template <>
inline AlgebraReport<Fq> classify<Fq>(const DMatrix<Fq>& A, const WitnessSearchConfig& cfg) {
    if (is_central(A)) throw std::invalid_argument("classify: central input is not a vertex");
    AlgebraReport<Fq> rep;
    rep.minpoly = minpoly(A);
    rep.dim = rep.minpoly.degree();
    rep.fq_factors = factor_fq(rep.minpoly, cfg.seed);
    rep.kind_exact = true;

    bool squarefree = true;
    for (const auto& [f, e] : rep.fq_factors) { (void)f; if (e > 1) squarefree = false; }
    if (!squarefree) rep.kind = AlgebraKind::NON_SEMISIMPLE;
    else if (rep.fq_factors.size() >= 2) rep.kind = AlgebraKind::SEMISIMPLE_NON_FIELD;
    else rep.kind = AlgebraKind::FIELD;

    rep.derogatory = (rep.dim < A.ring->n) ? Tri::Yes : Tri::No;

    if (rep.kind == AlgebraKind::NON_SEMISIMPLE) {
        rep.witness = radical_nilpotent(A, rep);
        rep.witness_origin = "radical nilpotent (squarefree defect of minpoly)";
    } else if (rep.kind == AlgebraKind::SEMISIMPLE_NON_FIELD) {
        rep.witness = crt_idempotent(A, rep);
        rep.witness_origin = "CRT idempotent (Bezout on coprime factors)";
    } else if (rep.derogatory == Tri::Yes) {
        rep.witness = derogatory_idempotent_field(A);
        rep.witness_origin = "Frobenius-form block idempotent";
    }
    return rep;
}

template <>
inline AlgebraReport<Quat> classify<Quat>(const DMatrix<Quat>& A, const WitnessSearchConfig& cfg) {
    if (is_central(A)) throw std::invalid_argument("classify: central input is not a vertex");
    AlgebraReport<Quat> rep;
    rep.minpoly = minpoly(A);
    rep.dim = rep.minpoly.degree();

    auto [sf, is_sf] = squarefree_part(rep.minpoly);
    (void)sf;
    if (!is_sf) {
        rep.kind = AlgebraKind::NON_SEMISIMPLE;
        rep.kind_exact = true; // squarefree defect is decided exactly by gcd
        rep.witness = radical_nilpotent(A, rep);
        rep.witness_origin = "radical nilpotent (squarefree defect of minpoly)";
        rep.derogatory = Tri::Unknown;
        return rep;
    }

    auto analysis = analyze_squarefree_rational_minpoly(rep.minpoly);
    rep.subfield_generators = analysis.subfield_generators;
    rep.no_proper_subfield_proven = analysis.no_proper_subfield_proven;

    if (analysis.split) {
        rep.kind = AlgebraKind::SEMISIMPLE_NON_FIELD;
        rep.kind_exact = true; // a verified split proves reducibility
        rep.coprime_split = analysis.split;
        rep.witness = crt_idempotent(A, rep);
        rep.witness_origin = "CRT idempotent (discovered rational split)";
        rep.derogatory = Tri::Yes; // commutes with the noncentral idempotent
        return rep;
    }

    rep.kind = AlgebraKind::FIELD;
    rep.kind_exact = analysis.irreducible_proven;

    // sextic anchors: a mod-p Frobenius cycle type (5,1) proves both
    // irreducibility and the absence of proper subfields
    if (rep.dim == 6 && !rep.no_proper_subfield_proven) {
        RatRoots rr = rational_roots(rep.minpoly);
        if (rr.complete && rr.roots.empty()) {
            if (auto p5 = sextic_no_subfield_witness_prime(rep.minpoly)) {
                (void)p5;
                rep.kind_exact = true;
                rep.no_proper_subfield_proven = true;
            }
        }
    }

    // derogatory cascade: compare dim C(A) with dim <A>, then search
    auto C = centralizer(A);
    rep.centralizer_dim = C.dim();
    if (C.dim() == rep.dim) {
        // C(A) = <A>; if the minpoly is provably irreducible this is a field,
        // hence no idempotent or nilpotent commutes with A at all
        rep.derogatory = rep.kind_exact ? Tri::No : Tri::Unknown;
        return rep;
    }

    if (auto found = search_witness_in_centralizer(A, C, cfg)) {
        rep.witness = found->first;
        rep.witness_origin = found->second;
        rep.derogatory = is_idempotent(found->first) ? Tri::Yes : Tri::Unknown;
        return rep;
    }
    rep.derogatory = Tri::Unknown;
    return rep;
}

// derogatory test; over a field this is exact (deg minpoly < n), over the
// quaternions it is the classification cascade and may be Unknown
template <class D>
Tri is_derogatory(const DMatrix<D>& A, const WitnessSearchConfig& cfg = {}) {
    if constexpr (std::is_same_v<D, Fq>) {
        return minpoly(A).degree() < A.ring->n ? Tri::Yes : Tri::No;
    } else {
        return classify<Quat>(A, cfg).derogatory;
    }
}

// noncentral E with E^2 = E commuting with A
template <class D>
DMatrix<D> derogatory_idempotent(const DMatrix<D>& A, const WitnessSearchConfig& cfg = {}) {
    if (is_central(A)) throw std::invalid_argument("derogatory_idempotent: central input");
    if constexpr (std::is_same_v<D, Fq>) {
        return derogatory_idempotent_field(A);
    } else {
        AlgebraReport<Quat> rep = classify<Quat>(A, cfg);
        if (rep.witness && is_idempotent(*rep.witness)) return *rep.witness;
        throw std::domain_error("derogatory_idempotent: no decomposition path succeeded");
    }
}

// every witness a report may carry satisfies the exact contract
template <class D>
bool verify_witness(const DMatrix<D>& A, const DMatrix<D>& W) {
    return !is_central(W) && commutes(A, W) && (is_idempotent(W) || is_nilpotent_index2(W));
}

} // namespace commgraph

#endif // COMMGRAPH_ANALYZER_HPP
