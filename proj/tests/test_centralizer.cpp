#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "commgraph/centralizer.hpp"
#include "commgraph/frobenius.hpp"
#include "test_helpers.hpp"

using namespace commgraph;
using namespace commgraph::testing;

namespace {
const RingContext* ring_f23() { return RingContext::get(3, FqCtx::get(2, 1)); }
const RingContext* ring_h2() { return RingContext::get(2, QuatCtx::get(Rational(-1), Rational(-1))); }

// independent oracle: count commuting matrices by full enumeration
int brute_centralizer_count(const DMatrix<Fq>& A) {
    const auto* r = A.ring;
    const std::uint64_t total = pow_u64(r->fq->q(), r->n * r->n);
    int count = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx)
        if (commutes(A, fqmat_from_index(r, idx))) ++count;
    return count;
}
} // namespace

TEST_CASE("centralizer dimension: stated examples with enumeration oracle") {
    const auto* r = ring_f23();

    auto cI = centralizer(DMatrix<Fq>::identity(r));
    CHECK(cI.dim() == r->flat_dim());

    FqPoly cubic(std::vector<Fq>{Fq(r->fq, 1), Fq(r->fq, 1), Fq(r->fq, 0), Fq(r->fq, 1)});
    DMatrix<Fq> comp = companion_dmatrix<Fq>(r, cubic);
    auto cc = centralizer(comp);
    CHECK(cc.dim() == 3);
    CHECK(brute_centralizer_count(comp) == 8); // 2^3

    // C(A) = span{I, A, A^2} for the nonderogatory companion matrix
    IncrementalEchelon<Fq> span(r->flat_dim());
    for (const auto& v : cc.basis) span.add(v);
    CHECK(span.in_span(flatten(DMatrix<Fq>::identity(r))));
    CHECK(span.in_span(flatten(comp)));
    CHECK(span.in_span(flatten(mat_mul(comp, comp))));

    DMatrix<Fq> e11 = fqmat(r, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    auto ce = centralizer(e11);
    CHECK(ce.dim() == 5);
    CHECK(brute_centralizer_count(e11) == 32); // 2^5
}

TEST_CASE("all centralizer basis elements commute exactly; dim >= deg minpoly") {
    const auto* rh = ring_h2();
    Rng rng(23);
    for (int t = 0; t < 8; ++t) {
        DMatrix<Quat> a = random_dmatrix<Quat>(rh, rng, 2);
        auto c = centralizer(a);
        for (int s = 0; s < c.dim(); ++s) CHECK(commutes(a, c.element(s)));
        CHECK(c.dim() >= minpoly(a).degree());
        // identity always lies in the span
        IncrementalEchelon<Rational> span(rh->flat_dim());
        for (const auto& v : c.basis) span.add(v);
        CHECK(span.in_span(flatten(DMatrix<Quat>::identity(rh))));
    }

    const auto* rf = ring_f23();
    Rng rng2(24);
    for (int t = 0; t < 10; ++t) {
        DMatrix<Fq> a = random_dmatrix<Fq>(rf, rng2);
        auto c = centralizer(a);
        for (int s = 0; s < c.dim(); ++s) CHECK(commutes(a, c.element(s)));
        CHECK(pow_u64(2, static_cast<std::uint64_t>(c.dim())) ==
              static_cast<std::uint64_t>(brute_centralizer_count(a)));
    }
}

TEST_CASE("centralizer intersection: stated examples") {
    const auto* r = ring_f23();
    DMatrix<Fq> e11 = fqmat(r, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    DMatrix<Fq> e22 = fqmat(r, {{0, 0, 0}, {0, 1, 0}, {0, 0, 0}});

    auto c1 = centralizer(e11);
    auto common = intersect(c1, c1);
    CHECK(static_cast<int>(common.size()) == c1.dim());

    auto inter = intersect(centralizer(e11), centralizer(e22));
    CHECK(inter.size() == 3);
    IncrementalEchelon<Fq> span(r->flat_dim());
    for (const auto& v : inter) span.add(v);
    CHECK(span.in_span(flatten(DMatrix<Fq>::identity(r))));
    CHECK(span.in_span(flatten(e11)));
    CHECK(span.in_span(flatten(e22)));

    // scalars commute with everything: intersection is never empty
    Rng rng(25);
    for (int t = 0; t < 10; ++t) {
        DMatrix<Fq> a = random_dmatrix<Fq>(r, rng);
        DMatrix<Fq> b = random_dmatrix<Fq>(r, rng);
        CHECK(centralizer_intersection(a, b).size() >= 1);
    }
}

TEST_CASE("noncentral witness extraction") {
    const auto* r = ring_f23();
    std::vector<DenseVec<Fq>> just_identity{flatten(DMatrix<Fq>::identity(r))};
    CHECK_FALSE(noncentral_witness<Fq>(r, just_identity).has_value());

    DMatrix<Fq> e11 = fqmat(r, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    std::vector<DenseVec<Fq>> two{flatten(DMatrix<Fq>::identity(r)), flatten(e11)};
    auto w = noncentral_witness<Fq>(r, two);
    REQUIRE(w.has_value());
    CHECK_FALSE(is_central(*w));

    // dim >= 2 always yields a witness (basis cannot fit in the central line)
    Rng rng(26);
    for (int t = 0; t < 20; ++t) {
        DMatrix<Fq> a = random_dmatrix<Fq>(r, rng);
        auto c = centralizer(a);
        if (c.dim() >= 2) {
            auto x = noncentral_witness<Fq>(r, c.basis);
            REQUIRE(x.has_value());
            CHECK(commutes(a, *x));
        }
    }

    const auto* rh = ring_h2();
    // central line over quaternions is Q I, so i I is a legitimate witness
    std::vector<DenseVec<Rational>> qspan{
        flatten(DMatrix<Quat>::identity(rh)),
        flatten(scal_mul(Quat::unit_i(rh->quat), DMatrix<Quat>::identity(rh)))};
    auto wq = noncentral_witness<Quat>(rh, qspan);
    REQUIRE(wq.has_value());
    CHECK_FALSE(is_central(*wq));
}

TEST_CASE("centralizer dimension matches the invariant-factor formula") {
    // for invariant factors f_1 | ... | f_r:
    //   dim C(A) = sum_i (2(r - i) + 1) deg f_i,
    // an independent route to the same number as the commutator kernel
    for (auto pq : {std::pair<int, int>{2, 3}, {3, 2}, {2, 4}}) {
        const auto* r = RingContext::get(pq.second, FqCtx::get(static_cast<std::uint32_t>(pq.first), 1));
        Rng rng(515 + static_cast<std::uint64_t>(pq.first * 10 + pq.second));
        for (int t = 0; t < 25; ++t) {
            DMatrix<Fq> A = random_dmatrix<Fq>(r, rng);
            auto form = frobenius_form(A.m);
            const int rr = form.block_count();
            int expect = 0;
            for (int i = 1; i <= rr; ++i)
                expect += (2 * (rr - i) + 1) * form.invariant_factors[static_cast<std::size_t>(i - 1)].degree();
            auto C = centralizer(A);
            CHECK(C.dim() == expect);
            CHECK(C.dim() >= r->n);

            // nonderogatory matrices have C(A) = polynomial span of A
            if (rr == 1 && !is_central(A)) {
                CHECK(C.dim() == r->n);
                IncrementalEchelon<Fq> span(r->flat_dim());
                DMatrix<Fq> P = DMatrix<Fq>::identity(r);
                for (int k = 0; k < r->n; ++k) {
                    CHECK_FALSE(span.add(flatten(P)).has_value());
                    P = mat_mul(P, A);
                }
                for (const auto& v : C.basis) CHECK(span.in_span(v));
            }
        }
    }
}
