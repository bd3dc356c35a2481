#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "commgraph/ring.hpp"
#include "test_helpers.hpp"

using namespace commgraph;
using namespace commgraph::testing;

namespace {
const RingContext* ring_f2_3() { return RingContext::get(3, FqCtx::get(2, 1)); }
const RingContext* ring_f3_2() { return RingContext::get(2, FqCtx::get(3, 1)); }
const RingContext* ring_h_2() { return RingContext::get(2, QuatCtx::get(Rational(-1), Rational(-1))); }
} // namespace

TEST_CASE("matrix units multiply by the unit calculus") {
    const auto* r = ring_f2_3();
    DMatrix<Fq> e11 = fqmat(r, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    DMatrix<Fq> e12 = fqmat(r, {{0, 1, 0}, {0, 0, 0}, {0, 0, 0}});
    CHECK(mat_mul(e11, e12) == e12);
    CHECK(is_zero(mat_mul(e12, e11)));

    Rng rng(3);
    DMatrix<Fq> a = random_dmatrix<Fq>(r, rng);
    CHECK(mat_mul(a, DMatrix<Fq>::identity(r)) == a);
    CHECK(mat_mul(DMatrix<Fq>::identity(r), a) == a);
}

TEST_CASE("noncommutative scalars: entry order matters") {
    const auto* r = ring_h_2();
    const Quat i = Quat::unit_i(r->quat), j = Quat::unit_j(r->quat), k = Quat::unit_k(r->quat);
    DMatrix<Quat> iI = scal_mul(i, DMatrix<Quat>::identity(r));
    DMatrix<Quat> jI = scal_mul(j, DMatrix<Quat>::identity(r));
    CHECK(mat_mul(iI, jI) == scal_mul(k, DMatrix<Quat>::identity(r)));
    CHECK(mat_mul(jI, iI) == scal_mul(-k, DMatrix<Quat>::identity(r)));
    CHECK_FALSE(commutes(iI, jI));
}

TEST_CASE("commutes: stated examples") {
    const auto* r = ring_f2_3();
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        DMatrix<Fq> a = random_dmatrix<Fq>(r, rng);
        CHECK(commutes(a, mat_mul(a, a)));
    }
    DMatrix<Fq> e11 = fqmat(r, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    DMatrix<Fq> e22 = fqmat(r, {{0, 0, 0}, {0, 1, 0}, {0, 0, 0}});
    CHECK(commutes(e11, e22));

    const auto* rq = ring_f3_2();
    CHECK_THROWS_AS(commutes(e11, fqmat(rq, {{1, 0}, {0, 1}})), std::invalid_argument);
}

TEST_CASE("is_central") {
    const auto* r3 = RingContext::get(2, FqCtx::get(3, 1));
    CHECK(is_central(DMatrix<Fq>::identity(r3)));
    CHECK(is_central(scal_mul(Fq(r3->fq, 2), DMatrix<Fq>::identity(r3))));
    CHECK_FALSE(is_central(fqmat(r3, {{1, 0}, {0, 2}})));

    const auto* rh = ring_h_2();
    CHECK(is_central(DMatrix<Quat>::identity(rh)));
    CHECK_FALSE(is_central(scal_mul(Quat::unit_i(rh->quat), DMatrix<Quat>::identity(rh))));

    // centrality <=> commuting with every flatten-basis matrix
    Rng rng(21);
    for (int t = 0; t < 8; ++t) {
        DMatrix<Quat> a = random_dmatrix<Quat>(rh, rng, 1);
        bool comm_all = true;
        for (int s = 0; s < rh->flat_dim(); ++s)
            if (!commutes(a, basis_matrix<Quat>(rh, s))) { comm_all = false; break; }
        CHECK(comm_all == is_central(a));
    }
}

TEST_CASE("mat_inverse over a division ring") {
    const auto* rh = ring_h_2();
    CHECK(*mat_inverse(DMatrix<Quat>::identity(rh)) == DMatrix<Quat>::identity(rh));

    DMatrix<Quat> jI = scal_mul(Quat::unit_j(rh->quat), DMatrix<Quat>::identity(rh));
    CHECK(*mat_inverse(jI) == scal_mul(-Quat::unit_j(rh->quat), DMatrix<Quat>::identity(rh)));

    DMatrix<Quat> sing = DMatrix<Quat>::zero(rh);
    sing.m(0, 0) = Quat::one(rh->quat);
    CHECK_FALSE(mat_inverse(sing).has_value()); // zero row

    Rng rng(31);
    int invertible = 0;
    for (int t = 0; t < 25; ++t) {
        DMatrix<Quat> a = random_dmatrix<Quat>(rh, rng, 2);
        auto inv = mat_inverse(a);
        if (!inv) continue;
        ++invertible;
        CHECK(mat_mul(a, *inv) == DMatrix<Quat>::identity(rh));
        CHECK(mat_mul(*inv, a) == DMatrix<Quat>::identity(rh));
    }
    CHECK(invertible > 15);

    const auto* rf = ring_f2_3();
    Rng rng2(32);
    for (int t = 0; t < 40; ++t) {
        DMatrix<Fq> a = random_dmatrix<Fq>(rf, rng2);
        auto inv = mat_inverse(a);
        if (inv) {
            CHECK(mat_mul(a, *inv) == DMatrix<Fq>::identity(rf));
            CHECK(mat_mul(*inv, a) == DMatrix<Fq>::identity(rf));
        }
    }
}

TEST_CASE("ring axioms hold exactly on random triples") {
    const auto* rh = ring_h_2();
    Rng rng(41);
    for (int t = 0; t < 15; ++t) {
        DMatrix<Quat> a = random_dmatrix<Quat>(rh, rng, 2);
        DMatrix<Quat> b = random_dmatrix<Quat>(rh, rng, 2);
        DMatrix<Quat> c = random_dmatrix<Quat>(rh, rng, 2);
        CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
        CHECK(mat_mul(a, mat_add(b, c)) == mat_add(mat_mul(a, b), mat_mul(a, c)));
        CHECK(mat_mul(mat_add(a, b), c) == mat_add(mat_mul(a, c), mat_mul(b, c)));
    }
}

TEST_CASE("flatten is a linear bijection with the normative ordering") {
    const auto* rh = ring_h_2();
    CHECK(flatten(DMatrix<Quat>::zero(rh)).isZero(0));

    Rng rng(51);
    for (int t = 0; t < 10; ++t) {
        DMatrix<Quat> a = random_dmatrix<Quat>(rh, rng, 3);
        DMatrix<Quat> b = random_dmatrix<Quat>(rh, rng, 3);
        CHECK(unflatten<Quat>(rh, flatten(a)) == a);
        DenseVec<Rational> fa = flatten(a), fb = flatten(b), fab = flatten(mat_add(a, b));
        for (int s = 0; s < rh->flat_dim(); ++s) CHECK(fab(s) == fa(s) + fb(s));
    }

    // ordering: entry (0,1) coordinate x lands at position 1*4 + 1
    DMatrix<Quat> e = DMatrix<Quat>::zero(rh);
    e.m(0, 1) = Quat::unit_i(rh->quat);
    DenseVec<Rational> v = flatten(e);
    CHECK(v(5) == 1);
    for (int s = 0; s < rh->flat_dim(); ++s)
        if (s != 5) CHECK(v(s) == 0);

    const auto* rf = ring_f2_3();
    Rng rng2(52);
    DMatrix<Fq> a = random_dmatrix<Fq>(rf, rng2);
    CHECK(unflatten<Fq>(rf, flatten(a)) == a);
}

TEST_CASE("minpoly: stated examples") {
    const auto* rf = ring_f2_3();
    // A = I -> x - 1
    CHECK(minpoly(DMatrix<Fq>::identity(rf)) ==
          FqPoly(std::vector<Fq>{Fq(rf->fq, 1), Fq(rf->fq, 1)}));

    // companion matrix realizes its polynomial
    FqPoly cubic(std::vector<Fq>{Fq(rf->fq, 1), Fq(rf->fq, 1), Fq(rf->fq, 0), Fq(rf->fq, 1)});
    DMatrix<Fq> comp = companion_dmatrix<Fq>(rf, cubic);
    CHECK(minpoly(comp) == cubic);
    CHECK(is_zero(eval_poly(cubic, comp)));

    // i I over H(-1,-1), n = 2 -> x^2 + 1
    const auto* rh = ring_h_2();
    DMatrix<Quat> iI = scal_mul(Quat::unit_i(rh->quat), DMatrix<Quat>::identity(rh));
    QPoly mp = minpoly(iI);
    CHECK(mp == QPoly(std::vector<Rational>{Rational(1), Rational(0), Rational(1)}));
    CHECK(is_zero(eval_poly(mp, iI)));

    // minpoly annihilates and no proper divisor does (spot check on randoms)
    Rng rng(61);
    for (int t = 0; t < 5; ++t) {
        DMatrix<Quat> a = random_dmatrix<Quat>(rh, rng, 2);
        QPoly f = minpoly(a);
        CHECK(is_zero(eval_poly(f, a)));
        CHECK(f.is_monic());
    }
}

TEST_CASE("dmat_pow") {
    const auto* rf = ring_f2_3();
    Rng rng(71);
    DMatrix<Fq> a = random_dmatrix<Fq>(rf, rng);
    CHECK(dmat_pow(a, 0) == DMatrix<Fq>::identity(rf));
    CHECK(dmat_pow(a, 1) == a);
    CHECK(dmat_pow(a, 5) == mat_mul(a, mat_mul(a, mat_mul(a, mat_mul(a, a)))));
}
