#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "commgraph/embedding.hpp"
#include "test_helpers.hpp"

using namespace commgraph;
using namespace commgraph::testing;

namespace {
const RingContext* ring_h2() { return RingContext::get(2, QuatCtx::get(Rational(-1), Rational(-1))); }
const RingContext* ring_f23() { return RingContext::get(3, FqCtx::get(2, 1)); }
} // namespace

TEST_CASE("left multiplication matrix of i, computed by hand") {
    const QuatCtx* h = QuatCtx::get(Rational(-1), Rational(-1));
    DenseMat<Rational> L = left_mult_matrix(Quat::unit_i(h));
    DenseMat<Rational> expect(4, 4);
    // columns: i*1 = i, i*i = -1, i*j = k, i*k = -j
    expect << Rational(0), Rational(-1), Rational(0), Rational(0),
              Rational(1), Rational(0),  Rational(0), Rational(0),
              Rational(0), Rational(0),  Rational(0), Rational(-1),
              Rational(0), Rational(0),  Rational(1), Rational(0);
    CHECK(L == expect);
}

TEST_CASE("phi is an injective algebra homomorphism") {
    const auto* rh = ring_h2();
    CHECK(embed(DMatrix<Quat>::zero(rh)).image.isZero(0));
    CHECK(embed(DMatrix<Quat>::identity(rh)).image == DenseMat<Rational>::Identity(8, 8));

    Rng rng(7);
    for (int t = 0; t < 500; ++t) {
        DMatrix<Quat> a = random_dmatrix<Quat>(rh, rng, 2);
        DMatrix<Quat> b = random_dmatrix<Quat>(rh, rng, 2);
        CHECK(embed(mat_mul(a, b)).image == (embed(a).image * embed(b).image).eval());
        CHECK(embed(mat_add(a, b)).image == (embed(a).image + embed(b).image).eval());
        if (!is_zero(a)) CHECK_FALSE(embed(a).image.isZero(0));
    }
}

TEST_CASE("phi is the identity for finite fields") {
    const auto* rf = ring_f23();
    Rng rng(8);
    DMatrix<Fq> a = random_dmatrix<Fq>(rf, rng);
    auto e = embed(a);
    REQUIRE(e.image.rows() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(e.image(i, j) == a.m(i, j));
}

TEST_CASE("minimal polynomial transfers through phi") {
    const auto* rh = ring_h2();
    Rng rng(9);
    for (int t = 0; t < 12; ++t) {
        DMatrix<Quat> a = random_dmatrix<Quat>(rh, rng, 2);
        CHECK(minpoly(a) == minpoly_field_matrix(embed(a).image));
    }
}

TEST_CASE("centralizer correspondence through the embedding") {
    const auto* rf = ring_f23();

    auto c1 = centralizer_correspondence_check(DMatrix<Fq>::identity(rf));
    CHECK(c1.dim_inner == rf->flat_dim());
    CHECK(c1.dim_outer_cap == rf->flat_dim());
    CHECK(c1.equal);

    // E11 in M_3(F_2): block structure 1^2 + 2^2 = 5
    auto c2 = centralizer_correspondence_check(fqmat(rf, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
    CHECK(c2.dim_inner == 5);
    CHECK(c2.dim_outer_cap == 5);
    CHECK(c2.equal);

    const auto* rh = ring_h2();
    auto c3 = centralizer_correspondence_check(DMatrix<Quat>::identity(rh));
    CHECK(c3.dim_inner == rh->flat_dim());
    CHECK(c3.equal);

    Rng rng(10);
    for (int t = 0; t < 10; ++t) {
        auto c = centralizer_correspondence_check(random_dmatrix<Quat>(rh, rng, 2));
        CHECK(c.equal);
    }
}
