#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "commgraph/oracle.hpp"
#include "test_helpers.hpp"

using namespace commgraph;
using namespace commgraph::testing;

TEST_CASE("census M_2(F_2): 14 vertices in seven 2-cliques") {
    const auto* r = RingContext::get(2, FqCtx::get(2, 1));
    auto census = build_census(r, true);
    CHECK(census.vertex_count == 14);
    CHECK_FALSE(census.connected);
    CHECK(census.components.size() == 7);
    for (const auto& c : census.components) {
        CHECK(c.size == 2);
        CHECK(c.is_clique.value());
    }
}

TEST_CASE("census M_2(F_3): 78 vertices; nonderogatory centralizers force clique components") {
    const auto* r = RingContext::get(2, FqCtx::get(3, 1));
    auto census = build_census(r, true);
    CHECK(census.vertex_count == 78);
    CHECK_FALSE(census.connected);
    CHECK(census.components.size() == 13);
    for (const auto& c : census.components) {
        CHECK(c.size == 6); // noncentral part of a copy of F_3[A], |F_9| - 3
        CHECK(c.is_clique.value());
    }
}

TEST_CASE("census distance histograms cover every intra-component pair") {
    for (auto spec : {std::pair<int, int>{2, 2}, {2, 3}, {3, 2}}) {
        const auto* r = RingContext::get(spec.first, FqCtx::get(static_cast<std::uint32_t>(spec.second), 1));
        auto census = build_census(r, true);
        for (const auto& c : census.components) {
            std::uint64_t mass = 0;
            for (const auto& [d, cnt] : c.distance_histogram) {
                CHECK(d >= 1);
                CHECK(d <= c.diameter.value());
                mass += cnt;
            }
            CHECK(mass == c.size * (c.size - 1) / 2);
        }
    }
}

TEST_CASE("census M_3(F_2): disconnected, eight 6-vertex field cliques verified") {
    const auto* r = RingContext::get(3, FqCtx::get(2, 1));
    auto census = build_census(r, true);
    CHECK(census.vertex_count == 510);
    CHECK_FALSE(census.connected);

    int six_cliques = 0;
    std::uint64_t rest = 0;
    for (const auto& c : census.components) {
        if (c.size == 6 && c.is_clique.value()) ++six_cliques;
        else rest += c.size;
    }
    CHECK(six_cliques == 8);
    CHECK(rest == 510 - 48);

    auto rep = verify_field_clique_components(census);
    CHECK(rep.field_components == 8);
    CHECK(rep.all_passed());

    // independent counting oracle: 2 irreducible cubics x |GL_3(F_2)| / |F_8^x|
    const std::uint64_t gl3 = (8 - 1) * (8 - 2) * (8 - 4);
    CHECK(gl3 == 168);
    CHECK(count_full_field_generators(census) == 2 * gl3 / 7);
    CHECK(2 * gl3 / 7 / 6 == 8);
}

TEST_CASE("bfs distances agree with direct checks") {
    const auto* r = RingContext::get(3, FqCtx::get(2, 1));
    auto census = build_census(r, true);

    Rng rng(5);
    // d(A, A^2) = 1 whenever A^2 is a distinct noncentral matrix
    for (int t = 0; t < 20; ++t) {
        DMatrix<Fq> A = random_noncentral<Fq>(r, rng);
        DMatrix<Fq> A2 = mat_mul(A, A);
        if (is_central(A2) || A2 == A) continue;
        CHECK(bfs_distance(census, A, A2) == 1);
    }

    // cross-component pairs are at infinite distance
    FqPoly cubic(std::vector<Fq>{Fq(r->fq, 1), Fq(r->fq, 1), Fq(r->fq, 0), Fq(r->fq, 1)});
    DMatrix<Fq> A = companion_dmatrix<Fq>(r, cubic);
    DMatrix<Fq> N = fqmat(r, {{0, 1, 0}, {0, 0, 0}, {0, 0, 0}});
    CHECK(bfs_distance(census, A, N) == -1);

    CHECK_THROWS_AS(bfs_distance(census, DMatrix<Fq>::identity(r), N), std::invalid_argument);
}

TEST_CASE("oracle agrees with the path engine on M_2(F_3)") {
    const auto* r = RingContext::get(2, FqCtx::get(3, 1));
    auto census = build_census(r, true);
    Rng rng(17);
    int compared = 0;
    for (int t = 0; t < 200; ++t) {
        DMatrix<Fq> A = random_noncentral<Fq>(r, rng);
        DMatrix<Fq> B = random_noncentral<Fq>(r, rng);
        if (A == B) continue;
        const int d = bfs_distance(census, A, B);
        auto leq2 = distance_leq2(A, B);
        if (d >= 0 && d <= 2) {
            CHECK(leq2.kind == VerdictKind::Exact);
            CHECK(leq2.value == d);
        } else {
            CHECK(leq2.kind == VerdictKind::LowerCertified);
        }
        auto ex = exact_distance_small(A, B, 4096);
        if (d >= 0 && d <= 3) {
            CHECK(ex.kind == VerdictKind::Exact);
            CHECK(ex.value == d);
        } else {
            CHECK(ex.kind == VerdictKind::LowerCertified); // d >= 4 or infinite
        }
        ++compared;
    }
    CHECK(compared > 100);
}

TEST_CASE("packed GF(2) commutation agrees with the reference path") {
    const auto* r = RingContext::get(4, FqCtx::get(2, 1));
    Rng rng(31);
    const std::uint64_t total = pow_u64(2, 16);
    int mismatches = 0;
    for (int t = 0; t < 100000; ++t) {
        const std::uint64_t ia = rng.below(total);
        const std::uint64_t ib = rng.below(total);
        const bool fast = detail_oracle::gf2_commutes(static_cast<std::uint32_t>(ia),
                                                      static_cast<std::uint32_t>(ib), 4);
        const bool ref = commutes(index_to_matrix(r, ia), index_to_matrix(r, ib));
        if (fast != ref) ++mismatches;
    }
    CHECK(mismatches == 0);
    // packed centrality
    for (std::uint64_t idx : {0ull, 0x8421ull}) {
        CHECK(detail_oracle::gf2_is_central(static_cast<std::uint32_t>(idx), 4) ==
              is_central(index_to_matrix(r, idx)));
    }
}

TEST_CASE("components-only census matches the full one on M_3(F_2)") {
    const auto* r = RingContext::get(3, FqCtx::get(2, 1));
    auto full = build_census(r, true);
    auto comp = build_census(r, false);
    CHECK(comp.components.size() == full.components.size());
    std::multiset<std::uint64_t> a, b;
    for (const auto& c : full.components) a.insert(c.size);
    for (const auto& c : comp.components) b.insert(c.size);
    CHECK(a == b);
}

TEST_CASE("census size bounds are enforced") {
    const auto* big = RingContext::get(4, FqCtx::get(3, 1)); // 3^16 matrices
    CHECK_THROWS_AS(build_census(big, true), std::invalid_argument);
    CHECK_THROWS_AS(build_census(big, false), std::invalid_argument);
    const auto* quat = RingContext::get(2, QuatCtx::get(Rational(-1), Rational(-1)));
    (void)quat; // quaternion rings have no finite census; the API is Fq-typed
}

TEST_CASE("oracle agreement: exhaustive at n = 2, sampled pairs in M_3(F_2)") {
    // exhaustive intra-component comparison on M_2(F_2)
    {
        const auto* r = RingContext::get(2, FqCtx::get(2, 1));
        auto census = build_census(r, true);
        const std::size_t V = census.vertices.size();
        for (std::size_t i = 0; i < V; ++i)
            for (std::size_t j = i + 1; j < V; ++j) {
                if (census.component_of[i] != census.component_of[j]) continue;
                DMatrix<Fq> A = index_to_matrix(r, census.vertices[i]);
                DMatrix<Fq> B = index_to_matrix(r, census.vertices[j]);
                const int d = bfs_distance(census, A, B);
                auto ex = exact_distance_small(A, B, 4096);
                REQUIRE(ex.kind == VerdictKind::Exact);
                CHECK(ex.value == d);
            }
    }
    // sampled pairs in M_3(F_2), compared against BFS ground truth
    {
        const auto* r = RingContext::get(3, FqCtx::get(2, 1));
        auto census = build_census(r, true);
        Rng rng(271828);
        int checked = 0;
        for (int t = 0; t < 10000; ++t) {
            const std::size_t i = static_cast<std::size_t>(rng.below(census.vertices.size()));
            const std::size_t j = static_cast<std::size_t>(rng.below(census.vertices.size()));
            if (i == j) continue;
            DMatrix<Fq> A = index_to_matrix(r, census.vertices[i]);
            DMatrix<Fq> B = index_to_matrix(r, census.vertices[j]);
            const int d = bfs_distance(census, A, B);
            auto l2 = distance_leq2(A, B);
            if (d >= 0 && d <= 2) {
                REQUIRE(l2.kind == VerdictKind::Exact);
                CHECK(l2.value == d);
            } else {
                CHECK(l2.kind == VerdictKind::LowerCertified);
            }
            if (t % 10 == 0) { // the full enumerated decider on a subsample
                auto ex = exact_distance_small(A, B, 4096);
                if (d >= 1 && d <= 3) {
                    REQUIRE(ex.kind == VerdictKind::Exact);
                    CHECK(ex.value == d);
                } else {
                    CHECK(ex.kind == VerdictKind::LowerCertified);
                }
            }
            ++checked;
        }
        CHECK(checked > 9000);
    }
}

TEST_CASE("components-only census agrees with the connectivity decision") {
    // n = 4 composite: one component on 65534 vertices
    {
        const auto* r = RingContext::get(4, FqCtx::get(2, 1));
        auto census = build_census(r, false);
        CHECK(census.connected);
        CHECK(census.components.size() == 1);
        CHECK(census.components[0].size == 65534);
        CHECK(decide_connectivity_fq(4, r->fq).status == ConnectivityVerdict::Status::Connected);
    }
    // n = 3 prime over F_3: 144 field cliques (8 irreducible cubics, each with
    // |GL_3(F_3)| / |F_27^x| = 432 generators, 24 noncentral elements per copy)
    // plus the big component
    {
        const auto* r = RingContext::get(3, FqCtx::get(3, 1));
        auto census = build_census(r, false);
        CHECK_FALSE(census.connected);
        CHECK(census.components.size() == 145);
        int cliques24 = 0;
        for (const auto& c : census.components)
            if (c.size == 24) ++cliques24;
        CHECK(cliques24 == 144);
        CHECK(decide_connectivity_fq(3, r->fq).status == ConnectivityVerdict::Status::Disconnected);
    }
}
