#ifndef COMMGRAPH_ORACLE_HPP
#define COMMGRAPH_ORACLE_HPP

#include "commgraph/centralizer.hpp"
#include "commgraph/fq_factor.hpp"
#include "commgraph/path.hpp"
#include "commgraph/ring.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace commgraph {

// Brute-force ground truth for tiny rings M_n(F_q): the full commuting graph,
// its components, exact BFS distances and per-component diameters. Matrices
// are identified with their base-q digit index in [0, q^(n^2)).

namespace detail_oracle {

// --- bit-packed GF(2) fast path (n <= 5, one machine word per matrix) -------

inline std::uint32_t gf2_mul(std::uint32_t a, std::uint32_t b, int n) {
    const std::uint32_t rowmask = (1u << n) - 1u;
    std::uint32_t out = 0;
    for (int i = 0; i < n; ++i) {
        const std::uint32_t arow = (a >> (n * i)) & rowmask;
        std::uint32_t crow = 0;
        std::uint32_t bits = arow;
        while (bits) {
            const int k = __builtin_ctz(bits);
            bits &= bits - 1u;
            crow ^= (b >> (n * k)) & rowmask;
        }
        out |= crow << (n * i);
    }
    return out;
}

inline bool gf2_commutes(std::uint32_t a, std::uint32_t b, int n) {
    return gf2_mul(a, b, n) == gf2_mul(b, a, n);
}

inline bool gf2_is_central(std::uint32_t a, int n) {
    return a == 0 || a == [n] {
        std::uint32_t id = 0;
        for (int i = 0; i < n; ++i) id |= 1u << (n * i + i);
        return id;
    }();
}

} // namespace detail_oracle

inline std::uint64_t matrix_to_index(const DMatrix<Fq>& A) {
    const std::uint64_t q = A.ring->fq->q();
    std::uint64_t idx = 0;
    for (int i = A.ring->n - 1; i >= 0; --i)
        for (int j = A.ring->n - 1; j >= 0; --j) idx = idx * q + A.m(i, j).index();
    return idx;
}

inline DMatrix<Fq> index_to_matrix(const RingContext* ring, std::uint64_t idx) {
    const std::uint64_t q = ring->fq->q();
    DMatrix<Fq> A = DMatrix<Fq>::zero(ring);
    for (int i = 0; i < ring->n; ++i)
        for (int j = 0; j < ring->n; ++j) {
            A.m(i, j) = Fq::from_index(ring->fq, idx % q);
            idx /= q;
        }
    return A;
}

struct ComponentInfo {
    std::uint64_t representative = 0; // smallest vertex index
    std::uint64_t size = 0;
    std::optional<bool> is_clique;          // full mode
    std::optional<int> diameter;            // full mode
    std::map<int, std::uint64_t> distance_histogram; // full mode, unordered pairs per distance
};

struct GraphCensus {
    const RingContext* ring = nullptr;
    bool full = false;
    std::uint64_t total_matrices = 0;
    std::uint64_t vertex_count = 0;
    std::vector<ComponentInfo> components;
    bool connected = false;

    // full-mode internals
    std::vector<std::uint64_t> vertices;    // matrix indices, ascending
    std::vector<std::int32_t> vertex_pos;   // index -> position, -1 for central
    std::vector<int> component_of;          // per position
    std::vector<std::vector<std::uint64_t>> adjacency; // bitset row per vertex

    int position_of(std::uint64_t matrix_index) const {
        if (matrix_index >= vertex_pos.size() || vertex_pos[static_cast<std::size_t>(matrix_index)] < 0)
            return -1;
        return vertex_pos[static_cast<std::size_t>(matrix_index)];
    }
};

namespace detail_oracle {

struct Dsu {
    std::vector<std::int32_t> parent;
    explicit Dsu(std::size_t n) : parent(n, -1) {}
    std::int32_t find(std::int32_t x) {
        while (parent[static_cast<std::size_t>(x)] >= 0 &&
               parent[static_cast<std::size_t>(x)] != x) {
            const std::int32_t p = parent[static_cast<std::size_t>(x)];
            if (parent[static_cast<std::size_t>(p)] >= 0)
                parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(p)];
            x = p;
        }
        return x;
    }
    void make(std::int32_t x) {
        if (parent[static_cast<std::size_t>(x)] < 0) parent[static_cast<std::size_t>(x)] = x;
    }
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a); b = find(b);
        if (a != b) parent[static_cast<std::size_t>(b)] = a;
    }
};

inline std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace detail_oracle

inline GraphCensus build_census(const RingContext* ring, bool full_mode) {
    if (!ring->is_fq())
        throw std::invalid_argument("census: only finite-field rings have a finite vertex set");
    const int n = ring->n;
    const std::uint64_t q = ring->fq->q();
    const std::uint64_t total = detail_oracle::pow_u64(q, n * n);

    constexpr std::uint64_t kFullBound = 1u << 13;
    constexpr std::uint64_t kComponentsBound = 1u << 22;
    if (full_mode && total > kFullBound) {
        std::ostringstream os;
        os << "census: full mode holds q^(n^2) = " << total << " matrices, above the bound " << kFullBound
           << "; use components-only mode";
        throw std::invalid_argument(os.str());
    }
    if (!full_mode && total > kComponentsBound) {
        std::ostringstream os;
        os << "census: q^(n^2) = " << total << " exceeds the components-only bound " << kComponentsBound;
        throw std::invalid_argument(os.str());
    }

    GraphCensus census;
    census.ring = ring;
    census.full = full_mode;
    census.total_matrices = total;
    census.vertex_count = total - q; // central matrices are the q scalars

    const bool packed = (q == 2 && n <= 5);

    if (full_mode) {
        census.vertex_pos.assign(static_cast<std::size_t>(total), -1);
        std::vector<DMatrix<Fq>> mats;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            if (packed) {
                if (detail_oracle::gf2_is_central(static_cast<std::uint32_t>(idx), n)) continue;
            } else {
                if (is_central(index_to_matrix(ring, idx))) continue;
            }
            census.vertex_pos[static_cast<std::size_t>(idx)] =
                static_cast<std::int32_t>(census.vertices.size());
            census.vertices.push_back(idx);
            if (!packed) mats.push_back(index_to_matrix(ring, idx));
        }
        const std::size_t V = census.vertices.size();
        const std::size_t words = (V + 63) / 64;
        census.adjacency.assign(V, std::vector<std::uint64_t>(words, 0));
        for (std::size_t i = 0; i < V; ++i) {
            for (std::size_t j = i + 1; j < V; ++j) {
                bool adj;
                if (packed)
                    adj = detail_oracle::gf2_commutes(static_cast<std::uint32_t>(census.vertices[i]),
                                                      static_cast<std::uint32_t>(census.vertices[j]), n);
                else
                    adj = commutes(mats[i], mats[j]);
                if (adj) {
                    census.adjacency[i][j / 64] |= 1ull << (j % 64);
                    census.adjacency[j][i / 64] |= 1ull << (i % 64);
                }
            }
        }

        // components by BFS over the bitset rows
        census.component_of.assign(V, -1);
        for (std::size_t s = 0; s < V; ++s) {
            if (census.component_of[s] >= 0) continue;
            const int comp = static_cast<int>(census.components.size());
            ComponentInfo info;
            info.representative = census.vertices[s];
            std::vector<std::size_t> stack{s};
            census.component_of[s] = comp;
            while (!stack.empty()) {
                const std::size_t v = stack.back();
                stack.pop_back();
                ++info.size;
                for (std::size_t w = 0; w < words; ++w) {
                    std::uint64_t bits = census.adjacency[v][w];
                    while (bits) {
                        const int b = __builtin_ctzll(bits);
                        bits &= bits - 1;
                        const std::size_t u = w * 64 + static_cast<std::size_t>(b);
                        if (census.component_of[u] < 0) {
                            census.component_of[u] = comp;
                            stack.push_back(u);
                        }
                    }
                }
            }
            census.components.push_back(info);
        }

        // exact eccentricities / diameters / distance histograms via BFS from
        // every vertex (unordered pairs counted once)
        for (std::size_t s = 0; s < V; ++s) {
            const int comp = census.component_of[s];
            std::vector<int> dist(V, -1);
            std::vector<std::size_t> frontier{s};
            dist[s] = 0;
            int level = 0;
            int ecc = 0;
            while (!frontier.empty()) {
                ++level;
                std::vector<std::size_t> next;
                for (std::size_t v : frontier) {
                    for (std::size_t w = 0; w < words; ++w) {
                        std::uint64_t bits = census.adjacency[v][w];
                        while (bits) {
                            const int b = __builtin_ctzll(bits);
                            bits &= bits - 1;
                            const std::size_t u = w * 64 + static_cast<std::size_t>(b);
                            if (dist[u] < 0) {
                                dist[u] = level;
                                next.push_back(u);
                            }
                        }
                    }
                }
                frontier = std::move(next);
            }
            auto& info = census.components[static_cast<std::size_t>(comp)];
            for (std::size_t u = 0; u < V; ++u) {
                if (dist[u] > 0 && u > s) ++info.distance_histogram[dist[u]];
                if (dist[u] > ecc) ecc = dist[u];
            }
            if (!info.diameter || ecc > *info.diameter) info.diameter = ecc;
        }
        for (auto& info : census.components) {
            if (!info.diameter) info.diameter = 0;
            info.is_clique = (*info.diameter <= 1);
        }
    } else {
        // components only: per-vertex centralizer enumeration feeding a DSU
        detail_oracle::Dsu dsu(static_cast<std::size_t>(total));
        std::vector<std::uint8_t> central(static_cast<std::size_t>(total), 0);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            const bool c = packed ? detail_oracle::gf2_is_central(static_cast<std::uint32_t>(idx), n)
                                  : is_central(index_to_matrix(ring, idx));
            central[static_cast<std::size_t>(idx)] = c ? 1 : 0;
            if (!c) dsu.make(static_cast<std::int32_t>(idx));
        }
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            if (central[static_cast<std::size_t>(idx)]) continue;
            DMatrix<Fq> A = index_to_matrix(ring, idx);
            auto C = centralizer(A);
            for (const auto& X : enumerate_span(ring, C.basis)) {
                const std::uint64_t xi = matrix_to_index(X);
                if (central[static_cast<std::size_t>(xi)]) continue;
                dsu.unite(static_cast<std::int32_t>(idx), static_cast<std::int32_t>(xi));
            }
        }
        std::map<std::int32_t, ComponentInfo> comps;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            if (central[static_cast<std::size_t>(idx)]) continue;
            const std::int32_t root = dsu.find(static_cast<std::int32_t>(idx));
            auto& info = comps[root];
            if (info.size == 0) info.representative = idx;
            ++info.size;
            if (idx < info.representative) info.representative = idx;
        }
        for (auto& [root, info] : comps) {
            (void)root;
            census.components.push_back(info);
        }
    }

    census.connected = (census.components.size() == 1);
    return census;
}

// exact BFS distance between two matrices; -1 encodes infinity (distinct
// components). Requires a full-mode census.
inline int bfs_distance(const GraphCensus& census, const DMatrix<Fq>& A, const DMatrix<Fq>& B) {
    if (!census.full) throw std::invalid_argument("bfs_distance: census was built in components-only mode");
    const int pa = census.position_of(matrix_to_index(A));
    const int pb = census.position_of(matrix_to_index(B));
    if (pa < 0 || pb < 0) throw std::invalid_argument("bfs_distance: input is not a vertex of this census");
    if (pa == pb) return 0;
    if (census.component_of[static_cast<std::size_t>(pa)] != census.component_of[static_cast<std::size_t>(pb)])
        return -1;
    const std::size_t V = census.vertices.size();
    const std::size_t words = (V + 63) / 64;
    std::vector<int> dist(V, -1);
    std::vector<std::size_t> frontier{static_cast<std::size_t>(pa)};
    dist[static_cast<std::size_t>(pa)] = 0;
    int level = 0;
    while (!frontier.empty()) {
        ++level;
        std::vector<std::size_t> next;
        for (std::size_t v : frontier) {
            for (std::size_t w = 0; w < words; ++w) {
                std::uint64_t bits = census.adjacency[v][w];
                while (bits) {
                    const int b = __builtin_ctzll(bits);
                    bits &= bits - 1;
                    const std::size_t u = w * 64 + static_cast<std::size_t>(b);
                    if (dist[u] < 0) {
                        if (u == static_cast<std::size_t>(pb)) return level;
                        dist[u] = level;
                        next.push_back(u);
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return -1; // unreachable: same component implies a path
}

// field-clique structure check on a full census: every component whose
// representative has an irreducible degree-n minimal polynomial must be
// exactly the noncentral part of one shared centralizer.
struct FieldCliqueReport {
    int field_components = 0;     // components generated by full-degree field generators
    int passed = 0;               // of those, how many verified the shared-centralizer structure
    std::uint64_t field_vertices = 0;
    std::vector<std::string> notes;

    bool all_passed() const { return field_components == passed; }
};

inline FieldCliqueReport verify_field_clique_components(const GraphCensus& census) {
    if (!census.full) throw std::invalid_argument("verify_field_clique_components: need a full census");
    FieldCliqueReport rep;
    const auto* ring = census.ring;
    const int n = ring->n;

    for (std::size_t c = 0; c < census.components.size(); ++c) {
        const auto& info = census.components[c];
        DMatrix<Fq> R = index_to_matrix(ring, info.representative);
        FqPoly mu = minpoly(R);
        if (mu.degree() != n || !irreducible_fq(mu)) continue;
        ++rep.field_components;

        auto CR = centralizer(R);
        std::vector<std::uint64_t> cset;
        for (const auto& X : enumerate_span(ring, CR.basis)) {
            if (is_central(X)) continue;
            cset.push_back(matrix_to_index(X));
        }
        std::sort(cset.begin(), cset.end());

        std::vector<std::uint64_t> comp_vertices;
        for (std::size_t p = 0; p < census.vertices.size(); ++p)
            if (census.component_of[p] == static_cast<int>(c)) comp_vertices.push_back(census.vertices[p]);
        std::sort(comp_vertices.begin(), comp_vertices.end());

        bool ok = (cset == comp_vertices);
        // all members share the representative's centralizer
        for (std::uint64_t vi : comp_vertices) {
            if (!ok) break;
            DMatrix<Fq> X = index_to_matrix(ring, vi);
            auto CX = centralizer(X);
            if (CX.dim() != CR.dim()) { ok = false; break; }
            std::vector<std::uint64_t> xset;
            for (const auto& Y : enumerate_span(ring, CX.basis)) {
                if (is_central(Y)) continue;
                xset.push_back(matrix_to_index(Y));
            }
            std::sort(xset.begin(), xset.end());
            if (xset != cset) ok = false;
        }
        if (ok) ++rep.passed;
        rep.field_vertices += info.size;
        std::ostringstream os;
        os << "component of size " << info.size << " generated by a degree-" << n
           << " field generator: " << (ok ? "centralizer-clique structure verified" : "structure check FAILED");
        rep.notes.push_back(os.str());
    }
    return rep;
}

// number of vertices whose minimal polynomial is irreducible of degree n
inline std::uint64_t count_full_field_generators(const GraphCensus& census) {
    if (!census.full) throw std::invalid_argument("count_full_field_generators: need a full census");
    std::uint64_t count = 0;
    for (std::uint64_t idx : census.vertices) {
        DMatrix<Fq> A = index_to_matrix(census.ring, idx);
        FqPoly mu = minpoly(A);
        if (mu.degree() == census.ring->n && irreducible_fq(mu)) ++count;
    }
    return count;
}

} // namespace commgraph

#endif // COMMGRAPH_ORACLE_HPP
