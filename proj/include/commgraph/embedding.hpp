#ifndef COMMGRAPH_EMBEDDING_HPP
#define COMMGRAPH_EMBEDDING_HPP

#include "commgraph/linalg.hpp"
#include "commgraph/ring.hpp"

#include <stdexcept>
#include <vector>

namespace commgraph {

// Regular-representation embedding phi: M_n(D) -> M_{kn}(F). Each entry d is
// replaced by the k x k matrix of left multiplication by d on D in the fixed
// D-basis (1, i, j, k); for fields (k = 1) phi is the identity. phi is an
// injective F-algebra homomorphism, and centralizers correspond:
//     phi(C_{M_n(D)}(A)) = C_{M_{kn}(F)}(phi(A))  intersect  phi(M_n(D)).

inline DenseMat<Rational> left_mult_matrix(const Quat& u) {
    const QuatCtx* ctx = u.ctx();
    if (!ctx) throw std::invalid_argument("left_mult_matrix: element has no algebra context");
    DenseMat<Rational> L(4, 4);
    const Quat basis[4] = {Quat::one(ctx), Quat::unit_i(ctx), Quat::unit_j(ctx), Quat::unit_k(ctx)};
    for (int c = 0; c < 4; ++c) {
        const Quat col = u * basis[c];
        for (int r = 0; r < 4; ++r) L(r, c) = col.coord(r);
    }
    return L;
}

template <class D>
struct EmbeddedMatrix {
    using F = typename ring_traits<D>::F;
    const RingContext* source_ring = nullptr;
    DenseMat<F> image;   // kn x kn over F
    DMatrix<D> provenance;
};

template <class D>
EmbeddedMatrix<D> embed(const DMatrix<D>& A) {
    using F = typename ring_traits<D>::F;
    const int n = A.ring->n;
    const int k = A.ring->k();
    EmbeddedMatrix<D> out;
    out.source_ring = A.ring;
    out.provenance = A;
    out.image = DenseMat<F>::Constant(k * n, k * n, F(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if constexpr (std::is_same_v<D, Fq>) {
                out.image(i, j) = A.m(i, j);
            } else {
                out.image.block(4 * i, 4 * j, 4, 4) = left_mult_matrix(A.m(i, j));
            }
        }
    return out;
}

// flatten of a kn x kn image (row-major), for subspace computations
template <class F>
DenseVec<F> flatten_square(const DenseMat<F>& M) {
    DenseVec<F> v(M.rows() * M.cols());
    int t = 0;
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) v(t++) = M(i, j);
    return v;
}

// F-basis of the image subspace phi(M_n(D)) inside M_{kn}(F), flattened.
// n^2 k matrices of size kn x kn.
template <class D>
std::vector<DenseVec<typename ring_traits<D>::F>> image_subspace_basis(const RingContext* ring) {
    using F = typename ring_traits<D>::F;
    std::vector<DenseVec<F>> out;
    const int dim = ring->flat_dim();
    out.reserve(static_cast<std::size_t>(dim));
    for (int t = 0; t < dim; ++t)
        out.push_back(flatten_square(embed(basis_matrix<D>(ring, t)).image));
    return out;
}

struct CorrespondenceCheck {
    int dim_inner = 0;     // dim_F C_{M_n(D)}(A)
    int dim_outer_cap = 0; // dim_F ( C_{M_{kn}(F)}(phi(A)) intersect phi(M_n(D)) )
    bool equal = false;
};

// Verifies the centralizer identity by two independent rank computations:
// the inner dimension via the commutator kernel on M_n(D), the outer one by
// restricting the commutator of phi(A) to the embedded image subspace.
template <class D>
CorrespondenceCheck centralizer_correspondence_check(const DMatrix<D>& A) {
    using F = typename ring_traits<D>::F;
    const int n = A.ring->n;
    const int k = A.ring->k();
    const int dim = A.ring->flat_dim();

    CorrespondenceCheck out;

    // inner: kernel of X -> AX - XA on the flattened n^2 k space
    {
        DenseMat<F> M(dim, dim);
        for (int t = 0; t < dim; ++t) {
            DMatrix<D> B = basis_matrix<D>(A.ring, t);
            DenseVec<F> col = flatten(mat_sub(mat_mul(A, B), mat_mul(B, A)));
            M.col(t) = col;
        }
        out.dim_inner = dim - rank_of(M);
    }

    // outer: X = sum t_s phi(B_s); condition phi(A) X - X phi(A) = 0
    {
        const DenseMat<F> img = embed(A).image;
        const int kn = k * n;
        DenseMat<F> M(kn * kn, dim);
        for (int t = 0; t < dim; ++t) {
            const DenseMat<F> bimg = embed(basis_matrix<D>(A.ring, t)).image;
            M.col(t) = flatten_square<F>(img * bimg - bimg * img);
        }
        out.dim_outer_cap = dim - rank_of(M);
    }

    out.equal = (out.dim_inner == out.dim_outer_cap);
    return out;
}

// minimal polynomial of a kn x kn matrix over F (Krylov dependence)
template <class F>
Poly<F> minpoly_field_matrix(const DenseMat<F>& M) {
    const Eigen::Index n = M.rows();
    IncrementalEchelon<F> ech(n * n);
    DenseMat<F> P = DenseMat<F>::Identity(n, n);
    for (Eigen::Index d = 0; d <= n + 1; ++d) {
        if (auto dep = ech.add(flatten_square(P))) return with_scalar_ctx(Poly<F>(std::move(*dep)), M(0, 0));
        P = (P * M).eval();
    }
    throw std::logic_error("minpoly_field_matrix: no dependence found");
}

} // namespace commgraph

#endif // COMMGRAPH_EMBEDDING_HPP
