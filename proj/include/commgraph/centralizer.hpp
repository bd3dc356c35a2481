#ifndef COMMGRAPH_CENTRALIZER_HPP
#define COMMGRAPH_CENTRALIZER_HPP

#include "commgraph/linalg.hpp"
#include "commgraph/ring.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace commgraph {

// C_{M_n(D)}(A) as the F-linear kernel of X -> AX - XA on the flattened
// n^2 k space. Basis vectors unflatten to exact commuting matrices.
template <class D>
struct CentralizerBasis {
    using F = typename ring_traits<D>::F;
    DMatrix<D> anchor;
    std::vector<DenseVec<F>> basis;
    int dim() const { return static_cast<int>(basis.size()); }

    DMatrix<D> element(int idx) const { return unflatten<D>(anchor.ring, basis[static_cast<std::size_t>(idx)]); }
};

// Entry-height control: centralizers are invariant under central scaling,
// so quaternion anchors are cleared to integer coordinates first.
template <class D>
DMatrix<D> denominator_cleared(const DMatrix<D>& A) {
    if constexpr (std::is_same_v<D, Fq>) {
        return A;
    } else {
        DenseVec<Rational> v = flatten(A);
        Integer l = 1;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            Integer d = v(i).get_den();
            l = l / gcd(l, d) * d;
        }
        if (l == 1) return A;
        return scal_mul(Quat::scalar(A.ring->quat, Rational(l)), A);
    }
}

// (n^2 k) x (n^2 k) matrix of the commutator map X -> AX - XA (the anchor is
// denominator-cleared first; the kernel is unchanged)
template <class D>
DenseMat<typename ring_traits<D>::F> commutator_matrix(const DMatrix<D>& A) {
    using F = typename ring_traits<D>::F;
    const DMatrix<D> As = denominator_cleared(A);
    const int dim = A.ring->flat_dim();
    DenseMat<F> M(dim, dim);
    for (int t = 0; t < dim; ++t) {
        DMatrix<D> B = basis_matrix<D>(A.ring, t);
        M.col(t) = flatten(mat_sub(mat_mul(As, B), mat_mul(B, As)));
    }
    return M;
}

template <class D>
CentralizerBasis<D> centralizer(const DMatrix<D>& A) {
    CentralizerBasis<D> out;
    out.anchor = A;
    out.basis = kernel_basis(commutator_matrix(A));
    if constexpr (std::is_same_v<D, Quat>) {
        for (auto& v : out.basis) make_primitive_integer(v);
    }
    return out;
}

// basis of span C(A) intersect C(B): one stacked kernel problem
template <class D>
std::vector<DenseVec<typename ring_traits<D>::F>> centralizer_intersection(const DMatrix<D>& A,
                                                                           const DMatrix<D>& B) {
    using F = typename ring_traits<D>::F;
    detail_ring::require_same_ring(A.ring, B.ring);
    const int dim = A.ring->flat_dim();
    DenseMat<F> M(2 * dim, dim);
    M.block(0, 0, dim, dim) = commutator_matrix(A);
    M.block(dim, 0, dim, dim) = commutator_matrix(B);
    return kernel_basis(M);
}

// Spec'd signature: intersect two centralizer bases (anchors carried along).
template <class D>
std::vector<DenseVec<typename ring_traits<D>::F>> intersect(const CentralizerBasis<D>& c1,
                                                            const CentralizerBasis<D>& c2) {
    detail_ring::require_same_ring(c1.anchor.ring, c2.anchor.ring);
    return centralizer_intersection(c1.anchor, c2.anchor);
}

// A matrix in the span that is not c I, or nullopt when span(basis) lies in
// the central line F I. The central line is one-dimensional, so any subspace
// of dimension >= 2 contains a witness among its basis vectors.
template <class D>
std::optional<DMatrix<D>> noncentral_witness(const RingContext* ring,
                                             const std::vector<DenseVec<typename ring_traits<D>::F>>& basis) {
    for (const auto& v : basis) {
        DMatrix<D> X = unflatten<D>(ring, v);
        if (!is_central(X)) return X;
    }
    return std::nullopt;
}

} // namespace commgraph

#endif // COMMGRAPH_CENTRALIZER_HPP
