#ifndef COMMGRAPH_FROBENIUS_HPP
#define COMMGRAPH_FROBENIUS_HPP

#include "commgraph/linalg.hpp"
#include "commgraph/poly.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace commgraph {

// Frobenius (rational canonical) form over a field K, with an explicit
// similarity: S A S^{-1} = C(f_1) + ... + C(f_r) (direct sum of companion
// blocks), f_1 | f_2 | ... | f_r, f_r = minpoly. Deterministic: cyclic
// vectors are built by scanning the standard basis in index order and
// merging via gcd-coprime splitting.
template <class K>
struct FrobeniusForm {
    std::vector<Poly<K>> invariant_factors; // divisibility chain, last = minpoly
    DenseMat<K> similarity;                 // S
    DenseMat<K> similarity_inv;             // S^{-1}, columns are the chain bases
    std::vector<int> block_sizes;

    int block_count() const { return static_cast<int>(invariant_factors.size()); }
};

template <class K>
DenseMat<K> companion_matrix(const Poly<K>& f) {
    const int d = f.degree();
    if (d < 1 || !f.is_monic()) throw std::invalid_argument("companion_matrix: need a monic nonconstant polynomial");
    DenseMat<K> C = DenseMat<K>::Constant(d, d, K(0));
    for (int i = 0; i + 1 < d; ++i) C(i + 1, i) = K(1);
    for (int i = 0; i < d; ++i) C(i, d - 1) = K(0) - f.coeff(i);
    return C;
}

// minimal polynomial of v under M (monic annihilator of least degree)
template <class K>
Poly<K> vector_minpoly(const DenseMat<K>& M, const DenseVec<K>& v) {
    const Eigen::Index n = M.rows();
    IncrementalEchelon<K> ech(n);
    DenseVec<K> w = v;
    for (Eigen::Index d = 0; d <= n; ++d) {
        if (auto dep = ech.add(w)) return with_scalar_ctx(Poly<K>(std::move(*dep)), M(0, 0));
        w = (M * w).eval();
    }
    throw std::logic_error("vector_minpoly: no dependence found");
}

// matrix minimal polynomial as the lcm of standard-basis vector annihilators
template <class K>
Poly<K> matrix_minpoly(const DenseMat<K>& M) {
    const Eigen::Index n = M.rows();
    Poly<K> f = Poly<K>::constant(K(1));
    for (Eigen::Index i = 0; i < n; ++i) {
        DenseVec<K> e = DenseVec<K>::Constant(n, K(0));
        e(i) = K(1);
        f = poly_lcm(f, vector_minpoly(M, e));
        if (f.degree() == n) break;
    }
    return f;
}

// evaluate p(M) v without forming p(M)
template <class K>
DenseVec<K> apply_poly(const Poly<K>& p, const DenseMat<K>& M, const DenseVec<K>& v) {
    DenseVec<K> r = DenseVec<K>::Constant(M.rows(), K(0));
    for (int i = p.degree(); i >= 0; --i) {
        r = (M * r).eval();
        r += v * p.coeff(i);
    }
    return r;
}

// a vector whose annihilator is the full minimal polynomial of M
template <class K>
std::pair<DenseVec<K>, Poly<K>> maximal_vector(const DenseMat<K>& M) {
    const Eigen::Index n = M.rows();
    DenseVec<K> v = DenseVec<K>::Constant(n, K(0));
    v(0) = K(1);
    Poly<K> f = vector_minpoly(M, v);
    for (Eigen::Index i = 1; i < n && f.degree() < n; ++i) {
        DenseVec<K> e = DenseVec<K>::Constant(n, K(0));
        e(i) = K(1);
        Poly<K> g = vector_minpoly(M, e);
        Poly<K> l = poly_lcm(f, g);
        if (l == f) continue;
        // merge: with f = f1 * (f/f1), g = g1 * (g/g1), f1 g1 = lcm coprime,
        // the vector (f/f1)(M) v + (g/g1)(M) e has annihilator exactly lcm
        auto [f1, g1] = coprime_split(f, g);
        v = apply_poly(poly_div_exact(f.monic(), f1), M, v) +
            apply_poly(poly_div_exact(g.monic(), g1), M, e);
        f = f1 * g1;
    }
    return {v, f};
}

namespace detail_frob {

// Solve for an M-equivariant projection onto the cyclic space spanned by the
// columns of Z (which carry a maximal vector chain): find Theta (d x n) with
// Theta Z = I_d and Z Theta M = M Z Theta; then ker(Theta) is an M-invariant
// complement. Existence is the classical direct-summand lemma for cyclic
// subspaces generated by maximal vectors.
template <class K>
DenseMat<K> equivariant_projection_coords(const DenseMat<K>& M, const DenseMat<K>& Z) {
    const int n = static_cast<int>(M.rows());
    const int d = static_cast<int>(Z.cols());
    const int unknowns = d * n;
    const DenseMat<K> MZ = (M * Z).eval();

    DenseMat<K> sys = DenseMat<K>::Constant(d * d + n * n, unknowns, K(0));
    DenseVec<K> rhs = DenseVec<K>::Constant(d * d + n * n, K(0));
    int row = 0;
    // Theta Z = I
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b, ++row) {
            for (int c = 0; c < n; ++c) sys(row, a * n + c) = Z(c, b);
            rhs(row) = (a == b) ? K(1) : K(0);
        }
    // Z Theta M = M Z Theta
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j, ++row) {
            for (int a = 0; a < d; ++a) {
                for (int c = 0; c < n; ++c) sys(row, a * n + c) += Z(i, a) * M(c, j);
                sys(row, a * n + j) -= MZ(i, a);
            }
        }

    auto sol = solve_any(sys, rhs);
    if (!sol) throw std::logic_error("frobenius: equivariant projection system is inconsistent");
    DenseMat<K> Theta(d, n);
    for (int a = 0; a < d; ++a)
        for (int c = 0; c < n; ++c) Theta(a, c) = (*sol)(a * n + c);
    return Theta;
}

} // namespace detail_frob

template <class K>
FrobeniusForm<K> frobenius_form(const DenseMat<K>& M) {
    const int n = static_cast<int>(M.rows());
    if (M.cols() != n) throw std::invalid_argument("frobenius_form: matrix not square");
    FrobeniusForm<K> out;
    if (n == 0) {
        out.similarity = DenseMat<K>(0, 0);
        out.similarity_inv = DenseMat<K>(0, 0);
        return out;
    }

    auto [v, f] = maximal_vector(M);
    const int d = f.degree();
    DenseMat<K> Z(n, d);
    {
        DenseVec<K> w = v;
        for (int c = 0; c < d; ++c) {
            Z.col(c) = w;
            if (c + 1 < d) w = (M * w).eval();
        }
    }

    DenseMat<K> P(n, n);
    if (d == n) {
        P = Z;
        out.invariant_factors.push_back(f);
        out.block_sizes.push_back(d);
    } else {
        DenseMat<K> Theta = detail_frob::equivariant_projection_coords(M, Z);
        // invariant complement W = ker Theta
        auto ker = kernel_basis(Theta);
        if (static_cast<int>(ker.size()) != n - d)
            throw std::logic_error("frobenius: complement dimension mismatch");
        DenseMat<K> Wb(n, n - d);
        for (int c = 0; c < n - d; ++c) Wb.col(c) = ker[static_cast<std::size_t>(c)];
        // restriction R: Wb R = M Wb, solved column by column
        DenseMat<K> R(n - d, n - d);
        const DenseMat<K> MW = (M * Wb).eval();
        for (int c = 0; c < n - d; ++c) {
            auto x = solve_any(Wb, DenseVec<K>(MW.col(c)));
            if (!x) throw std::logic_error("frobenius: complement is not invariant");
            R.col(c) = *x;
        }
        FrobeniusForm<K> rec = frobenius_form(R);
        out.invariant_factors = rec.invariant_factors;
        out.block_sizes = rec.block_sizes;
        out.invariant_factors.push_back(f);
        out.block_sizes.push_back(d);
        P.block(0, 0, n, n - d) = Wb * rec.similarity_inv;
        P.block(0, n - d, n, d) = Z;
    }

    auto Pinv = field_inverse(P);
    if (!Pinv) throw std::logic_error("frobenius: chain basis is singular");
    out.similarity_inv = P;
    out.similarity = *Pinv;
    return out;
}

// direct sum of the companion blocks of a form (for verification)
template <class K>
DenseMat<K> frobenius_blocks(const FrobeniusForm<K>& form) {
    int n = 0;
    for (int s : form.block_sizes) n += s;
    DenseMat<K> B = DenseMat<K>::Constant(n, n, K(0));
    int off = 0;
    for (std::size_t t = 0; t < form.invariant_factors.size(); ++t) {
        const int d = form.block_sizes[t];
        B.block(off, off, d, d) = companion_matrix(form.invariant_factors[t]);
        off += d;
    }
    return B;
}

} // namespace commgraph

#endif // COMMGRAPH_FROBENIUS_HPP
