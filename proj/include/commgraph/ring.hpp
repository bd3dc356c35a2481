#ifndef COMMGRAPH_RING_HPP
#define COMMGRAPH_RING_HPP

#include "commgraph/fq.hpp"
#include "commgraph/linalg.hpp"
#include "commgraph/poly.hpp"
#include "commgraph/quat.hpp"
#include "commgraph/rng.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace commgraph {

template <class D>
struct ring_traits;

template <>
struct ring_traits<Fq> {
    using F = Fq; // D is its own center: k = 1
    static constexpr int k = 1;
};
template <>
struct ring_traits<Quat> {
    using F = Rational; // center of a definite quaternion algebra is Q
    static constexpr int k = 4;
};

// The ambient ring M_n(D). D is a finite field (k = 1) or a definite
// rational quaternion algebra (k = 4); the center F is F_q resp. Q, and
// M_n(D) is an F-space of dimension n^2 k. Interned; raw pointers stay valid.
class RingContext {
public:
    int n;
    const FqCtx* fq;     // exactly one of fq/quat is set
    const QuatCtx* quat;

    bool is_fq() const { return fq != nullptr; }
    bool is_quat() const { return quat != nullptr; }
    int k() const { return quat ? 4 : 1; }
    int flat_dim() const { return n * n * k(); }

    static const RingContext* get(int n, const FqCtx* fq) {
        return intern(n, fq, nullptr);
    }
    static const RingContext* get(int n, const QuatCtx* quat) {
        return intern(n, nullptr, quat);
    }

    std::string spec_string() const {
        std::ostringstream os;
        os << "M(" << n << ", " << (fq ? fq->spec_string() : quat->spec_string()) << ")";
        return os.str();
    }

private:
    static const RingContext* intern(int n, const FqCtx* fq, const QuatCtx* quat) {
        if (n < 2) throw std::invalid_argument("ring: matrix size must be >= 2");
        if (n > 8) throw std::invalid_argument("ring: matrix size too large for exact toolkit");
        static std::mutex mu;
        static std::vector<std::unique_ptr<RingContext>> registry;
        std::lock_guard<std::mutex> lock(mu);
        for (const auto& c : registry)
            if (c->n == n && c->fq == fq && c->quat == quat) return c.get();
        auto ctx = std::unique_ptr<RingContext>(new RingContext());
        ctx->n = n; ctx->fq = fq; ctx->quat = quat;
        registry.push_back(std::move(ctx));
        return registry.back().get();
    }
    RingContext() = default;
};

namespace detail_ring {

inline Fq d_zero(const RingContext* r, const Fq*) { return Fq::zero(r->fq); }
inline Quat d_zero(const RingContext* r, const Quat*) { return Quat::zero(r->quat); }
inline Fq d_one(const RingContext* r, const Fq*) { return Fq::one(r->fq); }
inline Quat d_one(const RingContext* r, const Quat*) { return Quat::one(r->quat); }

} // namespace detail_ring

// n x n matrix over D, tagged with its ring. The vertex type of the
// commuting graph.
template <class D>
struct DMatrix {
    using F = typename ring_traits<D>::F;

    const RingContext* ring = nullptr;
    DenseMat<D> m;

    DMatrix() = default;
    DMatrix(const RingContext* r, DenseMat<D> mat) : ring(r), m(std::move(mat)) {
        if (m.rows() != r->n || m.cols() != r->n)
            throw std::invalid_argument("DMatrix: entry grid does not match ring size");
    }

    static D zero_entry(const RingContext* r) { return detail_ring::d_zero(r, static_cast<const D*>(nullptr)); }
    static D one_entry(const RingContext* r) { return detail_ring::d_one(r, static_cast<const D*>(nullptr)); }

    static DMatrix zero(const RingContext* r) {
        return DMatrix(r, DenseMat<D>::Constant(r->n, r->n, zero_entry(r)));
    }
    static DMatrix identity(const RingContext* r) {
        DMatrix A = zero(r);
        for (int i = 0; i < r->n; ++i) A.m(i, i) = one_entry(r);
        return A;
    }
};

namespace detail_ring {

inline void require_same_ring(const RingContext* a, const RingContext* b) {
    if (a != b) throw std::invalid_argument("DMatrix: ring context mismatch");
}

} // namespace detail_ring

template <class D>
bool operator==(const DMatrix<D>& A, const DMatrix<D>& B) {
    if (A.ring != B.ring) return false;
    for (int i = 0; i < A.ring->n; ++i)
        for (int j = 0; j < A.ring->n; ++j)
            if (!(A.m(i, j) == B.m(i, j))) return false;
    return true;
}
template <class D>
bool operator!=(const DMatrix<D>& A, const DMatrix<D>& B) { return !(A == B); }

template <class D>
DMatrix<D> mat_add(const DMatrix<D>& A, const DMatrix<D>& B) {
    detail_ring::require_same_ring(A.ring, B.ring);
    return DMatrix<D>(A.ring, A.m + B.m);
}
template <class D>
DMatrix<D> mat_sub(const DMatrix<D>& A, const DMatrix<D>& B) {
    detail_ring::require_same_ring(A.ring, B.ring);
    return DMatrix<D>(A.ring, A.m - B.m);
}

// Row-by-column product with entry products in A-then-B order; D may be
// noncommutative, so this is spelled out rather than delegated to Eigen.
template <class D>
DMatrix<D> mat_mul(const DMatrix<D>& A, const DMatrix<D>& B) {
    detail_ring::require_same_ring(A.ring, B.ring);
    const int n = A.ring->n;
    DMatrix<D> C = DMatrix<D>::zero(A.ring);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            D s = DMatrix<D>::zero_entry(A.ring);
            for (int l = 0; l < n; ++l) s += A.m(i, l) * B.m(l, j);
            C.m(i, j) = s;
        }
    return C;
}

// left scalar action d * M (entries d * m_ij)
template <class D>
DMatrix<D> scal_mul(const D& d, const DMatrix<D>& A) {
    DMatrix<D> C = A;
    for (int i = 0; i < A.ring->n; ++i)
        for (int j = 0; j < A.ring->n; ++j) C.m(i, j) = d * A.m(i, j);
    return C;
}

template <class D>
bool commutes(const DMatrix<D>& A, const DMatrix<D>& B) {
    detail_ring::require_same_ring(A.ring, B.ring);
    return mat_mul(A, B) == mat_mul(B, A);
}

// central <=> A = c I with c in the center F of D
template <class D>
bool is_central(const DMatrix<D>& A) {
    const int n = A.ring->n;
    const D zero = DMatrix<D>::zero_entry(A.ring);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !(A.m(i, j) == zero)) return false;
    for (int i = 1; i < n; ++i)
        if (!(A.m(i, i) == A.m(0, 0))) return false;
    if constexpr (std::is_same_v<D, Quat>) {
        return A.m(0, 0).is_rational();
    } else {
        return true; // every scalar of F_q is central
    }
}

template <class D>
bool is_zero(const DMatrix<D>& A) {
    const D zero = DMatrix<D>::zero_entry(A.ring);
    for (int i = 0; i < A.ring->n; ++i)
        for (int j = 0; j < A.ring->n; ++j)
            if (!(A.m(i, j) == zero)) return false;
    return true;
}

template <class D>
bool is_idempotent(const DMatrix<D>& A) { return mat_mul(A, A) == A; }

template <class D>
bool is_nilpotent_index2(const DMatrix<D>& A) {
    return !is_zero(A) && is_zero(mat_mul(A, A));
}

// member of E_n (noncentral idempotent) or N_n (noncentral nilpotent);
// nilpotents here are kept at index 2
template <class D>
bool is_en_member(const DMatrix<D>& A) {
    if (is_central(A)) return false;
    return is_idempotent(A) || is_nilpotent_index2(A);
}

// Gauss-Jordan over the division ring D using left row operations only.
// Returns the two-sided inverse, or nullopt when a zero pivot column shows
// the matrix singular.
template <class D>
std::optional<DMatrix<D>> mat_inverse(const DMatrix<D>& A) {
    const int n = A.ring->n;
    DenseMat<D> W(n, 2 * n);
    const D zero = DMatrix<D>::zero_entry(A.ring);
    const D one = DMatrix<D>::one_entry(A.ring);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            W(i, j) = A.m(i, j);
            W(i, n + j) = (i == j) ? one : zero;
        }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!(W(i, col) == zero)) { piv = i; break; }
        if (piv < 0) return std::nullopt;
        if (piv != col) W.row(piv).swap(W.row(col));
        const D inv = W(col, col).inverse();
        for (int j = col; j < 2 * n; ++j) W(col, j) = inv * W(col, j);
        for (int i = 0; i < n; ++i) {
            if (i == col || W(i, col) == zero) continue;
            const D f = W(i, col);
            for (int j = col; j < 2 * n; ++j) W(i, j) = W(i, j) - f * W(col, j);
        }
    }
    DMatrix<D> R = DMatrix<D>::zero(A.ring);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.m(i, j) = W(i, n + j);
    return R;
}

template <class D>
DMatrix<D> dmat_pow(const DMatrix<D>& A, std::uint64_t e) {
    DMatrix<D> acc = DMatrix<D>::identity(A.ring);
    DMatrix<D> base = A;
    while (e > 0) {
        if (e & 1u) acc = mat_mul(acc, base);
        if (e >>= 1u) base = mat_mul(base, base);
    }
    return acc;
}

// --- the F-linear view -----------------------------------------------------
//
// flatten: M_n(D) -> F^{n^2 k}, a fixed F-linear bijection. Ordering is
// normative (serialized bases depend on it): entries row-major, and within a
// quaternion entry the D-basis (1, i, j, k).

template <class D>
DenseVec<typename ring_traits<D>::F> flatten(const DMatrix<D>& A) {
    using F = typename ring_traits<D>::F;
    const int n = A.ring->n;
    const int k = A.ring->k();
    DenseVec<F> v(n * n * k);
    int t = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if constexpr (std::is_same_v<D, Fq>) {
                v(t++) = A.m(i, j);
            } else {
                for (int c = 0; c < 4; ++c) v(t++) = A.m(i, j).coord(c);
            }
        }
    return v;
}

template <class D>
DMatrix<D> unflatten(const RingContext* ring, const DenseVec<typename ring_traits<D>::F>& v) {
    const int n = ring->n;
    const int k = ring->k();
    if (v.size() != n * n * k) throw std::invalid_argument("unflatten: length mismatch");
    DMatrix<D> A = DMatrix<D>::zero(ring);
    int t = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if constexpr (std::is_same_v<D, Fq>) {
                A.m(i, j) = v(t++);
            } else {
                Rational w = v(t), x = v(t + 1), y = v(t + 2), z = v(t + 3);
                t += 4;
                A.m(i, j) = Quat(ring->quat, std::move(w), std::move(x), std::move(y), std::move(z));
            }
        }
    return A;
}

// t-th flatten-basis matrix of M_n(D)
template <class D>
DMatrix<D> basis_matrix(const RingContext* ring, int t) {
    using F = typename ring_traits<D>::F;
    DenseVec<F> v = DenseVec<F>::Constant(ring->flat_dim(), F(0));
    v(t) = F(1);
    return unflatten<D>(ring, v);
}

// lift a center scalar to the scalar matrix c I
template <class D>
DMatrix<D> central_scalar(const RingContext* ring, const typename ring_traits<D>::F& c) {
    DMatrix<D> A = DMatrix<D>::zero(ring);
    for (int i = 0; i < ring->n; ++i) {
        if constexpr (std::is_same_v<D, Fq>) A.m(i, i) = c;
        else A.m(i, i) = Quat::scalar(ring->quat, c);
    }
    return A;
}

// p(A) for p over the center F (Horner; coefficients act as scalar matrices)
template <class D>
DMatrix<D> eval_poly(const Poly<typename ring_traits<D>::F>& p, const DMatrix<D>& A) {
    DMatrix<D> R = DMatrix<D>::zero(A.ring);
    for (int i = p.degree(); i >= 0; --i) {
        R = mat_mul(R, A);
        R = mat_add(R, central_scalar<D>(A.ring, p.coeff(i)));
    }
    return R;
}

// Minimal polynomial of A over the center F: least dependence among
// flatten(I), flatten(A), flatten(A^2), ... (degree <= n k via the regular
// embedding).
template <class D>
Poly<typename ring_traits<D>::F> minpoly(const DMatrix<D>& A) {
    using F = typename ring_traits<D>::F;
    IncrementalEchelon<F> ech(A.ring->flat_dim());
    DMatrix<D> P = DMatrix<D>::identity(A.ring);
    const int bound = A.ring->n * A.ring->k() + 1;
    for (int d = 0; d <= bound; ++d) {
        if (auto dep = ech.add(flatten(P))) {
            Poly<F> f(std::move(*dep));
            if constexpr (std::is_same_v<D, Fq>) return with_scalar_ctx(f, Fq::one(A.ring->fq));
            else return f;
        }
        P = mat_mul(P, A);
    }
    throw std::logic_error("minpoly: no dependence within the degree bound");
}

// --- seeded random matrices ------------------------------------------------

inline Fq random_entry(const RingContext* ring, Rng& rng, long /*height*/, const Fq*) {
    return Fq::from_index(ring->fq, rng.below(ring->fq->q()));
}
inline Quat random_entry(const RingContext* ring, Rng& rng, long height, const Quat*) {
    return Quat(ring->quat, Rational(rng.range(-height, height)), Rational(rng.range(-height, height)),
                Rational(rng.range(-height, height)), Rational(rng.range(-height, height)));
}

template <class D>
DMatrix<D> random_dmatrix(const RingContext* ring, Rng& rng, long height = 2) {
    DMatrix<D> A = DMatrix<D>::zero(ring);
    for (int i = 0; i < ring->n; ++i)
        for (int j = 0; j < ring->n; ++j)
            A.m(i, j) = random_entry(ring, rng, height, static_cast<const D*>(nullptr));
    return A;
}

template <class D>
DMatrix<D> random_noncentral(const RingContext* ring, Rng& rng, long height = 2) {
    for (int tries = 0; tries < 10000; ++tries) {
        DMatrix<D> A = random_dmatrix<D>(ring, rng, height);
        if (!is_central(A)) return A;
    }
    throw std::logic_error("random_noncentral: sampler failed"); // unreachable in practice
}

} // namespace commgraph

#endif // COMMGRAPH_RING_HPP
