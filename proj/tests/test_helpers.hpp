#ifndef COMMGRAPH_TEST_HELPERS_HPP
#define COMMGRAPH_TEST_HELPERS_HPP

#include "commgraph/ring.hpp"

#include <initializer_list>
#include <vector>

namespace commgraph::testing {

inline DMatrix<Fq> fqmat(const RingContext* ring, std::initializer_list<std::initializer_list<long>> rows) {
    DMatrix<Fq> A = DMatrix<Fq>::zero(ring);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (long v : row) A.m(i, j++) = Fq(ring->fq, v);
        ++i;
    }
    return A;
}

// entries as {w, x, y, z} integer quadruples
inline DMatrix<Quat> quatmat(const RingContext* ring,
                             std::initializer_list<std::initializer_list<std::array<long, 4>>> rows) {
    DMatrix<Quat> A = DMatrix<Quat>::zero(ring);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (const auto& e : row) {
            A.m(i, j++) = Quat(ring->quat, Rational(e[0]), Rational(e[1]), Rational(e[2]), Rational(e[3]));
        }
        ++i;
    }
    return A;
}

// companion matrix of a monic polynomial (1s on the subdiagonal, last
// column -coefficients)
template <class D>
DMatrix<D> companion_dmatrix(const RingContext* ring, const Poly<typename ring_traits<D>::F>& f) {
    const int d = f.degree();
    DMatrix<D> A = DMatrix<D>::zero(ring);
    for (int i = 0; i + 1 < d; ++i) A.m(i + 1, i) = DMatrix<D>::one_entry(ring);
    for (int i = 0; i < d; ++i) {
        if constexpr (std::is_same_v<D, Fq>) A.m(i, d - 1) = Fq(0) - f.coeff(i);
        else A.m(i, d - 1) = Quat::scalar(ring->quat, -f.coeff(i));
    }
    return A;
}

inline std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// enumerate all of M_n(F_q) by index
inline DMatrix<Fq> fqmat_from_index(const RingContext* ring, std::uint64_t idx) {
    DMatrix<Fq> A = DMatrix<Fq>::zero(ring);
    const std::uint64_t q = ring->fq->q();
    for (int i = 0; i < ring->n; ++i)
        for (int j = 0; j < ring->n; ++j) {
            A.m(i, j) = Fq::from_index(ring->fq, idx % q);
            idx /= q;
        }
    return A;
}

} // namespace commgraph::testing

#endif
