#ifndef COMMGRAPH_LINALG_HPP
#define COMMGRAPH_LINALG_HPP

#include "commgraph/fq.hpp"
#include "commgraph/rational.hpp"

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <vector>

namespace commgraph {

template <class K>
using DenseMat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using DenseVec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

namespace detail_linalg {

// Fraction-free (Bareiss) forward elimination of an integer matrix.
// Row-echelon result; every division is exact and checked. Pivots are chosen
// by minimal bit size for growth control, lowest row index on ties.
struct BareissEchelon {
    std::vector<std::vector<Integer>> rows;
    std::vector<int> pivot_cols;  // per echelon row
};

inline Integer exact_div(const Integer& a, const Integer& b) {
    Integer q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw std::logic_error("bareiss: non-exact division");
    return q;
}

inline BareissEchelon bareiss_echelon(std::vector<std::vector<Integer>> m) {
    BareissEchelon out;
    const int nrows = static_cast<int>(m.size());
    const int ncols = nrows ? static_cast<int>(m[0].size()) : 0;
    Integer prev = 1;
    int top = 0;
    for (int col = 0; col < ncols && top < nrows; ++col) {
        int piv = -1;
        std::size_t best_bits = 0;
        for (int i = top; i < nrows; ++i) {
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] == 0) continue;
            const std::size_t bits =
                mpz_sizeinbase(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)].get_mpz_t(), 2);
            if (piv < 0 || bits < best_bits) { piv = i; best_bits = bits; }
        }
        if (piv < 0) continue;
        std::swap(m[static_cast<std::size_t>(top)], m[static_cast<std::size_t>(piv)]);
        const Integer p = m[static_cast<std::size_t>(top)][static_cast<std::size_t>(col)];
        for (int i = top + 1; i < nrows; ++i) {
            auto& ri = m[static_cast<std::size_t>(i)];
            const Integer f = ri[static_cast<std::size_t>(col)];
            for (int j = col + 1; j < ncols; ++j) {
                ri[static_cast<std::size_t>(j)] = exact_div(
                    ri[static_cast<std::size_t>(j)] * p -
                        f * m[static_cast<std::size_t>(top)][static_cast<std::size_t>(j)],
                    prev);
            }
            ri[static_cast<std::size_t>(col)] = 0;
        }
        prev = p;
        out.pivot_cols.push_back(col);
        ++top;
    }
    m.resize(static_cast<std::size_t>(top));
    out.rows = std::move(m);
    return out;
}

inline std::vector<std::vector<Integer>> to_integer_rows(const DenseMat<Rational>& M) {
    std::vector<std::vector<Integer>> rows(static_cast<std::size_t>(M.rows()));
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        std::vector<Rational> r(static_cast<std::size_t>(M.cols()));
        for (Eigen::Index j = 0; j < M.cols(); ++j) r[static_cast<std::size_t>(j)] = M(i, j);
        const Integer l = denominator_lcm(r);
        auto& out = rows[static_cast<std::size_t>(i)];
        out.resize(static_cast<std::size_t>(M.cols()));
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            Rational t = M(i, j) * Rational(l);
            out[static_cast<std::size_t>(j)] = t.get_num();
        }
    }
    return rows;
}

} // namespace detail_linalg

// Kernel basis of M (right null space), canonical: one vector per free
// column in ascending order, with a 1 in the free position. Exact; over Q the
// elimination is fraction-free on denominator-cleared rows.
template <class K>
std::vector<DenseVec<K>> kernel_basis(const DenseMat<K>& M) {
    const Eigen::Index ncols = M.cols();
    std::vector<DenseVec<K>> out;

    if constexpr (std::is_same_v<K, Rational>) {
        auto ech = detail_linalg::bareiss_echelon(detail_linalg::to_integer_rows(M));
        std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
        for (int c : ech.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
        for (Eigen::Index fc = 0; fc < ncols; ++fc) {
            if (is_pivot[static_cast<std::size_t>(fc)]) continue;
            DenseVec<K> x = DenseVec<K>::Constant(ncols, Rational(0));
            x(fc) = 1;
            for (int r = static_cast<int>(ech.pivot_cols.size()) - 1; r >= 0; --r) {
                const int pc = ech.pivot_cols[static_cast<std::size_t>(r)];
                const auto& row = ech.rows[static_cast<std::size_t>(r)];
                Rational acc = 0;
                for (Eigen::Index j = pc + 1; j < ncols; ++j) {
                    if (row[static_cast<std::size_t>(j)] == 0 || x(j) == 0) continue;
                    acc += Rational(row[static_cast<std::size_t>(j)]) * x(j);
                }
                x(pc) = -acc / Rational(row[static_cast<std::size_t>(pc)]);
            }
            out.push_back(std::move(x));
        }
        return out;
    } else {
        DenseMat<K> A = M;
        const Eigen::Index nrows = A.rows();
        std::vector<int> pivot_cols;
        Eigen::Index top = 0;
        for (Eigen::Index col = 0; col < ncols && top < nrows; ++col) {
            Eigen::Index piv = -1;
            for (Eigen::Index i = top; i < nrows; ++i)
                if (!(A(i, col) == K(0))) { piv = i; break; }
            if (piv < 0) continue;
            if (piv != top) A.row(piv).swap(A.row(top));
            const K inv = K(1) / A(top, col);
            for (Eigen::Index j = col; j < ncols; ++j) A(top, j) = A(top, j) * inv;
            for (Eigen::Index i = 0; i < nrows; ++i) {
                if (i == top || A(i, col) == K(0)) continue;
                const K f = A(i, col);
                for (Eigen::Index j = col; j < ncols; ++j) A(i, j) = A(i, j) - f * A(top, j);
            }
            pivot_cols.push_back(static_cast<int>(col));
            ++top;
        }
        std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
        for (int c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
        for (Eigen::Index fc = 0; fc < ncols; ++fc) {
            if (is_pivot[static_cast<std::size_t>(fc)]) continue;
            DenseVec<K> x = DenseVec<K>::Constant(ncols, K(0));
            x(fc) = K(1);
            for (std::size_t r = 0; r < pivot_cols.size(); ++r)
                x(pivot_cols[r]) = K(0) - A(static_cast<Eigen::Index>(r), fc);
            out.push_back(std::move(x));
        }
        return out;
    }
}

template <class K>
int rank_of(const DenseMat<K>& M) {
    if constexpr (std::is_same_v<K, Rational>) {
        return static_cast<int>(
            detail_linalg::bareiss_echelon(detail_linalg::to_integer_rows(M)).pivot_cols.size());
    } else {
        return static_cast<int>(M.cols()) - static_cast<int>(kernel_basis(M).size());
    }
}

// One solution of M x = b (free variables set to 0), or nullopt.
template <class K>
std::optional<DenseVec<K>> solve_any(const DenseMat<K>& M, const DenseVec<K>& b) {
    const Eigen::Index nrows = M.rows(), ncols = M.cols();
    DenseMat<K> A(nrows, ncols + 1);
    A.block(0, 0, nrows, ncols) = M;
    A.col(ncols) = b;
    std::vector<int> pivot_cols;
    Eigen::Index top = 0;
    for (Eigen::Index col = 0; col < ncols && top < nrows; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = top; i < nrows; ++i)
            if (!(A(i, col) == K(0))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != top) A.row(piv).swap(A.row(top));
        const K inv = K(1) / A(top, col);
        for (Eigen::Index j = col; j <= ncols; ++j) A(top, j) = A(top, j) * inv;
        for (Eigen::Index i = 0; i < nrows; ++i) {
            if (i == top || A(i, col) == K(0)) continue;
            const K f = A(i, col);
            for (Eigen::Index j = col; j <= ncols; ++j) A(i, j) = A(i, j) - f * A(top, j);
        }
        pivot_cols.push_back(static_cast<int>(col));
        ++top;
    }
    for (Eigen::Index i = top; i < nrows; ++i)
        if (!(A(i, ncols) == K(0))) return std::nullopt;
    // also catch inconsistency recorded in reduced rows without pivot... rows
    // below top are all zero in the coefficient block by construction
    DenseVec<K> x = DenseVec<K>::Constant(ncols, K(0));
    for (std::size_t r = 0; r < pivot_cols.size(); ++r)
        x(pivot_cols[r]) = A(static_cast<Eigen::Index>(r), ncols);
    return x;
}

// Inverse of a square matrix over a field; nullopt when singular.
template <class K>
std::optional<DenseMat<K>> field_inverse(const DenseMat<K>& M) {
    const Eigen::Index n = M.rows();
    if (M.cols() != n) throw std::invalid_argument("field_inverse: matrix not square");
    DenseMat<K> A(n, 2 * n);
    A.block(0, 0, n, n) = M;
    A.block(0, n, n, n) = DenseMat<K>::Identity(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = col; i < n; ++i)
            if (!(A(i, col) == K(0))) { piv = i; break; }
        if (piv < 0) return std::nullopt;
        if (piv != col) A.row(piv).swap(A.row(col));
        const K inv = K(1) / A(col, col);
        for (Eigen::Index j = col; j < 2 * n; ++j) A(col, j) = A(col, j) * inv;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == col || A(i, col) == K(0)) continue;
            const K f = A(i, col);
            for (Eigen::Index j = col; j < 2 * n; ++j) A(i, j) = A(i, j) - f * A(col, j);
        }
    }
    return DenseMat<K>(A.block(0, n, n, n));
}

// Incremental row echelon with augmentation: feeds vectors one at a time and
// reports the first linear dependence as coefficients over the fed sequence.
// This is the engine behind minimal-polynomial computations.
template <class K>
class IncrementalEchelon {
public:
    explicit IncrementalEchelon(Eigen::Index dim) : dim_(dim) {}

    int count() const { return static_cast<int>(rows_.size()); }

    // returns dependence coefficients c_0..c_t (c_t = 1) with
    // sum_i c_i v_i = 0 if v_t completes a dependence; otherwise stores it
    std::optional<std::vector<K>> add(DenseVec<K> v) {
        const std::size_t t = fed_++;
        std::vector<K> aug(t + 1, K(0));
        aug[t] = K(1);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const K f = v(pivots_[r]);
            if (f == K(0)) continue;
            v -= rows_[r] * f;
            for (std::size_t c = 0; c < augs_[r].size(); ++c) aug[c] = aug[c] - f * augs_[r][c];
        }
        Eigen::Index pc = -1;
        for (Eigen::Index c = 0; c < dim_; ++c)
            if (!(v(c) == K(0))) { pc = c; break; }
        if (pc < 0) return aug;
        const K inv = K(1) / v(pc);
        v *= inv;
        for (auto& a : aug) a = a * inv;
        rows_.push_back(std::move(v));
        augs_.push_back(std::move(aug));
        pivots_.push_back(pc);
        return std::nullopt;
    }

    bool in_span(DenseVec<K> v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const K f = v(pivots_[r]);
            if (f == K(0)) continue;
            v -= rows_[r] * f;
        }
        for (Eigen::Index c = 0; c < dim_; ++c)
            if (!(v(c) == K(0))) return false;
        return true;
    }

private:
    Eigen::Index dim_;
    std::size_t fed_ = 0;
    std::vector<DenseVec<K>> rows_;
    std::vector<std::vector<K>> augs_;
    std::vector<Eigen::Index> pivots_;
};

} // namespace commgraph

#endif // COMMGRAPH_LINALG_HPP
