#include "koszul/matrix.hpp"

#include <string>
#include <utility>

namespace koszul {

namespace {

using Index = Eigen::Index;

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

struct SmithWork {
    Matrix<Integer> A, U, V;

    void swap_rows(Index a, Index b) {
        if (a == b) return;
        A.row(a).swap(A.row(b));
        U.row(a).swap(U.row(b));
    }
    void swap_cols(Index a, Index b) {
        if (a == b) return;
        A.col(a).swap(A.col(b));
        V.col(a).swap(V.col(b));
    }
    // row_dst -= q * row_src
    void row_sub(Index dst, Index src, const Integer& q) {
        for (Index j = 0; j < A.cols(); ++j) A(dst, j) -= q * A(src, j);
        for (Index j = 0; j < U.cols(); ++j) U(dst, j) -= q * U(src, j);
    }
    void col_sub(Index dst, Index src, const Integer& q) {
        for (Index i = 0; i < A.rows(); ++i) A(i, dst) -= q * A(i, src);
        for (Index i = 0; i < V.rows(); ++i) V(i, dst) -= q * V(i, src);
    }
    void negate_row(Index r) {
        for (Index j = 0; j < A.cols(); ++j) A(r, j) = -A(r, j);
        for (Index j = 0; j < U.cols(); ++j) U(r, j) = -U(r, j);
    }
};

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
    std::vector<Integer> out;
    for (Index i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
    return out;
}

SmithForm smith_normal_form(const Matrix<Integer>& m) {
    const Index rows = m.rows(), cols = m.cols();
    SmithWork w{m, Matrix<Integer>::Identity(rows, rows), Matrix<Integer>::Identity(cols, cols)};
    Matrix<Integer>& A = w.A;
    Index t = 0;
    for (; t < std::min(rows, cols); ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        Index pi = -1, pj = -1;
        for (Index j = t; j < cols; ++j)
            for (Index i = t; i < rows; ++i)
                if (!A(i, j).is_zero() && (pi < 0 || abs_int(A(i, j)) < abs_int(A(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (Index i = t + 1; i < rows; ++i) {
                if (A(i, t).is_zero()) continue;
                w.row_sub(i, t, Integer(A(i, t) / A(t, t)));
                if (!A(i, t).is_zero()) clean = false;
            }
            for (Index j = t + 1; j < cols; ++j) {
                if (A(t, j).is_zero()) continue;
                w.col_sub(j, t, Integer(A(t, j) / A(t, t)));
                if (!A(t, j).is_zero()) clean = false;
            }
            if (!clean) {
                // a remainder smaller than the pivot survived: promote it
                Index bi = t, bj = t;
                for (Index i = t + 1; i < rows; ++i)
                    if (!A(i, t).is_zero() && abs_int(A(i, t)) < abs_int(A(bi, bj))) {
                        bi = i;
                        bj = t;
                    }
                for (Index j = t + 1; j < cols; ++j)
                    if (!A(t, j).is_zero() && abs_int(A(t, j)) < abs_int(A(bi, bj))) {
                        bi = t;
                        bj = j;
                    }
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            Index bad = -1;
            for (Index i = t + 1; i < rows && bad < 0; ++i)
                for (Index j = t + 1; j < cols; ++j)
                    if (!(A(i, j) % A(t, t)).is_zero()) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            w.row_sub(t, bad, Integer(-1));
        }
        if (A(t, t) < 0) w.negate_row(t);
    }
    SmithForm out;
    out.rank = static_cast<std::size_t>(t);
    out.U = std::move(w.U);
    out.D = std::move(w.A);
    out.V = std::move(w.V);
    return out;
}

template <class S>
RowEchelon<S> row_reduce(Matrix<S> m) {
    static_assert(ScalarTraits<S>::is_field, "row_reduce needs a field");
    RowEchelon<S> out;
    Index r = 0;
    for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
        Index p = -1;
        for (Index i = r; i < m.rows(); ++i)
            if (!is_zero(m(i, c))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        m.row(r).swap(m.row(p));
        S inv = ScalarTraits<S>::inverse(m(r, c));
        for (Index j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (Index i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            S f = m(i, c);
            for (Index j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

template <class S>
std::size_t rank(const Matrix<S>& m) {
    if constexpr (ScalarTraits<S>::is_field) {
        return row_reduce<S>(m).pivots.size();
    } else {
        return smith_normal_form(m).rank;
    }
}

template <class S>
std::vector<Vector<S>> kernel_basis(const Matrix<S>& m) {
    std::vector<Vector<S>> out;
    if constexpr (ScalarTraits<S>::is_field) {
        RowEchelon<S> e = row_reduce<S>(m);
        std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
        for (Index c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
        for (Index free = 0; free < m.cols(); ++free) {
            if (is_pivot[static_cast<std::size_t>(free)]) continue;
            Vector<S> v = Vector<S>::Zero(m.cols());
            v(free) = S(1);
            for (std::size_t k = 0; k < e.pivots.size(); ++k)
                v(e.pivots[k]) = -e.reduced(static_cast<Index>(k), free);
            out.push_back(std::move(v));
        }
    } else {
        SmithForm snf = smith_normal_form(m);
        for (Index j = static_cast<Index>(snf.rank); j < m.cols(); ++j) out.push_back(snf.V.col(j));
    }
    return out;
}

template <class S>
std::optional<Vector<S>> solve_in_image(const Matrix<S>& m, const Vector<S>& b) {
    if (b.size() != m.rows())
        throw DimensionError("solve_in_image: matrix has " + std::to_string(m.rows()) +
                             " rows but right-hand side has " + std::to_string(b.size()));
    if constexpr (ScalarTraits<S>::is_field) {
        Matrix<S> aug(m.rows(), m.cols() + 1);
        aug << m, b;
        RowEchelon<S> e = row_reduce<S>(aug);
        if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
        Vector<S> x = Vector<S>::Zero(m.cols());
        for (std::size_t k = 0; k < e.pivots.size(); ++k)
            x(e.pivots[k]) = e.reduced(static_cast<Index>(k), m.cols());
        return x;
    } else {
        SmithForm snf = smith_normal_form(m);
        Vector<Integer> ub = snf.U * b;
        Vector<Integer> y = Vector<Integer>::Zero(m.cols());
        for (Index i = 0; i < ub.size(); ++i) {
            if (i < static_cast<Index>(snf.rank)) {
                const Integer& d = snf.D(i, i);
                if (!(ub(i) % d).is_zero()) return std::nullopt;
                y(i) = ub(i) / d;
            } else if (!ub(i).is_zero()) {
                return std::nullopt;
            }
        }
        return Vector<Integer>(snf.V * y);
    }
}

template <class S>
Matrix<S> column_basis(const Matrix<S>& generators) {
    if constexpr (ScalarTraits<S>::is_field) {
        RowEchelon<S> e = row_reduce<S>(generators);
        Matrix<S> out(generators.rows(), static_cast<Index>(e.pivots.size()));
        for (std::size_t k = 0; k < e.pivots.size(); ++k)
            out.col(static_cast<Index>(k)) = generators.col(e.pivots[k]);
        return out;
    } else {
        // G V = U^{-1} D, so the first rank columns of G V are a lattice basis
        SmithForm snf = smith_normal_form(generators);
        Matrix<Integer> gv = generators * snf.V;
        return gv.leftCols(static_cast<Index>(snf.rank));
    }
}

template <class S>
Matrix<S> hstack(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.rows() != b.rows()) throw DimensionError("hstack: row counts differ");
    Matrix<S> out(a.rows(), a.cols() + b.cols());
    if (a.cols() > 0) out.leftCols(a.cols()) = a;
    if (b.cols() > 0) out.rightCols(b.cols()) = b;
    return out;
}

#define KOSZUL_INSTANTIATE(S)                                                        \
    template std::size_t rank<S>(const Matrix<S>&);                                  \
    template std::vector<Vector<S>> kernel_basis<S>(const Matrix<S>&);               \
    template std::optional<Vector<S>> solve_in_image<S>(const Matrix<S>&, const Vector<S>&); \
    template Matrix<S> column_basis<S>(const Matrix<S>&);                            \
    template Matrix<S> hstack<S>(const Matrix<S>&, const Matrix<S>&);

KOSZUL_INSTANTIATE(Integer)
KOSZUL_INSTANTIATE(Rational)
KOSZUL_INSTANTIATE(Fp)
template RowEchelon<Rational> row_reduce<Rational>(Matrix<Rational>);
template RowEchelon<Fp> row_reduce<Fp>(Matrix<Fp>);

}  // namespace koszul
