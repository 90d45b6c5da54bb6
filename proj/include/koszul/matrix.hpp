#pragma once

#include "koszul/scalar.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <vector>

namespace koszul {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
Matrix<S> zero_matrix(Eigen::Index rows, Eigen::Index cols) {
    return Matrix<S>::Zero(rows, cols);
}

template <class S>
bool is_zero(const Matrix<S>& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!is_zero(m(i, j))) return false;
    return true;
}

template <class S>
bool is_zero(const Vector<S>& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!is_zero(v(i))) return false;
    return true;
}

template <class S>
bool equal(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

// U * M * V = D with D diagonal, d_1 | d_2 | ... , d_i >= 0, U and V unimodular.
struct SmithForm {
    Matrix<Integer> U, D, V;
    std::size_t rank = 0;

    std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const Matrix<Integer>& m);

template <class S>
struct RowEchelon {
    Matrix<S> reduced;
    std::vector<Eigen::Index> pivots;
};

// reduced row echelon form over a field
template <class S>
RowEchelon<S> row_reduce(Matrix<S> m);

template <class S>
std::size_t rank(const Matrix<S>& m);

template <class S>
std::size_t image_rank(const Matrix<S>& m) { return rank(m); }

// over Z the returned vectors are a basis of the full kernel lattice
template <class S>
std::vector<Vector<S>> kernel_basis(const Matrix<S>& m);

template <class S>
std::optional<Vector<S>> solve_in_image(const Matrix<S>& m, const Vector<S>& b);

// columns spanning the same submodule (lattice over Z), linearly independent
template <class S>
Matrix<S> column_basis(const Matrix<S>& generators);

template <class S>
Matrix<S> hstack(const Matrix<S>& a, const Matrix<S>& b);

}  // namespace koszul
