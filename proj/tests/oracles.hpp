#pragma once

// Reference computations written independently of the library code paths.

#include "koszul/matrix.hpp"

#include <random>
#include <vector>

namespace oracle {

using koszul::Integer;
using koszul::Rational;

// rank by plain fraction Gaussian elimination
inline std::size_t rank_q(const std::vector<std::vector<Rational>>& rows_in) {
    auto rows = rows_in;
    std::size_t r = 0;
    const std::size_t n = rows.size(), m = n ? rows[0].size() : 0;
    for (std::size_t c = 0; c < m && r < n; ++c) {
        std::size_t p = r;
        while (p < n && rows[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = r + 1; i < n; ++i) {
            if (rows[i][c] == 0) continue;
            Rational f = rows[i][c] / rows[r][c];
            for (std::size_t j = c; j < m; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

inline Rational det_q(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            Rational f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

inline std::vector<std::vector<Rational>> to_rows(const koszul::Matrix<Integer>& m) {
    std::vector<std::vector<Rational>> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(Rational(m(i, j)));
    return out;
}

// entries in [-bound, bound]; some draws get repeated or zero rows so low ranks show up
inline koszul::Matrix<Integer> random_matrix(std::mt19937_64& gen, Eigen::Index rows, Eigen::Index cols, int bound) {
    std::uniform_int_distribution<int> entry(-bound, bound);
    koszul::Matrix<Integer> m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = entry(gen);
    std::uniform_int_distribution<int> mode(0, 3);
    std::uniform_int_distribution<Eigen::Index> pick(0, rows - 1);
    switch (mode(gen)) {
        case 1: m.row(pick(gen)) = m.row(pick(gen)).eval(); break;
        case 2: m.row(pick(gen)).setZero(); break;
        case 3:
            for (int k = 0; k < 3; ++k) m.row(pick(gen)) = m.row(pick(gen)).eval();
            break;
        default: break;
    }
    return m;
}

}  // namespace oracle
