#include "doctest.h"
#include "oracles.hpp"

#include "koszul/matrix.hpp"

using namespace koszul;

namespace {

void check_smith(const Matrix<Integer>& m) {
    SmithForm s = smith_normal_form(m);
    REQUIRE(equal<Integer>(Matrix<Integer>(s.U * m * s.V), s.D));
    const Eigen::Index k = std::min(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < s.D.rows(); ++i)
        for (Eigen::Index j = 0; j < s.D.cols(); ++j)
            if (i != j) REQUIRE(s.D(i, j) == 0);
    for (Eigen::Index i = 0; i < k; ++i) REQUIRE(s.D(i, i) >= 0);
    for (Eigen::Index i = 0; i + 1 < k; ++i) {
        if (s.D(i, i) == 0) {
            REQUIRE(s.D(i + 1, i + 1) == 0);
        } else {
            REQUIRE(s.D(i + 1, i + 1) % s.D(i, i) == 0);
        }
    }
    auto dU = oracle::det_q(oracle::to_rows(s.U));
    auto dV = oracle::det_q(oracle::to_rows(s.V));
    REQUIRE((dU == 1 || dU == -1));
    REQUIRE((dV == 1 || dV == -1));
    REQUIRE(s.rank == oracle::rank_q(oracle::to_rows(m)));
    REQUIRE(rank<Rational>(m.cast<Rational>()) == s.rank);
}

}  // namespace

TEST_SUITE("exact-algebra") {

TEST_CASE("smith form of 1000 random 8x8 matrices against a rational oracle") {
    std::mt19937_64 gen(20240611);
    for (int trial = 0; trial < 1000; ++trial) check_smith(oracle::random_matrix(gen, 8, 8, 9));
}

TEST_CASE("smith form of rectangular and degenerate shapes") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<Eigen::Index> dim(1, 8);
        check_smith(oracle::random_matrix(gen, dim(gen), dim(gen), 9));
    }
    check_smith(Matrix<Integer>::Zero(3, 5));
    check_smith(Matrix<Integer>(0, 4));
}

TEST_CASE("known invariant factors") {
    Matrix<Integer> m(3, 3);
    m << 2, 4, 4, -6, 6, 12, 10, -4, -16;
    SmithForm s = smith_normal_form(m);
    CHECK(s.diagonal() == std::vector<Integer>{2, 6, 12});
    Matrix<Integer> two(1, 1);
    two << 2;
    CHECK(smith_normal_form(two).diagonal() == std::vector<Integer>{2});
}

TEST_CASE("kernel over Z is saturated") {
    Matrix<Integer> m(1, 2);
    m << 2, 4;
    auto ker = kernel_basis<Integer>(m);
    REQUIRE(ker.size() == 1);
    // (2, -1) up to sign, not (4, -2)
    Integer a = ker[0](0), b = ker[0](1);
    CHECK(((a == 2 && b == -1) || (a == -2 && b == 1)));
}

TEST_CASE("solve_in_image over Z respects integrality") {
    Matrix<Integer> m(2, 1);
    m << 2, 0;
    Vector<Integer> b(2);
    b << 1, 0;
    CHECK_FALSE(solve_in_image<Integer>(m, b).has_value());
    b << 4, 0;
    auto x = solve_in_image<Integer>(m, b);
    REQUIRE(x.has_value());
    CHECK((*x)(0) == 2);
}

TEST_CASE("GF(5) arithmetic and rank") {
    Ring r = Ring::prime_field(5);
    Matrix<Fp> m(2, 2);
    m << Fp(1, 5), Fp(2, 5), Fp(3, 5), Fp(1, 5);  // det = 1 - 6 = 0 mod 5
    CHECK(rank<Fp>(m) == 1);
    CHECK(to_string(Fp(-1, 5)) == "4");
    CHECK(r.name() == "GF(5)");
}

TEST_CASE("dimension mismatch is an error") {
    Matrix<Integer> a(2, 2), b(3, 1);
    a.setZero();
    b.setZero();
    CHECK_THROWS_AS(hstack<Integer>(a, b), DimensionError);
}

}
