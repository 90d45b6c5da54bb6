#include "doctest.h"

#include "koszul/chain_complex.hpp"

using namespace koszul;

namespace {

template <class S>
ChainMap<S> times(int k, const Ring& r) {
    auto a = GradedModule::make(r, {{"a", 0, {}}});
    auto m = GradedModule::make(r, {{"m", 0, {}}});
    GradedMap<S> f(m, a, 0);
    f.set(0, 0, make_scalar<S>(k, r));
    return ChainMap<S>(ChainComplex<S>::with_zero_differential(m), ChainComplex<S>::with_zero_differential(a), f);
}

}  // namespace

TEST_SUITE("chain-complex") {

TEST_CASE("cone of multiplication by 2") {
    auto z = mapping_cone(times<Integer>(2, Ring::integers()));
    HomologySummary h = homology(z.complex);
    REQUIRE(h.degrees.size() == 1);
    CHECK(h.degrees.at(0).free_rank == 0);
    CHECK(h.degrees.at(0).torsion == std::vector<Integer>{2});
    CHECK(h.render() == "H_0 = Z/2");

    CHECK(homology(mapping_cone(times<Rational>(2, Ring::rationals())).complex).render() == "0");
    CHECK(homology(mapping_cone(times<Fp>(2, Ring::prime_field(2))).complex).render() == "H_0 = GF(2), H_1 = GF(2)");
}

TEST_CASE("cone of an identity is acyclic") {
    CHECK(homology(mapping_cone(times<Integer>(1, Ring::integers())).complex).degrees.empty());
}

TEST_CASE("d∘d ≠ 0 is rejected") {
    auto m = GradedModule::make(Ring::integers(), {{"x", 0, {}}, {"y", 1, {}}, {"z", 2, {}}});
    GradedMap<Integer> d(m, m, -1);
    d.set(m->index_of("y"), m->index_of("z"), Integer(1));
    d.set(m->index_of("x"), m->index_of("y"), Integer(1));
    CHECK_THROWS_AS(ChainComplex<Integer>{d}, InvariantViolation);
}

TEST_CASE("homology of a two-cell complex with torsion") {
    // Z --3--> Z --0--> Z
    auto m = GradedModule::make(Ring::integers(), {{"x", 0, {}}, {"y", 1, {}}, {"w", 2, {}}});
    GradedMap<Integer> d(m, m, -1);
    d.set(m->index_of("x"), m->index_of("y"), Integer(3));
    HomologySummary h = homology(ChainComplex<Integer>(d));
    CHECK(h.render() == "H_0 = Z/3, H_2 = Z");
}

TEST_CASE("chain homotopy f - g = [d, h]") {
    auto m = GradedModule::make(Ring::integers(), {{"x", 0, {}}, {"y", 1, {}}});
    GradedMap<Integer> d(m, m, -1);
    d.set(m->index_of("x"), m->index_of("y"), Integer(1));
    ChainComplex<Integer> c(d);
    auto id = GradedMap<Integer>::identity(m);
    GradedMap<Integer> h(m, m, 1);
    h.set(m->index_of("y"), m->index_of("x"), Integer(1));
    ChainMap<Integer> f(c, c, id), zero(c, c, GradedMap<Integer>(m, m, 0));
    CHECK(is_chain_homotopic(f, zero, h).holds);
    CHECK_FALSE(is_chain_homotopic(f, zero, GradedMap<Integer>(m, m, 1)).holds);
}

TEST_CASE("a non chain map is rejected") {
    auto m = GradedModule::make(Ring::integers(), {{"x", 0, {}}, {"y", 1, {}}});
    GradedMap<Integer> d(m, m, -1);
    d.set(m->index_of("x"), m->index_of("y"), Integer(1));
    ChainComplex<Integer> c(d);
    GradedMap<Integer> f(m, m, 0);
    f.set(m->index_of("x"), m->index_of("x"), Integer(1));
    CHECK_THROWS_AS(ChainMap<Integer>(c, c, f), InvariantViolation);
}

}
