#include "doctest.h"

#include "koszul/fixtures.hpp"

using namespace koszul;

namespace {

template <class S>
void all_pass(const CheckGroup& g) {
    for (const auto& r : g.results) {
        CAPTURE(r.name);
        CHECK(r.status == Status::Pass);
    }
}

template <class S>
void cone_suite(const std::string& name, const Ring& r) {
    CAPTURE(name);
    CAPTURE(r.name());
    auto data = make_a2plus_fixture<S>(name, r);
    auto pkg = derive_secondary_ops(data);
    auto prod = assemble_cone_product(data, pkg);
    all_pass<S>(check_pairing_identities(data, pkg));
    CheckGroup th = check_closed_forms(data, prod);
    CHECK(th.results.size() == 7);
    all_pass<S>(th);
    CHECK(check_cone_commutativity(prod).passed());
    CheckGroup g = check_assoc_implies_uir(data);
    REQUIRE(g.results.size() == 2);
    all_pass<S>(g);
    CHECK(g.results[1].checked > 0);
}

}  // namespace

TEST_SUITE("cone-algebra") {

TEST_CASE("closed forms, associativity and the expansion identity") {
    for (const char* name : {"lambda-s3", "lambda-s1-plus", "lambda-s1-minus"}) {
        cone_suite<Integer>(name, Ring::integers());
        cone_suite<Fp>(name, Ring::prime_field(5));
    }
    cone_suite<Rational>("lambda-s1-plus", Ring::rationals());
}

TEST_CASE("A2+ data validation") {
    auto data = make_a2plus_fixture<Integer>("lambda-s1-plus", Ring::integers());
    CHECK(data.lambda.degree() == -1);
    CHECK(data.Q0.degree() == std::optional<int>(-1));
    // Q0 of the wrong degree
    auto bad = data.Q0;
    bad.terms.clear();
    bad.add({0, 0}, Integer(1));
    CHECK_THROWS(make_a2plus<Integer>("bad", data.complex, data.mu, data.lambda, data.c0, bad, data.B, data.n,
                                      data.safe, data.unit, data.window, data.weight_defect));
    // c0 with τc0 - c0 ≠ 0 while d = 0
    auto m = data.module();
    TensorElement<Integer> c0({m, m});
    std::uint32_t one = static_cast<std::uint32_t>(m->index_of("1")), u = static_cast<std::uint32_t>(m->index_of("U^-1"));
    c0.add({one, u}, Integer(1));
    if (c0.degree() == std::optional<int>(-2))
        CHECK_THROWS(make_a2plus<Integer>("bad", data.complex, data.mu, data.lambda, c0, data.Q0, data.B, data.n,
                                          data.safe, data.unit, data.window, data.weight_defect));
}

TEST_CASE("a flipped Q0 is reported as a precondition failure") {
    auto data = make_a2plus_fixture<Integer>("lambda-s1-plus", Ring::integers());
    auto flipped = make_a2plus<Integer>("flipped", data.complex, data.mu, data.lambda, data.c0, data.Q0.scaled(-1),
                                        data.B, data.n, data.safe, data.unit, data.window, data.weight_defect);
    CheckGroup g = check_assoc_implies_uir(flipped);
    REQUIRE(g.results.size() == 2);
    CHECK(g.results[0].status == Status::Fail);
    CHECK(g.results[0].witness.has_value());
    CHECK(g.results[1].status == Status::Fail);
    CHECK(g.results[1].note.find("precondition failed") == 0);
}

TEST_CASE("degenerate data: lambda = 0 on the ground ring") {
    Ring r = Ring::integers();
    auto m = GradedModule::make(r, {{"1", 0, {}}});
    auto mm = tensor(m, m);
    GradedMap<Integer> mu(mm, m, 0);
    mu.set(0, 0, Integer(1));
    GradedMap<Integer> lambda(m, mm, -1);
    TensorElement<Integer> zero2({m, m}), zero3({m, m, m});
    auto data = make_a2plus<Integer>("point", ChainComplex<Integer>::with_zero_differential(m), mu, lambda, zero2,
                                     zero2, zero3, 1, std::nullopt, SparseVector<Integer>{{0, Integer(1)}});
    auto pkg = derive_secondary_ops(data);
    auto prod = assemble_cone_product(data, pkg);
    CHECK(prod.module()->size() == 2);
    all_pass<Integer>(check_closed_forms(data, prod));
    all_pass<Integer>(check_assoc_implies_uir(data));
}

TEST_CASE("operation shifts") {
    auto m = GradedModule::make(Ring::integers(), {{"x", 1, {}}, {"e", 0, {}}});
    auto mm = tensor(m, m);
    GradedMap<Integer> op(mm, m, 0);
    op.set(m->index_of("x"), mm->index_of("x⊗e"), Integer(1));
    op.set(m->index_of("x"), mm->index_of("e⊗x"), Integer(1));
    auto s = apply_op_shift(op, 0, 1, 0);
    // (-1)^{j|x|}: the odd first input picks up a sign, the even one does not
    auto src = s.source();
    CHECK(s.coefficient(s.target()->index_of("x"), src->index_of("x⊗e")) == -1);
    CHECK(s.coefficient(s.target()->index_of("x"), src->index_of("e⊗x")) == 1);
}

TEST_CASE("cotangent circle transition automorphism") {
    auto t = make_tstar_s1<Integer>(Ring::integers());
    CHECK(t.c.map().is_zero());
    CHECK(t.phi.chain_map);
    CHECK(t.phi.unipotent);
    CHECK_FALSE(t.phi.identity_on_homology);
    CHECK(homology(t.cone.complex).render() == "H_-1 = Z^2, H_0 = Z^2");
    auto q = make_tstar_s1<Rational>(Ring::rationals());
    CHECK_FALSE(q.phi.identity_on_homology);
}

}
