#include "doctest.h"

#include "koszul/graded_map.hpp"
#include "koszul/tensor.hpp"

using namespace koszul;

namespace {

ModulePtr odd_pair() { return GradedModule::make(Ring::integers(), {{"x", 1, {}}, {"y", 1, {}}, {"e", 0, {}}}); }

}  // namespace

TEST_SUITE("graded-core") {

TEST_CASE("canonical basis order: degree, then natural name order") {
    auto m = GradedModule::make(Ring::integers(), {{"x10", 0, {}}, {"x2", 0, {}}, {"y", -1, {}}});
    CHECK(m->basis()[0].name == "y");
    CHECK(m->basis()[1].name == "x2");
    CHECK(m->basis()[2].name == "x10");
    CHECK(m->dimension(0) == 2);
}

TEST_CASE("duplicate names are rejected") {
    CHECK_THROWS_AS(GradedModule(Ring::integers(), {{"x", 0, {}}, {"x", 1, {}}}), Error);
}

TEST_CASE("tensor basis is lexicographic within each degree") {
    auto m = odd_pair();
    auto mm = tensor(m, m);
    CHECK(mm->size() == 9);
    auto two = mm->in_degree(2);
    REQUIRE(two.size() == 4);
    CHECK((*mm)[two[0]].name == "x⊗x");
    CHECK((*mm)[two[1]].name == "x⊗y");
    CHECK((*mm)[two[2]].name == "y⊗x");
    CHECK((*mm)[two[3]].name == "y⊗y");
}

TEST_CASE("twist carries the Koszul sign and squares to the identity") {
    auto m = odd_pair();
    auto t = twist<Integer>(m, m);
    auto mm = tensor(m, m);
    std::size_t xy = mm->index_of("x⊗y"), yx = mm->index_of("y⊗x"), xe = mm->index_of("x⊗e"), ex = mm->index_of("e⊗x");
    CHECK(t.coefficient(yx, xy) == -1);
    CHECK(t.coefficient(ex, xe) == 1);
    CHECK(compose(t, t) == GradedMap<Integer>::identity(mm));
}

TEST_CASE("tensor of maps: (f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)") {
    auto m = odd_pair();
    GradedMap<Integer> g(m, m, 1);  // e ↦ x
    g.set(m->index_of("x"), m->index_of("e"), Integer(1));
    auto id = GradedMap<Integer>::identity(m);
    auto ig = tensor_map(id, g);
    auto mm = tensor(m, m);
    CHECK(ig.coefficient(mm->index_of("x⊗x"), mm->index_of("x⊗e")) == -1);
    CHECK(ig.coefficient(mm->index_of("e⊗x"), mm->index_of("e⊗e")) == 1);
}

TEST_CASE("homogeneity is enforced") {
    auto m = odd_pair();
    GradedMap<Integer> f(m, m, 0);
    CHECK_THROWS_AS(f.set(m->index_of("x"), m->index_of("e"), Integer(1)), DegreeError);
}

TEST_CASE("dual module and shifts") {
    auto m = odd_pair();
    auto d = dual_module(m);
    CHECK(d->degree(d->index_of("x^∨")) == -1);
    auto s = shift(m, 2);
    CHECK(s->degree(s->index_of("e")) == -2);
}

TEST_CASE("dual map sign: ⟨f^∨ φ, x⟩ = (-1)^{|φ||f|} ⟨φ, f x⟩") {
    auto m = odd_pair();
    GradedMap<Integer> f(m, m, 1);
    f.set(m->index_of("x"), m->index_of("e"), Integer(1));
    auto fd = dual_map(f);
    auto d = dual_module(m);
    // φ = x^∨ has degree -1
    CHECK(fd.coefficient(d->index_of("e^∨"), d->index_of("x^∨")) == -1);
}

TEST_CASE("ring mismatch is reported") {
    auto a = GradedModule::make(Ring::integers(), {{"x", 0, {}}});
    auto b = GradedModule::make(Ring::rationals(), {{"x", 0, {}}});
    CHECK_THROWS_AS(GradedMap<Integer>(a, b, 0), RingMismatch);
}

TEST_CASE("tensor element rendering uses canonical order") {
    auto m = odd_pair();
    TensorElement<Integer> v({m, m});
    auto x = static_cast<std::uint32_t>(m->index_of("x")), y = static_cast<std::uint32_t>(m->index_of("y"));
    v.add({y, x}, Integer(-1));
    v.add({x, y}, Integer(2));
    CHECK(render(v) == "2·x⊗y - y⊗x");
}

}
