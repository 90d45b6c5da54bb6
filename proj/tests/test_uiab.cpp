#include "doctest.h"

#include "koszul/fixtures.hpp"

using namespace koszul;

namespace {

const std::vector<std::string> kBialgebras{"lambda-s3",  "lambda-s1-plus", "lambda-s1-minus",
                                           "omega-s3",   "omega-s1-plus",  "omega-s1-minus"};

template <class S>
void all_axioms(const Ring& r) {
    for (const auto& name : kBialgebras) {
        CAPTURE(name);
        auto inst = make_fixture<S>(name, r);
        AxiomReport rep = check_axioms(inst);
        REQUIRE(rep.results.size() == 5);
        for (const auto& c : rep.results) {
            CAPTURE(c.name);
            CHECK(c.status == Status::Pass);
            CHECK(c.checked > 0);
        }
    }
}

template <class S>
TensorElement<S> element(const UIABInstance<S>& inst, std::initializer_list<std::tuple<int, const char*, const char*>> terms) {
    TensorElement<S> v({inst.module, inst.module});
    for (const auto& [c, a, b] : terms)
        v.add({static_cast<std::uint32_t>(inst.module->index_of(a)), static_cast<std::uint32_t>(inst.module->index_of(b))},
              S(c));
    return v;
}

}  // namespace

TEST_SUITE("uiab") {

TEST_CASE("every fixture satisfies the axioms over Z, Q and GF(5)") {
    all_axioms<Integer>(Ring::integers());
    all_axioms<Rational>(Ring::rationals());
    all_axioms<Fp>(Ring::prime_field(5));
}

TEST_CASE("lambda eta values") {
    auto l3 = make_fixture<Integer>("lambda-s3", Ring::integers());
    CHECK(lambda_eta(l3).value.is_zero());
    CHECK(lambda_eta(make_fixture<Integer>("omega-s3", Ring::integers())).value.is_zero());

    auto lp = make_fixture<Integer>("lambda-s1-plus", Ring::integers());
    auto lm = make_fixture<Integer>("lambda-s1-minus", Ring::integers());
    CHECK(lambda_eta(lp).value == element(lp, {{1, "A", "1"}, {-1, "1", "A"}}));
    CHECK(lambda_eta(lm).value == element(lm, {{-1, "A", "1"}, {1, "1", "A"}}));
    CHECK(render(lambda_eta(lp).value) == "A⊗1 - 1⊗A");

    auto op = make_fixture<Integer>("omega-s1-plus", Ring::integers());
    auto om = make_fixture<Integer>("omega-s1-minus", Ring::integers());
    CHECK(lambda_eta(op).value == element(op, {{1, "1", "1"}}));
    CHECK(lambda_eta(om).value == element(om, {{-1, "1", "1"}}));
}

TEST_CASE("lambda minus is recovered from lambda plus") {
    for (const char* base : {"lambda-s1", "omega-s1"}) {
        CAPTURE(base);
        auto p = make_fixture<Rational>(std::string(base) + "-plus", Ring::rationals());
        auto m = make_fixture<Rational>(std::string(base) + "-minus", Ring::rationals());
        auto c = circle_transition_bivector(p);
        CHECK(check_secondary_relation(p, m, c).status == Status::Pass);
        CHECK(check_secondary_relation(p, m, c.scaled(-1)).status == Status::Fail);
        CHECK(check_lemma_c_lambda_eta(c, m).status == Status::Pass);
    }
    auto p = make_fixture<Integer>("lambda-s1-plus", Ring::integers());
    CHECK(render(circle_transition_bivector(p)) == "-A⊗1 + 1⊗A");
}

TEST_CASE("a wrong bivector reports the difference") {
    auto m = make_fixture<Integer>("omega-s1-minus", Ring::integers());
    auto wrong = element(m, {{1, "1", "1"}});
    CheckResult r = check_lemma_c_lambda_eta(wrong, m);
    CHECK(r.status == Status::Fail);
    CHECK(r.note == "difference c - λη = 2·1⊗1");
}

TEST_CASE("commutativity, cocommutativity and involutivity") {
    for (const auto& name : kBialgebras) {
        CAPTURE(name);
        auto inst = make_fixture<Integer>(name, Ring::integers());
        CHECK(check_commutativity(inst).passed());
        CHECK(check_cocommutativity(inst).passed());
        CHECK(check_cc_implies_antisymmetry(inst).passed());
        CheckResult inv = check_involutivity(inst);
        if (name.rfind("omega", 0) == 0) {
            CHECK(inv.status == Status::NotApplicable);
            CHECK(inv.note.find("hypotheses not met") != std::string::npos);
        } else {
            CHECK(inv.status == Status::Pass);
        }
    }
}

TEST_CASE("Loday-Ronco relation on the based circle") {
    CHECK(check_loday_ronco(make_fixture<Integer>("omega-s1-plus", Ring::integers())).passed());
    CHECK(check_loday_ronco(make_fixture<Integer>("omega-s1-minus", Ring::integers())).passed());
    CHECK_THROWS(check_loday_ronco(make_fixture<Integer>("omega-s3", Ring::integers())));
}

TEST_CASE("one flipped sign in lambda(U^2) is caught at U⊗U") {
    auto inst = make_fixture<Integer>("lambda-s3", Ring::integers());
    bool found = false;
    for (const auto& k : structure_constants(inst)) {
        if (k.label != "λ(U^2)[A⊗U]") continue;
        found = true;
        AxiomReport rep = check_axioms(flip_sign(inst, k));
        const CheckResult* uir = rep.find("unital infinitesimal relation");
        REQUIRE(uir != nullptr);
        CHECK(uir->status == Status::Fail);
        REQUIRE(uir->witness.has_value());
        CHECK(uir->witness->input == "U⊗U");
    }
    CHECK(found);
}

TEST_CASE("every single sign flip breaks an axiom") {
    for (const auto& name : kBialgebras) {
        CAPTURE(name);
        auto inst = make_fixture<Integer>(name, Ring::integers());
        for (const auto& k : structure_constants(inst)) {
            CAPTURE(k.label);
            AxiomReport rep = check_axioms(flip_sign(inst, k));
            bool witnessed = false;
            for (const auto& c : rep.results) witnessed = witnessed || (c.status == Status::Fail && c.witness);
            CHECK(witnessed);
        }
    }
}

TEST_CASE("truncation never shows up as a failure") {
    for (int n : {4, 5, 7, 12}) {
        CAPTURE(n);
        auto inst = make_fixture<Integer>("lambda-s1-minus", Ring::integers(), TruncationWindow(n));
        CHECK(check_axioms(inst).passed());
        CHECK(inst.truncated());
    }
    CHECK_THROWS_AS(TruncationWindow(3), Error);
}

TEST_CASE("unknown fixtures list the catalog") {
    try {
        make_fixture<Integer>("lambda-s5", Ring::integers());
        FAIL("expected an error");
    } catch (const Error& e) {
        std::string what = e.what();
        CHECK(what.find("lambda-s3") != std::string::npos);
        CHECK(what.find("tstar-s1") != std::string::npos);
    }
}

TEST_CASE("ring mismatch between scalar type and ring") {
    CHECK_THROWS_AS(make_fixture<Integer>("lambda-s3", Ring::rationals()), RingMismatch);
}

}
