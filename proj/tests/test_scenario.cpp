#include "doctest.h"

#include "koszul/fixtures.hpp"
#include "koszul/scenario.hpp"

#include <fstream>
#include <sstream>

using namespace koszul;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

const std::string kMinimal = R"({
  "schema_version": 1,
  "name": "minimal",
  "ring": "Z",
  "module": {"basis": [{"name": "1", "degree": 0}]},
  "product": {"degree": 0, "table": [{"input": ["1", "1"], "output": [["1", ["1"]]]}]},
  "coproduct": {"degree": -1, "table": []},
  "unit": [["1", ["1"]]]
})";

template <class F>
std::string schema_path(F&& f) {
    try {
        f();
    } catch (const SchemaError& e) {
        return e.path;
    }
    return "<no error>";
}

template <class S>
void round_trip(const std::string& name, const Ring& r) {
    CAPTURE(name);
    CAPTURE(r.name());
    auto inst = make_fixture<S>(name, r);
    std::string text = export_scenario(inst, {"axioms"}).dump(2);
    Scenario sc = ingest_text(text, name);
    auto back = build_instance<S>(sc);
    CHECK(same_instance(inst, back));
    CHECK(export_scenario(back, {"axioms"}).dump(2) == text);
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("minimal scenario loads and passes") {
    Scenario sc = ingest_text(kMinimal);
    CHECK(sc.checks == std::vector<std::string>{"axioms"});
    CHECK(check_axioms(build_instance<Integer>(sc)).passed());
}

TEST_CASE("malformed JSON reports line and column") {
    std::string text = "{\n  \"schema_version\": 1,\n  \"ring\": Z\n}";
    try {
        ingest_text(text, "t.json");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.column == 11);
        CHECK(std::string(e.what()).rfind("t.json:3:11:", 0) == 0);
    }
}

TEST_CASE("semantic errors carry a field path") {
    auto edit = [](auto change) {
        auto doc = nlohmann::ordered_json::parse(kMinimal);
        change(doc);
        return doc.dump();
    };
    CHECK(schema_path([&] { ingest_text(edit([](auto& d) { d.erase("schema_version"); })); }) == "/schema_version");
    CHECK(schema_path([&] { ingest_text(edit([](auto& d) { d["schema_version"] = 9; })); }) == "/schema_version");
    CHECK(schema_path([&] { ingest_text(edit([](auto& d) { d["ring"] = "GF(4)"; })); }) == "/ring");
    CHECK(schema_path([&] { ingest_text(edit([](auto& d) { d["module"]["basis"][0]["degree"] = "0"; })); }) ==
          "/module/basis/0/degree");
    CHECK(schema_path([&] { ingest_text(edit([](auto& d) { d["unit"][0][1][0] = "u"; })); }) == "/unit/0/1/0");
    CHECK(schema_path([&] { ingest_text(edit([](auto& d) { d["checks"] = {"axioms", "telepathy"}; })); }) == "/checks/1");
    CHECK(schema_path([&] { ingest_text(edit([](auto& d) { d["product"]["table"][0]["output"][0][0] = "1/0"; })); }) ==
          "/product/table/0/output/0/0");
    CHECK(schema_path([&] {
              ingest_text(edit([](auto& d) { d["product"]["table"].push_back(d["product"]["table"][0]); }));
          }) == "/product/table/1/input");
    CHECK(schema_path([&] { ingest_text(edit([](auto& d) { d["checks"] = {"lemma-c"}; })); }) == "/bivectors/c");
    CHECK(schema_path([&] { ingest_text(edit([](auto& d) { d["checks"] = {"cone"}; })); }) == "/cone");
    CHECK(schema_path([&] { ingest_text(edit([](auto& d) { d.erase("coproduct"); })); }) == "/coproduct");
}

TEST_CASE("a degree-inhomogeneous product entry is rejected with its path") {
    auto doc = nlohmann::ordered_json::parse(kMinimal);
    doc["module"]["basis"].push_back({{"name", "x"}, {"degree", 2}});
    doc["product"]["table"][0]["output"].push_back({"3", {"x"}});
    try {
        ingest_text(doc.dump());
        FAIL("expected a schema error");
    } catch (const SchemaError& e) {
        CHECK(e.path == "/product/table/0/output/1");
        CHECK(std::string(e.what()).find("degree 2, expected 0") != std::string::npos);
    }
}

TEST_CASE("rational and prime field coefficients share the string encoding") {
    auto doc = nlohmann::ordered_json::parse(kMinimal);
    doc["ring"] = "Q";
    doc["product"]["table"][0]["output"][0][0] = "2/2";
    CHECK(check_axioms(build_instance<Rational>(ingest_text(doc.dump()))).passed());
    doc["ring"] = "GF(5)";
    doc["product"]["table"][0]["output"][0][0] = 6;
    CHECK(check_axioms(build_instance<Fp>(ingest_text(doc.dump()))).passed());
}

TEST_CASE("exported fixtures re-ingest to identical instances") {
    for (const auto& name : fixture_catalog()) {
        if (!is_uiab_fixture(name)) continue;
        round_trip<Integer>(name, Ring::integers());
        round_trip<Rational>(name, Ring::rationals());
        round_trip<Fp>(name, Ring::prime_field(5));
    }
}

TEST_CASE("cone data round-trips") {
    auto inst = make_fixture<Integer>("lambda-s1-minus", Ring::integers());
    auto data = make_a2plus_fixture<Integer>("lambda-s1-minus", Ring::integers());
    Scenario sc = ingest_text(export_scenario(inst, {"cone"}, &data).dump());
    auto back = build_a2plus<Integer>(sc);
    REQUIRE(back.has_value());
    CHECK(back->Q0 == data.Q0);
    CHECK(back->n == data.n);
    CHECK(back->window == data.window);
    CHECK(back->weight_defect == data.weight_defect);
    CHECK(check_assoc_implies_uir(*back).passed());
}

TEST_CASE("shipped scenario files") {
    Scenario minimal = ingest_file(KOSZUL_SOURCE_DIR "/scenarios/minimal.json");
    CHECK(check_axioms(build_instance<Integer>(minimal)).passed());
    Scenario broken = ingest_file(KOSZUL_SOURCE_DIR "/scenarios/broken.json");
    AxiomReport rep = check_axioms(build_instance<Integer>(broken));
    const CheckResult* uir = rep.find("unital infinitesimal relation");
    REQUIRE(uir != nullptr);
    CHECK(uir->status == Status::Fail);
    REQUIRE(uir->witness.has_value());
    CHECK(uir->witness->input == "U⊗U");
}

TEST_CASE("random instances are reproducible and match the golden file") {
    RandomSpec spec;
    spec.seed = 0;
    spec.size = 3;
    auto a = make_random_instance<Integer>(spec, Ring::integers());
    auto b = make_random_instance<Integer>(spec, Ring::integers());
    CHECK(same_instance(a, b));
    std::string text = export_scenario(a, {"axioms"}).dump(2) + "\n";
    CHECK(text == slurp(KOSZUL_SOURCE_DIR "/tests/golden/random_seed0_size3.json"));
    spec.seed = 1;
    CHECK_FALSE(same_instance(a, make_random_instance<Integer>(spec, Ring::integers())));
    spec.size = kMaxRandomSize + 1;
    CHECK_THROWS(make_random_instance<Integer>(spec, Ring::integers()));
}

}
