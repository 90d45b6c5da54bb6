#pragma once

#include "koszul/cone_algebra.hpp"
#include "koszul/uiab.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace koszul {

inline constexpr int kScenarioSchemaVersion = 1;

// malformed JSON, with a 1-based position
struct ParseError : Error {
    std::size_t line, column;
    ParseError(const std::string& what, std::size_t l, std::size_t c) : Error(what), line(l), column(c) {}
};

// well-formed JSON that violates the schema; `path` is a JSON-pointer-like field path
struct SchemaError : Error {
    std::string path;
    SchemaError(std::string p, const std::string& what) : Error(p + ": " + what), path(std::move(p)) {}
};

struct Scenario {
    std::string name;
    Ring ring;
    nlohmann::ordered_json doc;
    std::vector<std::string> checks;

    bool has_bialgebra() const { return doc.contains("product") && doc.contains("coproduct"); }
    bool has_cone() const { return doc.contains("cone"); }
};

// parses and validates everything (names, degrees, homogeneity, coefficients)
Scenario ingest_text(const std::string& text, const std::string& source = "<input>");
Scenario ingest_file(const std::string& path);

inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names{"axioms",          "commutativity", "cocommutativity",
                                                "lambda-eta",      "involutivity",  "cc-antisymmetry",
                                                "loday-ronco",     "lemma-c",       "cone"};
    return names;
}

template <class S>
ModulePtr build_module(const Scenario& sc);

template <class S>
GradedMap<S> build_differential(const Scenario& sc, const ModulePtr& m);  // zero when absent

template <class S>
UIABInstance<S> build_instance(const Scenario& sc);

template <class S>
TensorElement<S> build_bivector(const Scenario& sc, const std::string& key, const ModulePtr& m);

template <class S>
std::optional<A2PlusData<S>> build_a2plus(const Scenario& sc);

// scenario document for an instance; cone data and checks are optional
template <class S>
nlohmann::ordered_json export_scenario(const UIABInstance<S>& inst, const std::vector<std::string>& checks,
                                       const A2PlusData<S>* cone = nullptr);

// structural equality: module, maps, clipped marks, unit and safe set
template <class S>
bool same_instance(const UIABInstance<S>& a, const UIABInstance<S>& b);

}  // namespace koszul
