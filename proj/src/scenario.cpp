#include "koszul/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace koszul {

using nlohmann::ordered_json;

namespace {

struct Field {
    const ordered_json& node;
    std::string path;

    Field at(const std::string& key) const {
        if (!node.is_object()) throw SchemaError(path, "expected an object");
        auto it = node.find(key);
        if (it == node.end()) throw SchemaError(path + "/" + key, "required field missing");
        return {*it, path + "/" + key};
    }
    std::optional<Field> maybe(const std::string& key) const {
        if (!node.is_object()) throw SchemaError(path, "expected an object");
        auto it = node.find(key);
        if (it == node.end()) return std::nullopt;
        return Field{*it, path + "/" + key};
    }
    Field operator[](std::size_t i) const { return {node[i], path + "/" + std::to_string(i)}; }
    std::size_t size() const { return node.size(); }

    const ordered_json& array() const {
        if (!node.is_array()) throw SchemaError(path, "expected an array");
        return node;
    }
    std::string string() const {
        if (!node.is_string()) throw SchemaError(path, "expected a string");
        return node.get<std::string>();
    }
    int integer() const {
        if (!node.is_number_integer()) throw SchemaError(path, "expected an integer");
        return node.get<int>();
    }
};

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::size_t name_index(const GradedModule& m, const Field& f) {
    std::string name = f.string();
    auto i = m.find(name);
    if (!i) throw SchemaError(f.path, "unknown basis element '" + name + "'");
    return *i;
}

template <class S>
S coefficient(const Field& f, const Ring& ring) {
    std::string text;
    if (f.node.is_string()) text = f.node.get<std::string>();
    else if (f.node.is_number_integer()) text = std::to_string(f.node.get<long long>());
    else throw SchemaError(f.path, "coefficient must be a string or an integer");
    try {
        return ScalarTraits<S>::parse(text, ring);
    } catch (const std::exception& e) {
        throw SchemaError(f.path, "bad coefficient '" + text + "' for " + ring.name() + ": " + e.what());
    }
}

Multi names_of(const GradedModule& m, const Field& f, std::size_t arity) {
    f.array();
    if (f.size() != arity)
        throw SchemaError(f.path, "expected " + std::to_string(arity) + " basis name(s), got " + std::to_string(f.size()));
    Multi out;
    for (std::size_t k = 0; k < arity; ++k) out.push_back(static_cast<std::uint32_t>(name_index(m, f[k])));
    return out;
}

// list of [coef, [names...]] terms
template <class S>
TensorElement<S> combination(const Field& f, const ModulePtr& m, std::size_t arity) {
    TensorElement<S> out(std::vector<ModulePtr>(arity, m));
    f.array();
    for (std::size_t i = 0; i < f.size(); ++i) {
        Field term = f[i];
        if (!term.node.is_array() || term.size() != 2) throw SchemaError(term.path, "term must be [coefficient, [names]]");
        S c = coefficient<S>(term[0], m->ring());
        out.add(names_of(*m, term[1], arity), c);
    }
    return out;
}

std::size_t arity_of(const GradedModule& m) { return m.is_tensor() ? m.factors().size() : 1; }

template <class S>
GradedMap<S> table_map(const Field& f, const ModulePtr& base, const ModulePtr& src, const ModulePtr& tgt, int degree) {
    GradedMap<S> out(src, tgt, degree);
    const std::size_t in = arity_of(*src), outn = arity_of(*tgt);
    auto src_index = [&](const Multi& t) { return src->is_tensor() ? src->index_of_tuple(t) : t[0]; };
    auto tgt_index = [&](const Multi& t) { return tgt->is_tensor() ? tgt->index_of_tuple(t) : t[0]; };
    std::set<std::size_t> seen;
    if (auto table = f.maybe("table")) {
        table->array();
        for (std::size_t i = 0; i < table->size(); ++i) {
            Field entry = (*table)[i];
            Field input = entry.at("input");
            std::size_t s = src_index(names_of(*base, input, in));
            if (!seen.insert(s).second) throw SchemaError(input.path, "duplicate input " + (*src)[s].name);
            Field output = entry.at("output");
            output.array();
            for (std::size_t k = 0; k < output.size(); ++k) {
                Field term = output[k];
                if (!term.node.is_array() || term.size() != 2)
                    throw SchemaError(term.path, "term must be [coefficient, [names]]");
                S c = coefficient<S>(term[0], base->ring());
                std::size_t r = tgt_index(names_of(*base, term[1], outn));
                if (tgt->degree(r) != src->degree(s) + degree)
                    throw SchemaError(term.path, "term " + (*tgt)[r].name + " has degree " +
                                                     std::to_string(tgt->degree(r)) + ", expected " +
                                                     std::to_string(src->degree(s) + degree) + " for input " +
                                                     (*src)[s].name);
                out.add(r, s, c);
            }
        }
    }
    if (auto clipped = f.maybe("clipped")) {
        clipped->array();
        for (std::size_t i = 0; i < clipped->size(); ++i) out.mark_clipped(src_index(names_of(*base, (*clipped)[i], in)));
    }
    return out;
}

}  // namespace

Scenario ingest_text(const std::string& text, const std::string& source) {
    Scenario sc;
    try {
        sc.doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string why = e.what();
        auto at = why.find("syntax error");
        why = at == std::string::npos ? "malformed JSON" : why.substr(at);
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + why, line, col);
    }
    Field root{sc.doc, ""};
    if (!sc.doc.is_object()) throw SchemaError("/", "scenario must be a JSON object");
    int version = root.at("schema_version").integer();
    if (version != kScenarioSchemaVersion)
        throw SchemaError("/schema_version", "unsupported version " + std::to_string(version));
    sc.name = root.maybe("name") ? root.at("name").string() : source;
    Field ring = root.at("ring");
    try {
        sc.ring = Ring::parse(ring.string());
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError(ring.path, e.what());
    }
    if (auto checks = root.maybe("checks")) {
        checks->array();
        for (std::size_t i = 0; i < checks->size(); ++i) {
            std::string c = (*checks)[i].string();
            bool known = false;
            for (const auto& k : known_checks()) known = known || k == c;
            if (!known) throw SchemaError((*checks)[i].path, "unknown check '" + c + "'");
            sc.checks.push_back(c);
        }
    } else {
        sc.checks = {"axioms"};
    }

    for (const auto& c : sc.checks) {
        if (c == "cone" && !sc.has_cone()) throw SchemaError("/cone", "required by check 'cone'");
        if (c != "cone" && !sc.has_bialgebra())
            throw SchemaError(sc.doc.contains("product") ? "/coproduct" : "/product", "required by check '" + c + "'");
        if (c == "lemma-c" && !(sc.doc.contains("bivectors") && sc.doc["bivectors"].contains("c")))
            throw SchemaError("/bivectors/c", "required by check 'lemma-c'");
    }

    // validate by building once for the declared ring
    auto validate = [&](auto tag) {
        using S = decltype(tag);
        ModulePtr m = build_module<S>(sc);
        build_differential<S>(sc, m);
        if (sc.has_bialgebra()) build_instance<S>(sc);
        if (auto b = root.maybe("bivectors"))
            for (const auto& [key, v] : b->node.items()) build_bivector<S>(sc, key, m);
        if (sc.has_cone()) build_a2plus<S>(sc);
    };
    switch (sc.ring.kind) {
        case RingKind::Integers: validate(Integer{}); break;
        case RingKind::Rationals: validate(Rational{}); break;
        case RingKind::PrimeField: validate(Fp{}); break;
    }
    return sc;
}

Scenario ingest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return ingest_text(buf.str(), path);
}

template <class S>
ModulePtr build_module(const Scenario& sc) {
    Field root{sc.doc, ""};
    Field basis = root.at("module").at("basis");
    basis.array();
    std::vector<BasisElement> elements;
    std::set<std::string> names;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Field e = basis[i];
        BasisElement b;
        b.name = e.at("name").string();
        if (b.name.empty()) throw SchemaError(e.path + "/name", "empty name");
        if (!names.insert(b.name).second) throw SchemaError(e.path + "/name", "duplicate basis name '" + b.name + "'");
        b.degree = e.at("degree").integer();
        if (auto w = e.maybe("weight")) b.weight = w->integer();
        elements.push_back(std::move(b));
    }
    return GradedModule::make(sc.ring, std::move(elements));
}

template <class S>
GradedMap<S> build_differential(const Scenario& sc, const ModulePtr& m) {
    Field root{sc.doc, ""};
    auto d = root.maybe("differential");
    if (!d) return GradedMap<S>(m, m, -1);
    GradedMap<S> out = table_map<S>(*d, m, m, m, -1);
    if (!compose(out, out).is_zero()) throw SchemaError(d->path, "d∘d ≠ 0");
    return out;
}

template <class S>
UIABInstance<S> build_instance(const Scenario& sc) {
    Field root{sc.doc, ""};
    ModulePtr m = build_module<S>(sc);
    ModulePtr mm = tensor(m, m);
    Field prod = root.at("product");
    Field coprod = root.at("coproduct");
    GradedMap<S> mu = table_map<S>(prod, m, mm, m, prod.maybe("degree") ? prod.at("degree").integer() : 0);
    GradedMap<S> lambda = table_map<S>(coprod, m, m, mm, coprod.at("degree").integer());

    SparseVector<S> unit;
    if (auto u = root.maybe("unit")) {
        TensorElement<S> v = combination<S>(*u, m, 1);
        for (const auto& [t, c] : v.terms) {
            if (m->degree(t[0]) != 0) throw SchemaError(u->path, "unit term " + (*m)[t[0]].name + " is not in degree 0");
            unit.emplace(t[0], c);
        }
    }
    std::optional<std::vector<std::size_t>> safe;
    if (auto w = root.maybe("window")) {
        if (auto s = w->maybe("safe")) {
            s->array();
            safe.emplace();
            for (std::size_t i = 0; i < s->size(); ++i) safe->push_back(name_index(*m, (*s)[i]));
            std::sort(safe->begin(), safe->end());
            safe->erase(std::unique(safe->begin(), safe->end()), safe->end());
        }
    }
    std::optional<GradedMap<S>> d;
    if (root.maybe("differential")) d = build_differential<S>(sc, m);
    try {
        return make_uiab<S>(sc.name, m, std::move(mu), std::move(lambda), std::move(unit), std::move(d), std::move(safe));
    } catch (const InvariantViolation& e) {
        throw SchemaError("/differential", e.what());
    }
}

template <class S>
TensorElement<S> build_bivector(const Scenario& sc, const std::string& key, const ModulePtr& m) {
    Field root{sc.doc, ""};
    return combination<S>(root.at("bivectors").at(key), m, 2);
}

template <class S>
std::optional<A2PlusData<S>> build_a2plus(const Scenario& sc) {
    Field root{sc.doc, ""};
    auto cone = root.maybe("cone");
    if (!cone) return std::nullopt;
    UIABInstance<S> inst = build_instance<S>(sc);
    const ModulePtr& m = inst.module;
    auto element = [&](const char* key, std::size_t arity) {
        auto f = cone->maybe(key);
        return f ? combination<S>(*f, m, arity) : TensorElement<S>(std::vector<ModulePtr>(arity, m));
    };
    int n = cone->at("n").integer();
    std::optional<int> window;
    if (auto w = cone->maybe("window")) window = w->integer();
    int defect = cone->maybe("weight_defect") ? cone->at("weight_defect").integer() : 0;
    try {
        return make_a2plus<S>(sc.name, ChainComplex<S>(build_differential<S>(sc, m)), inst.product, inst.coproduct,
                              element("c0", 2), element("Q0", 2), element("B", 3), n, inst.safe, inst.unit, window,
                              defect);
    } catch (const Error& e) {
        throw SchemaError(cone->path, e.what());
    }
}

namespace {

template <class S>
ordered_json terms_json(const TensorElement<S>& v) {
    ordered_json out = ordered_json::array();
    for (const auto& [t, c] : v.terms) {
        ordered_json names = ordered_json::array();
        for (std::size_t k = 0; k < t.size(); ++k) names.push_back((*v.factors[k])[t[k]].name);
        out.push_back(ordered_json::array({to_string(c), names}));
    }
    return out;
}

template <class S>
ordered_json map_json(const GradedMap<S>& f, const ModulePtr& base, bool with_degree) {
    ordered_json out = ordered_json::object();
    if (with_degree) out["degree"] = f.degree();
    const GradedModule& src = *f.source();
    ordered_json table = ordered_json::array();
    ordered_json clipped = ordered_json::array();
    for (std::size_t s = 0; s < src.size(); ++s) {
        Multi in = src.is_tensor() ? src.factor_indices(s) : Multi{static_cast<std::uint32_t>(s)};
        ordered_json names = ordered_json::array();
        for (auto i : in) names.push_back((*base)[i].name);
        if (f.clipped(s)) clipped.push_back(names);
        auto col = f.column(s);
        if (col.empty()) continue;
        table.push_back({{"input", names}, {"output", terms_json(as_tensor(col, f.target(), base))}});
    }
    out["table"] = table;
    if (!clipped.empty()) out["clipped"] = clipped;
    return out;
}

}  // namespace

template <class S>
ordered_json export_scenario(const UIABInstance<S>& inst, const std::vector<std::string>& checks,
                             const A2PlusData<S>* cone) {
    const ModulePtr& m = inst.module;
    ordered_json doc;
    doc["schema_version"] = kScenarioSchemaVersion;
    doc["name"] = inst.name;
    doc["ring"] = m->ring().name();
    ordered_json basis = ordered_json::array();
    for (const auto& b : m->basis()) {
        ordered_json e{{"name", b.name}, {"degree", b.degree}};
        if (b.weight) e["weight"] = *b.weight;
        basis.push_back(e);
    }
    doc["module"] = {{"basis", basis}};
    if (inst.differential && !inst.differential->is_zero()) doc["differential"] = map_json(*inst.differential, m, false);
    doc["product"] = map_json(inst.product, m, true);
    doc["coproduct"] = map_json(inst.coproduct, m, true);
    doc["unit"] = terms_json(as_tensor(inst.unit, m, m));
    ordered_json safe = ordered_json::array();
    for (auto i : inst.safe) safe.push_back((*m)[i].name);
    doc["window"] = {{"safe", safe}};
    if (cone) {
        ordered_json c{{"n", cone->n}};
        if (!cone->c0.is_zero()) c["c0"] = terms_json(cone->c0);
        if (!cone->Q0.is_zero()) c["Q0"] = terms_json(cone->Q0);
        if (!cone->B.is_zero()) c["B"] = terms_json(cone->B);
        if (cone->window) c["window"] = *cone->window;
        c["weight_defect"] = cone->weight_defect;
        doc["cone"] = c;
    }
    doc["checks"] = checks;
    return doc;
}

template <class S>
bool same_instance(const UIABInstance<S>& a, const UIABInstance<S>& b) {
    return *a.module == *b.module && a.product == b.product && a.coproduct == b.coproduct && a.unit == b.unit &&
           a.safe == b.safe;
}

#define KOSZUL_INSTANTIATE(S)                                                                                     \
    template ModulePtr build_module<S>(const Scenario&);                                                          \
    template GradedMap<S> build_differential<S>(const Scenario&, const ModulePtr&);                               \
    template UIABInstance<S> build_instance<S>(const Scenario&);                                                  \
    template TensorElement<S> build_bivector<S>(const Scenario&, const std::string&, const ModulePtr&);           \
    template std::optional<A2PlusData<S>> build_a2plus<S>(const Scenario&);                                       \
    template ordered_json export_scenario<S>(const UIABInstance<S>&, const std::vector<std::string>&,             \
                                             const A2PlusData<S>*);                                               \
    template bool same_instance<S>(const UIABInstance<S>&, const UIABInstance<S>&);

KOSZUL_INSTANTIATE(Integer)
KOSZUL_INSTANTIATE(Rational)
KOSZUL_INSTANTIATE(Fp)

}  // namespace koszul
