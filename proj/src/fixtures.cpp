#include "koszul/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <random>

namespace koszul {

TruncationWindow::TruncationWindow(int n) : N(n) {
    if (N < 4) throw DimensionError("truncation window needs N ≥ 4");
}

namespace {

std::string monomial(int a, int k) {
    std::string u = k == 0 ? "" : (k == 1 ? "U" : "U^" + std::to_string(k));
    if (!a) return k == 0 ? "1" : u;
    return k == 0 ? "A" : "A*" + u;
}

struct Term {
    int a1, k1, a2, k2, coef;
};

struct LoopSpec {
    std::string name;
    bool has_A = true;
    bool laurent = false;
    int deg_U = 0, deg_A = 0, lambda_degree = 0;
    std::function<std::vector<Term>(int, int)> lambda;
};

// (i, k-i) or (i, k-1-i) index pairs with their sign
struct Split {
    int i, j, sign;
};

std::vector<Split> sphere_splits(int k) {
    std::vector<Split> out;
    for (int i = 0; i < k; ++i) out.push_back({i, k - 1 - i, 1});
    return out;
}

std::vector<Split> circle_splits(int k, Variant v) {
    std::vector<Split> out;
    if (v == Variant::Plus) {
        if (k >= 0)
            for (int i = 0; i <= k; ++i) out.push_back({i, k - i, 1});
        else
            for (int i = k + 1; i <= -1; ++i) out.push_back({i, k - i, -1});
    } else {
        if (k > 0)
            for (int i = 1; i <= k - 1; ++i) out.push_back({i, k - i, 1});
        else
            for (int i = k; i <= 0; ++i) out.push_back({i, k - i, -1});
    }
    return out;
}

// λ(U^k) = Σ (A U^i ⊗ U^j - U^i ⊗ A U^j), λ(A U^k) = Σ A U^i ⊗ A U^j
std::vector<Term> free_loop_terms(int a, const std::vector<Split>& splits) {
    std::vector<Term> out;
    for (const auto& s : splits) {
        if (a) {
            out.push_back({1, s.i, 1, s.j, s.sign});
        } else {
            out.push_back({1, s.i, 0, s.j, s.sign});
            out.push_back({0, s.i, 1, s.j, -s.sign});
        }
    }
    return out;
}

std::vector<Term> based_loop_terms(const std::vector<Split>& splits) {
    std::vector<Term> out;
    for (const auto& s : splits) out.push_back({0, s.i, 0, s.j, s.sign});
    return out;
}

template <class S>
UIABInstance<S> build_loop(const LoopSpec& spec, const Ring& ring, TruncationWindow w) {
    const int lo = spec.laurent ? -w.N : 0;
    std::vector<BasisElement> basis;
    for (int a = 0; a <= (spec.has_A ? 1 : 0); ++a)
        for (int k = lo; k <= w.N; ++k) basis.push_back({monomial(a, k), a * spec.deg_A + k * spec.deg_U, k});
    ModulePtr A = GradedModule::make(ring, basis);
    ModulePtr aa = tensor(A, A);
    auto in_window = [&](int k) { return k >= lo && k <= w.N; };
    auto index = [&](int a, int k) { return A->index_of(monomial(a, k)); };
    const S one = make_scalar<S>(1, ring);

    GradedMap<S> mu(aa, A, 0);
    for (std::size_t s = 0; s < aa->size(); ++s) {
        const Multi& t = aa->factor_indices(s);
        const BasisElement& x = (*A)[t[0]];
        const BasisElement& y = (*A)[t[1]];
        int ax = x.name[0] == 'A', ay = y.name[0] == 'A';
        if (ax && ay) continue;
        int k = *x.weight + *y.weight;
        // U has even degree, so moving it past A costs nothing
        if (!in_window(k)) {
            mu.mark_clipped(s);
            continue;
        }
        mu.set(index(ax | ay, k), s, one);
    }

    GradedMap<S> lambda(A, aa, spec.lambda_degree);
    for (std::size_t x = 0; x < A->size(); ++x) {
        int a = (*A)[x].name[0] == 'A';
        for (const auto& term : spec.lambda(a, *(*A)[x].weight)) {
            if (!in_window(term.k1) || !in_window(term.k2)) {
                lambda.mark_clipped(x);
                continue;
            }
            std::size_t j = aa->index_of_tuple({static_cast<std::uint32_t>(index(term.a1, term.k1)),
                                                static_cast<std::uint32_t>(index(term.a2, term.k2))});
            lambda.add(j, x, make_scalar<S>(term.coef, ring));
        }
    }

    std::vector<std::size_t> safe;
    for (std::size_t i = 0; i < A->size(); ++i)
        if (std::abs(*(*A)[i].weight) <= w.radius()) safe.push_back(i);
    SparseVector<S> unit{{index(0, 0), one}};
    return make_uiab<S>(spec.name, A, std::move(mu), std::move(lambda), std::move(unit), std::nullopt, std::move(safe));
}

const char* variant_suffix(Variant v) { return v == Variant::Plus ? "plus" : "minus"; }

}  // namespace

template <class S>
UIABInstance<S> make_loop_sphere(int n, const Ring& ring, TruncationWindow w) {
    if (n < 3 || n % 2 == 0) throw DegreeError("loop sphere fixture needs odd n ≥ 3");
    LoopSpec spec;
    spec.name = "lambda-s" + std::to_string(n);
    spec.deg_U = n - 1;
    spec.deg_A = -n;
    spec.lambda_degree = 1 - 2 * n;
    spec.lambda = [](int a, int k) { return free_loop_terms(a, sphere_splits(k)); };
    return build_loop<S>(spec, ring, w);
}

template <class S>
UIABInstance<S> make_loop_circle(Variant v, const Ring& ring, TruncationWindow w) {
    LoopSpec spec;
    spec.name = std::string("lambda-s1-") + variant_suffix(v);
    spec.laurent = true;
    spec.deg_U = 0;
    spec.deg_A = -1;
    spec.lambda_degree = -1;
    spec.lambda = [v](int a, int k) { return free_loop_terms(a, circle_splits(k, v)); };
    return build_loop<S>(spec, ring, w);
}

template <class S>
UIABInstance<S> make_based_loop(int n, const Ring& ring, TruncationWindow w, Variant v) {
    if (n < 1 || n % 2 == 0) throw DegreeError("based loop fixture needs odd n");
    LoopSpec spec;
    spec.has_A = false;
    spec.deg_U = n - 1;
    spec.lambda_degree = 1 - n;
    if (n == 1) {
        spec.name = std::string("omega-s1-") + variant_suffix(v);
        spec.laurent = true;
        spec.lambda = [v](int, int k) { return based_loop_terms(circle_splits(k, v)); };
    } else {
        spec.name = "omega-s" + std::to_string(n);
        spec.lambda = [](int, int k) { return based_loop_terms(sphere_splits(k)); };
    }
    return build_loop<S>(spec, ring, w);
}

template <class S>
TensorElement<S> circle_transition_bivector(const UIABInstance<S>& plus) {
    const ModulePtr& A = plus.module;
    const Ring& ring = A->ring();
    TensorElement<S> c({A, A});
    auto id = [&](const char* name) { return static_cast<std::uint32_t>(A->index_of(name)); };
    if (A->find("A")) {
        c.add({id("1"), id("A")}, make_scalar<S>(1, ring));
        c.add({id("A"), id("1")}, make_scalar<S>(-1, ring));
    } else {
        c.add({id("1"), id("1")}, make_scalar<S>(-1, ring));
    }
    return c;
}

template <class S>
A2PlusData<S> a2plus_from_loop(const UIABInstance<S>& inst, int n, TruncationWindow w) {
    LambdaEta<S> le = lambda_eta(inst);
    TensorElement<S> Q0 = le.value.scaled(-1);
    return make_a2plus<S>(inst.name, ChainComplex<S>::with_zero_differential(inst.module), inst.product,
                          inst.coproduct, TensorElement<S>(), std::move(Q0), TensorElement<S>(), n, inst.safe,
                          inst.unit, w.N, n >= 3 ? 1 : 0);
}

template <class S>
TStarS1<S> make_tstar_s1(const Ring& ring) {
    ModulePtr a = GradedModule::make(ring, {{"p", 0, std::nullopt}, {"q", -1, std::nullopt}});
    ModulePtr m = GradedModule::make(ring, {{"p̃", -2, std::nullopt}, {"q̃", -1, std::nullopt}});
    TStarS1<S> out;
    out.A = ChainComplex<S>::with_zero_differential(a);
    out.M = ChainComplex<S>::with_zero_differential(m);
    out.c = ChainMap<S>(out.M, out.A, GradedMap<S>(m, a, 0));
    out.csec = GradedMap<S>(m, a, 1);
    out.csec.set(a->index_of("q"), m->index_of("p̃"), make_scalar<S>(1, ring));
    out.csec.set(a->index_of("p"), m->index_of("q̃"), make_scalar<S>(1, ring));
    out.cone = mapping_cone(out.c);
    out.phi = transition_automorphism(out.cone, out.csec);
    return out;
}

template <class S>
UIABInstance<S> make_random_instance(const RandomSpec& spec, const Ring& ring) {
    if (spec.size == 0 || spec.size > kMaxRandomSize)
        throw DimensionError("random instance size must be in [1, " + std::to_string(kMaxRandomSize) + "]");
    std::mt19937_64 gen(spec.seed);
    const auto span = static_cast<std::uint64_t>(2 * spec.coefficient_bound + 1);
    auto draw = [&]() { return static_cast<long long>(gen() % span) - spec.coefficient_bound; };

    std::vector<BasisElement> basis;
    for (std::size_t i = 0; i < spec.size; ++i) {
        int d = spec.degrees.empty() ? 0 : spec.degrees[i % spec.degrees.size()];
        basis.push_back({"e" + std::to_string(i + 1), d, std::nullopt});
    }
    ModulePtr A = GradedModule::make(ring, basis);
    ModulePtr aa = tensor(A, A);

    GradedMap<S> mu(aa, A, spec.mu_degree);
    for (std::size_t s = 0; s < aa->size(); ++s)
        for (std::size_t z = 0; z < A->size(); ++z)
            if (A->degree(z) == aa->degree(s) + spec.mu_degree) mu.set(z, s, make_scalar<S>(draw(), ring));
    GradedMap<S> lambda(A, aa, spec.lambda_degree);
    for (std::size_t x = 0; x < A->size(); ++x)
        for (std::size_t j = 0; j < aa->size(); ++j)
            if (aa->degree(j) == A->degree(x) + spec.lambda_degree) lambda.set(j, x, make_scalar<S>(draw(), ring));

    SparseVector<S> unit;
    for (std::size_t i = 0; i < A->size(); ++i)
        if (A->degree(i) == 0) {
            unit.emplace(i, make_scalar<S>(1, ring));
            break;
        }
    return make_uiab<S>("random-" + std::to_string(spec.seed), A, std::move(mu), std::move(lambda), std::move(unit));
}

const std::vector<std::string>& fixture_catalog() {
    static const std::vector<std::string> names{"lambda-s3",      "lambda-s1-plus", "lambda-s1-minus", "omega-s3",
                                                "omega-s1-plus",  "omega-s1-minus", "tstar-s1"};
    return names;
}

bool is_uiab_fixture(const std::string& name) {
    return name != "tstar-s1" && std::find(fixture_catalog().begin(), fixture_catalog().end(), name) !=
                                     fixture_catalog().end();
}

bool is_a2plus_fixture(const std::string& name) { return name.rfind("lambda-", 0) == 0 && is_uiab_fixture(name); }

namespace {

[[noreturn]] void unknown_fixture(const std::string& name, const std::string& kind) {
    std::string list;
    for (const auto& n : fixture_catalog()) list += (list.empty() ? "" : ", ") + n;
    throw Error("unknown " + kind + " '" + name + "'; known fixtures: " + list);
}

}  // namespace

template <class S>
UIABInstance<S> make_fixture(const std::string& name, const Ring& ring, TruncationWindow w) {
    if (name == "lambda-s3") return make_loop_sphere<S>(3, ring, w);
    if (name == "lambda-s1-plus") return make_loop_circle<S>(Variant::Plus, ring, w);
    if (name == "lambda-s1-minus") return make_loop_circle<S>(Variant::Minus, ring, w);
    if (name == "omega-s3") return make_based_loop<S>(3, ring, w);
    if (name == "omega-s1-plus") return make_based_loop<S>(1, ring, w, Variant::Plus);
    if (name == "omega-s1-minus") return make_based_loop<S>(1, ring, w, Variant::Minus);
    unknown_fixture(name, "bialgebra fixture");
}

template <class S>
A2PlusData<S> make_a2plus_fixture(const std::string& name, const Ring& ring, TruncationWindow w) {
    if (!is_a2plus_fixture(name)) unknown_fixture(name, "cone fixture");
    int n = name == "lambda-s3" ? 3 : 1;
    return a2plus_from_loop(make_fixture<S>(name, ring, w), n, w);
}

template <class S>
TensorElement<S> expected_lambda_eta(const std::string& name, const UIABInstance<S>& inst) {
    const ModulePtr& A = inst.module;
    TensorElement<S> out({A, A});
    const Ring& ring = A->ring();
    auto id = [&](const char* n) { return static_cast<std::uint32_t>(A->index_of(n)); };
    if (name == "lambda-s1-plus" || name == "lambda-s1-minus") {
        out.add({id("A"), id("1")}, make_scalar<S>(1, ring));
        out.add({id("1"), id("A")}, make_scalar<S>(-1, ring));
    } else if (name == "omega-s1-plus" || name == "omega-s1-minus") {
        out.add({id("1"), id("1")}, make_scalar<S>(1, ring));
    } else if (!is_uiab_fixture(name)) {
        unknown_fixture(name, "bialgebra fixture");
    }
    return out;
}

#define KOSZUL_INSTANTIATE(S)                                                                                    \
    template UIABInstance<S> make_loop_sphere<S>(int, const Ring&, TruncationWindow);                            \
    template UIABInstance<S> make_loop_circle<S>(Variant, const Ring&, TruncationWindow);                         \
    template UIABInstance<S> make_based_loop<S>(int, const Ring&, TruncationWindow, Variant);                    \
    template TensorElement<S> circle_transition_bivector<S>(const UIABInstance<S>&);                             \
    template A2PlusData<S> a2plus_from_loop<S>(const UIABInstance<S>&, int, TruncationWindow);                   \
    template TStarS1<S> make_tstar_s1<S>(const Ring&);                                                           \
    template UIABInstance<S> make_random_instance<S>(const RandomSpec&, const Ring&);                            \
    template UIABInstance<S> make_fixture<S>(const std::string&, const Ring&, TruncationWindow);                 \
    template A2PlusData<S> make_a2plus_fixture<S>(const std::string&, const Ring&, TruncationWindow);            \
    template TensorElement<S> expected_lambda_eta<S>(const std::string&, const UIABInstance<S>&);

KOSZUL_INSTANTIATE(Integer)
KOSZUL_INSTANTIATE(Rational)
KOSZUL_INSTANTIATE(Fp)

}  // namespace koszul
