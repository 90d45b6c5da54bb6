#include "koszul/uiab.hpp"

#include <functional>

namespace koszul {

namespace {

template <class S>
struct Ops {
    ModulePtr A;
    MultiOp<S> mu, lam, mutau, taulam;
    TensorElement<S> eta, le;
    int M = 0, L = 0;

    explicit Ops(const UIABInstance<S>& inst) : A(inst.module), M(inst.mu_degree()), L(inst.lambda_degree()) {
        mu = MultiOp<S>(inst.product, A);
        lam = MultiOp<S>(inst.coproduct, A);
        mutau = mu.twisted_input();
        taulam = lam.twisted_output();
        eta = as_tensor(inst.unit, A, A);
        le = apply_at(eta, 0, lam);
    }

    TensorElement<S> basis(const Multi& t) const {
        return TensorElement<S>::basis(std::vector<ModulePtr>(t.size(), A), t);
    }
    std::string name(const Multi& t) const { return render_basis<S>(std::vector<ModulePtr>(t.size(), A), t); }
};

template <class S>
TensorElement<S> lin(std::initializer_list<std::pair<int, const TensorElement<S>*>> parts) {
    TensorElement<S> out;
    for (const auto& [s, t] : parts) {
        if (out.factors.empty()) out.factors = t->factors;
        out += t->scaled(s);
    }
    return out;
}

// runs `sides` over every input; excluded when either side touched a dropped term
template <class S>
CheckResult quantify(const std::string& name, const Ops<S>& ops, const std::vector<Multi>& inputs,
                     const std::function<std::pair<TensorElement<S>, TensorElement<S>>(const Multi&)>& sides) {
    CheckResult r;
    r.name = name;
    for (const auto& in : inputs) {
        auto [lhs, rhs] = sides(in);
        if (lhs.tainted || rhs.tainted) {
            ++r.excluded;
            continue;
        }
        ++r.checked;
        if (!(lhs == rhs) && r.status == Status::Pass) {
            r.status = Status::Fail;
            r.witness = Witness{ops.name(in), render(lhs), render(rhs)};
        }
    }
    return r;
}

std::vector<Multi> singles(const std::vector<std::size_t>& w) {
    std::vector<Multi> out;
    for (auto x : w) out.push_back({static_cast<std::uint32_t>(x)});
    return out;
}
std::vector<Multi> pairs(const std::vector<std::size_t>& w) {
    std::vector<Multi> out;
    for (auto x : w)
        for (auto y : w) out.push_back({static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)});
    return out;
}
std::vector<Multi> triples(const std::vector<std::size_t>& w) {
    std::vector<Multi> out;
    for (auto x : w)
        for (auto y : w)
            for (auto z : w)
                out.push_back({static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(z)});
    return out;
}

template <class S>
GradedMap<S> graded_bracket(const GradedMap<S>& d_target, const GradedMap<S>& f, const GradedMap<S>& d_source) {
    GradedMap<S> a = compose(d_target, f);
    GradedMap<S> b = compose(f, d_source);
    return sign_of(f.degree()) > 0 ? a - b : a + b;
}

template <class S>
TensorElement<S> unital_lhs(const Ops<S>& o, const TensorElement<S>& v) {
    return apply_at(apply_at(v, 0, o.mu), 0, o.lam);
}

// (-1)^{|λ||μ|}((1⊗μ)(λ⊗1) + (μ⊗1)(1⊗λ)) - (-1)^{|μ|}(μ⊗μ)(1⊗λη⊗1)
template <class S>
TensorElement<S> unital_rhs(const Ops<S>& o, const TensorElement<S>& v) {
    TensorElement<S> t1 = apply_at(apply_at(v, 0, o.lam), 1, o.mu);
    TensorElement<S> t2 = apply_at(apply_at(v, 1, o.lam), 0, o.mu);
    TensorElement<S> w = insert_at(v, 1, o.le);
    TensorElement<S> t3 = apply_at(apply_at(w, 2, o.mu), 0, o.mu);
    int s = sign_of(o.L * o.M);
    return lin<S>({{s, &t1}, {s, &t2}, {-sign_of(o.M), &t3}});
}

template <class S>
std::pair<TensorElement<S>, TensorElement<S>> antisymmetry_sides(const Ops<S>& o, const TensorElement<S>& v) {
    const int M = o.M, L = o.L;
    TensorElement<S> w = insert_at(v, 1, o.le);
    // (-1)^{|μ|(|λ|+1)}(1⊗μ)(τλ⊗1) + (-1)^{|λ|(|μ|+1)}(μτ⊗1)(1⊗λ) - (-1)^{|λ|+|μ|}(μτ⊗μ)(1⊗λη⊗1)
    TensorElement<S> l1 = apply_at(apply_at(v, 0, o.taulam), 1, o.mu);
    TensorElement<S> l2 = apply_at(apply_at(v, 1, o.lam), 0, o.mutau);
    TensorElement<S> l3 = apply_at(apply_at(w, 2, o.mu), 0, o.mutau);
    TensorElement<S> lhs = lin<S>({{sign_of(M * (L + 1)), &l1}, {sign_of(L * (M + 1)), &l2}, {-sign_of(L + M), &l3}});
    // (-1)^{|λ||μ|}τ(1⊗μτ)(λ⊗1) - (-1)^{(|λ|+1)(|μ|+1)}τ(μ⊗1)(1⊗τλ) - (-1)^{|μ|}τ(μ⊗μτ)(1⊗λη⊗1)
    TensorElement<S> r1 = twist_at(apply_at(apply_at(v, 0, o.lam), 1, o.mutau), 0);
    TensorElement<S> r2 = twist_at(apply_at(apply_at(v, 1, o.taulam), 0, o.mu), 0);
    TensorElement<S> r3 = twist_at(apply_at(apply_at(w, 2, o.mutau), 0, o.mu), 0);
    TensorElement<S> rhs = lin<S>({{sign_of(L * M), &r1}, {-sign_of((L + 1) * (M + 1)), &r2}, {-sign_of(M), &r3}});
    return {lhs, rhs};
}

template <class S>
const std::vector<std::size_t>& window_of(const UIABInstance<S>& inst, const std::optional<std::vector<std::size_t>>& w) {
    return w ? *w : inst.safe;
}

}  // namespace

template <class S>
TensorElement<S> bivector_from(const SparseVector<S>& v, const ModulePtr& base) {
    return as_tensor(v, tensor(base, base), base);
}

template <class S>
UIABInstance<S> make_uiab(std::string name, ModulePtr module, GradedMap<S> product, GradedMap<S> coproduct,
                          SparseVector<S> unit, std::optional<GradedMap<S>> differential,
                          std::optional<std::vector<std::size_t>> safe) {
    ModulePtr aa = tensor(module, module);
    if (!same_module(product.source(), aa) || !same_module(product.target(), module))
        throw DimensionError("product must map A⊗A to A");
    if (!same_module(coproduct.source(), module) || !same_module(coproduct.target(), aa))
        throw DimensionError("coproduct must map A to A⊗A");
    for (const auto& [i, c] : unit)
        if (module->degree(i) != 0) throw DegreeError("unit must have degree 0, has a term " + (*module)[i].name);
    if (differential) {
        if (!same_module(differential->source(), module)) throw DimensionError("differential must act on A");
        GradedMap<S> daa = tensor_differential(*differential, *differential);
        if (!graded_bracket(*differential, product, daa).is_zero()) throw InvariantViolation("product is not a chain map");
        if (!graded_bracket(daa, coproduct, *differential).is_zero())
            throw InvariantViolation("coproduct is not a chain map");
    }
    UIABInstance<S> out;
    out.name = std::move(name);
    out.module = std::move(module);
    out.differential = std::move(differential);
    out.product = std::move(product);
    out.coproduct = std::move(coproduct);
    out.unit = std::move(unit);
    if (safe) {
        out.safe = std::move(*safe);
    } else {
        for (std::size_t i = 0; i < out.module->size(); ++i) out.safe.push_back(i);
    }
    return out;
}

template <class S>
AxiomReport check_axioms(const UIABInstance<S>& inst, const std::optional<std::vector<std::size_t>>& window) {
    Ops<S> o(inst);
    const auto& w = window_of(inst, window);
    AxiomReport rep;
    rep.subject = inst.name;

    rep.results.push_back(quantify<S>("unit", o, singles(w), [&](const Multi& in) {
        TensorElement<S> x = o.basis(in);
        TensorElement<S> left = apply_at(insert_at(x, 0, o.eta), 0, o.mu);
        TensorElement<S> right = apply_at(insert_at(x, 1, o.eta), 0, o.mu)
                                     .scaled(sign_of(static_cast<long long>(o.M) * o.A->degree(in[0])));
        TensorElement<S> both = left - x;
        both += right - x;
        // report the failing side against x
        if (!(left == x)) return std::pair{left, x};
        return std::pair{right, x};
    }));

    rep.results.push_back(quantify<S>("associativity", o, triples(w), [&](const Multi& in) {
        TensorElement<S> v = o.basis(in);
        TensorElement<S> a = apply_at(apply_at(v, 0, o.mu), 0, o.mu);
        TensorElement<S> b = apply_at(apply_at(v, 1, o.mu), 0, o.mu).scaled(sign_of(o.M));
        return std::pair{a, b};
    }));

    rep.results.push_back(quantify<S>("coassociativity", o, singles(w), [&](const Multi& in) {
        TensorElement<S> v = o.basis(in);
        TensorElement<S> a = apply_at(apply_at(v, 0, o.lam), 0, o.lam);
        TensorElement<S> b = apply_at(apply_at(v, 0, o.lam), 1, o.lam).scaled(sign_of(o.L));
        return std::pair{a, b};
    }));

    rep.results.push_back(quantify<S>("unital infinitesimal relation", o, pairs(w), [&](const Multi& in) {
        TensorElement<S> v = o.basis(in);
        return std::pair{unital_lhs(o, v), unital_rhs(o, v)};
    }));

    rep.results.push_back(quantify<S>("unital anti-symmetry", o, pairs(w),
                                      [&](const Multi& in) { return antisymmetry_sides(o, o.basis(in)); }));
    return rep;
}

template <class S>
CheckResult check_commutativity(const UIABInstance<S>& inst) {
    Ops<S> o(inst);
    return quantify<S>("commutativity", o, pairs(inst.safe), [&](const Multi& in) {
        TensorElement<S> v = o.basis(in);
        return std::pair{apply_at(v, 0, o.mutau), apply_at(v, 0, o.mu).scaled(sign_of(o.M))};
    });
}

template <class S>
CheckResult check_cocommutativity(const UIABInstance<S>& inst) {
    Ops<S> o(inst);
    return quantify<S>("cocommutativity", o, singles(inst.safe), [&](const Multi& in) {
        TensorElement<S> v = o.basis(in);
        return std::pair{apply_at(v, 0, o.taulam), apply_at(v, 0, o.lam).scaled(sign_of(o.L))};
    });
}

template <class S>
LambdaEta<S> lambda_eta(const UIABInstance<S>& inst) {
    Ops<S> o(inst);
    LambdaEta<S> out;
    out.value = o.le;
    out.symmetry.name = "λη symmetry";
    out.symmetry.checked = 1;
    TensorElement<S> lhs = twist_at(o.le, 0);
    TensorElement<S> rhs = o.le.scaled(sign_of(o.L));
    if (o.le.tainted) {
        out.symmetry.checked = 0;
        out.symmetry.excluded = 1;
    } else if (!(lhs == rhs)) {
        out.symmetry.status = Status::Fail;
        out.symmetry.witness = Witness{"η", render(lhs), render(rhs)};
    }
    out.symmetry.note = "λη = " + render(o.le);
    return out;
}

template <class S>
CheckResult check_involutivity(const UIABInstance<S>& inst) {
    Ops<S> o(inst);
    std::vector<std::string> unmet;
    if (!inst.module->ring().two_nonzero()) unmet.push_back("2 = 0 in " + inst.module->ring().name());
    if (!check_commutativity(inst).passed()) unmet.push_back("μ not commutative");
    if (!check_cocommutativity(inst).passed()) unmet.push_back("λ not cocommutative");
    if ((o.M - o.L) % 2 == 0) unmet.push_back("|μ| and |λ| have the same parity");

    CheckResult r = quantify<S>("involutivity", o, singles(inst.safe), [&](const Multi& in) {
        TensorElement<S> v = o.basis(in);
        TensorElement<S> ml = apply_at(apply_at(v, 0, o.lam), 0, o.mu);
        return std::pair{ml, TensorElement<S>(ml.factors)};
    });
    if (!unmet.empty()) {
        std::string why;
        for (const auto& u : unmet) why += (why.empty() ? "" : "; ") + u;
        r.note = "hypotheses not met: " + why;
        if (r.witness) r.note += "; not involutive: μλ(" + r.witness->input + ") = " + r.witness->lhs;
        else r.note += "; μλ vanishes on the window anyway";
        r.status = Status::NotApplicable;
    }
    return r;
}

template <class S>
CheckResult check_cc_implies_antisymmetry(const UIABInstance<S>& inst) {
    Ops<S> o(inst);
    CheckResult comm = check_commutativity(inst);
    CheckResult cocomm = check_cocommutativity(inst);
    if (!comm.passed() || !cocomm.passed()) {
        CheckResult r;
        r.name = "cc implies anti-symmetry";
        r.status = Status::NotApplicable;
        r.note = std::string("hypotheses unmet:") + (comm.passed() ? "" : " μ not commutative") +
                 (cocomm.passed() ? "" : " λ not cocommutative");
        return r;
    }
    return quantify<S>("cc implies anti-symmetry", o, pairs(inst.safe), [&](const Multi& in) {
        TensorElement<S> v = o.basis(in);
        auto [lhs, rhs] = antisymmetry_sides(o, v);
        TensorElement<S> lm = unital_lhs(o, v);
        TensorElement<S> want_l = lm.scaled(sign_of(o.M + o.L));
        TensorElement<S> want_r = twist_at(lm, 0).scaled(sign_of(o.M));
        if (!(lhs == want_l)) return std::pair{lhs, want_l};
        return std::pair{rhs, want_r};
    });
}

template <class S>
GradedMap<S> secondary_relation_apply(const GradedMap<S>& mu, const GradedMap<S>& lambda, const TensorElement<S>& c_fwd,
                                      const TensorElement<S>& c_op) {
    for (const auto* c : {&c_fwd, &c_op}) {
        if (c->is_zero()) continue;
        if (!c->homogeneous() || *c->degree() + mu.degree() != lambda.degree())
            throw DegreeError("bivector degree does not match the coproduct degree");
    }
    const ModulePtr& A = lambda.source();
    MultiOp<S> m(mu, A);
    GradedMap<S> out(lambda.source(), lambda.target(), lambda.degree());
    const GradedModule& tgt = *lambda.target();
    const bool cor48 = c_op == c_fwd.scaled(-1);
    for (std::size_t x = 0; x < A->size(); ++x) {
        TensorElement<S> v = TensorElement<S>::basis({A}, {static_cast<std::uint32_t>(x)});
        TensorElement<S> base = as_tensor(lambda.column(x), lambda.target(), A);
        TensorElement<S> t1 = c_fwd.is_zero() ? TensorElement<S>() : apply_at(insert_at(v, 1, c_fwd), 0, m);
        TensorElement<S> t2 = c_op.is_zero() ? TensorElement<S>() : apply_at(insert_at(v, 0, c_op), 1, m);
        TensorElement<S> res = base + t1 - t2;
        if (cor48) {
            TensorElement<S> t2c = c_fwd.is_zero() ? TensorElement<S>() : apply_at(insert_at(v, 0, c_fwd), 1, m);
            if (!(res == base + t1 + t2c)) throw InvariantViolation("secondary relation disagrees with its c_op = -c form");
        }
        for (const auto& [t, c] : res.terms) out.set(tgt.index_of_tuple(t), x, c);
        out.mark_clipped(x, lambda.clipped(x) || res.tainted);
    }
    return out;
}

template <class S>
CheckResult check_secondary_relation(const UIABInstance<S>& from, const UIABInstance<S>& to, const TensorElement<S>& c) {
    if (!same_module(from.module, to.module)) throw DimensionError("instances live on different modules");
    GradedMap<S> moved = secondary_relation_apply(from.product, from.coproduct, c, c.scaled(-1));
    CheckResult r;
    r.name = "secondary relation";
    for (std::size_t x : from.safe) {
        if (moved.clipped(x) || to.coproduct.clipped(x)) {
            ++r.excluded;
            continue;
        }
        ++r.checked;
        auto a = moved.column(x);
        auto b = to.coproduct.column(x);
        if (a != b && r.status == Status::Pass) {
            r.status = Status::Fail;
            r.witness = Witness{(*from.module)[x].name, render(a, *moved.target()), render(b, *to.coproduct.target())};
        }
    }
    return r;
}

template <class S>
CheckResult check_lemma_c_lambda_eta(const TensorElement<S>& c, const UIABInstance<S>& inst) {
    Ops<S> o(inst);
    CheckResult r;
    r.name = "c equals λη";
    r.checked = 1;
    TensorElement<S> given = c;
    if (given.factors.empty()) given.factors = o.le.factors;
    if (!(given == o.le)) {
        r.status = Status::Fail;
        r.witness = Witness{"η", render(given), render(o.le)};
        r.note = "difference c - λη = " + render(given - o.le);
    }
    return r;
}

template <class S>
CheckResult check_loday_ronco(const UIABInstance<S>& inst) {
    Ops<S> o(inst);
    if (o.L % 2 != 0) throw DegreeError("Loday-Ronco relation needs an even coproduct");
    TensorElement<S> ee = insert_at(o.eta, 1, o.eta);
    int s = 0;
    if (!o.le.is_zero() && o.le == ee) s = 1;
    else if (!o.le.is_zero() && o.le == ee.scaled(-1)) s = -1;
    if (s == 0) throw Error("λη = " + render(o.le) + " is not ±𝟙⊗𝟙");
    CheckResult r = quantify<S>("Loday-Ronco relation", o, pairs(inst.safe), [&](const Multi& in) {
        TensorElement<S> v = o.basis(in);
        TensorElement<S> t1 = apply_at(apply_at(v, 0, o.lam), 1, o.mu);
        TensorElement<S> t2 = apply_at(apply_at(v, 1, o.lam), 0, o.mu);
        return std::pair{unital_lhs(o, v), lin<S>({{1, &t1}, {1, &t2}, {-s, &v}})};
    });
    r.note = std::string("λη = ") + (s > 0 ? "+" : "-") + "𝟙⊗𝟙, correction term " + (s > 0 ? "-" : "+") + "1⊗1";
    return r;
}

template <class S>
std::vector<StructureConstant> structure_constants(const UIABInstance<S>& inst) {
    std::vector<StructureConstant> out;
    const GradedModule& A = *inst.module;
    const GradedModule& aa = *inst.product.source();
    for (std::size_t x : inst.safe)
        for (std::size_t y : inst.safe) {
            std::size_t src = aa.index_of_tuple({static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)});
            for (const auto& [z, c] : inst.product.column(src))
                out.push_back({true, z, src, "μ(" + aa[src].name + ")[" + A[z].name + "]"});
        }
    const GradedModule& tgt = *inst.coproduct.target();
    for (std::size_t x : inst.safe)
        for (const auto& [t, c] : inst.coproduct.column(x))
            out.push_back({false, t, x, "λ(" + A[x].name + ")[" + tgt[t].name + "]"});
    return out;
}

template <class S>
UIABInstance<S> flip_sign(const UIABInstance<S>& inst, const StructureConstant& k) {
    UIABInstance<S> out = inst;
    GradedMap<S>& f = k.in_product ? out.product : out.coproduct;
    f.set(k.target, k.source, S(-f.coefficient(k.target, k.source)));
    out.name += " [" + k.label + " negated]";
    return out;
}

#define KOSZUL_INSTANTIATE(S)                                                                                      \
    template TensorElement<S> bivector_from<S>(const SparseVector<S>&, const ModulePtr&);                          \
    template UIABInstance<S> make_uiab<S>(std::string, ModulePtr, GradedMap<S>, GradedMap<S>, SparseVector<S>,      \
                                          std::optional<GradedMap<S>>, std::optional<std::vector<std::size_t>>);   \
    template AxiomReport check_axioms<S>(const UIABInstance<S>&, const std::optional<std::vector<std::size_t>>&);   \
    template CheckResult check_commutativity<S>(const UIABInstance<S>&);                                           \
    template CheckResult check_cocommutativity<S>(const UIABInstance<S>&);                                         \
    template LambdaEta<S> lambda_eta<S>(const UIABInstance<S>&);                                                   \
    template CheckResult check_involutivity<S>(const UIABInstance<S>&);                                            \
    template CheckResult check_cc_implies_antisymmetry<S>(const UIABInstance<S>&);                                 \
    template GradedMap<S> secondary_relation_apply<S>(const GradedMap<S>&, const GradedMap<S>&,                    \
                                                      const TensorElement<S>&, const TensorElement<S>&);           \
    template CheckResult check_secondary_relation<S>(const UIABInstance<S>&, const UIABInstance<S>&,               \
                                                     const TensorElement<S>&);                                     \
    template CheckResult check_lemma_c_lambda_eta<S>(const TensorElement<S>&, const UIABInstance<S>&);             \
    template CheckResult check_loday_ronco<S>(const UIABInstance<S>&);                                             \
    template std::vector<StructureConstant> structure_constants<S>(const UIABInstance<S>&);                        \
    template UIABInstance<S> flip_sign<S>(const UIABInstance<S>&, const StructureConstant&);

KOSZUL_INSTANTIATE(Integer)
KOSZUL_INSTANTIATE(Rational)
KOSZUL_INSTANTIATE(Fp)

}  // namespace koszul
