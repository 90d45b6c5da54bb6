#pragma once

#include "koszul/check.hpp"
#include "koszul/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace koszul {

template <class S>
struct UIABInstance {
    std::string name;
    ModulePtr module;
    std::optional<GradedMap<S>> differential;
    GradedMap<S> product;    // A⊗A → A
    GradedMap<S> coproduct;  // A → A⊗A
    SparseVector<S> unit;
    std::vector<std::size_t> safe;  // basis indices that checks quantify over

    int mu_degree() const { return product.degree(); }
    int lambda_degree() const { return coproduct.degree(); }
    bool truncated() const { return product.any_clipped() || coproduct.any_clipped(); }
};

// validates shapes, |η| = 0 and, with a differential, that μ and λ are chain maps
template <class S>
UIABInstance<S> make_uiab(std::string name, ModulePtr module, GradedMap<S> product, GradedMap<S> coproduct,
                          SparseVector<S> unit, std::optional<GradedMap<S>> differential = std::nullopt,
                          std::optional<std::vector<std::size_t>> safe = std::nullopt);

template <class S>
AxiomReport check_axioms(const UIABInstance<S>& inst, const std::optional<std::vector<std::size_t>>& window = std::nullopt);

// μτ = (-1)^{|μ|} μ and τλ = (-1)^{|λ|} λ on the safe window
template <class S>
CheckResult check_commutativity(const UIABInstance<S>& inst);
template <class S>
CheckResult check_cocommutativity(const UIABInstance<S>& inst);

template <class S>
struct LambdaEta {
    TensorElement<S> value;
    CheckResult symmetry;  // τλη = (-1)^{|λ|} λη
};

template <class S>
LambdaEta<S> lambda_eta(const UIABInstance<S>& inst);

// μλ = 0 when 2 ≠ 0 and μ, λ are (co)commutative of opposite parity
template <class S>
CheckResult check_involutivity(const UIABInstance<S>& inst);

// both sides of unital anti-symmetry reduce to (-1)^{|μ|+|λ|} λμ and (-1)^{|μ|} τλμ
template <class S>
CheckResult check_cc_implies_antisymmetry(const UIABInstance<S>& inst);

// λ' = λ + (μ⊗1)(1⊗c_fwd) - (1⊗μ)(c_op⊗1)
template <class S>
GradedMap<S> secondary_relation_apply(const GradedMap<S>& mu, const GradedMap<S>& lambda, const TensorElement<S>& c_fwd,
                                      const TensorElement<S>& c_op);

// compares secondary_relation_apply(from, c, -c) with `to` on the safe window
template <class S>
CheckResult check_secondary_relation(const UIABInstance<S>& from, const UIABInstance<S>& to, const TensorElement<S>& c);

// the supplied bivector equals λη
template <class S>
CheckResult check_lemma_c_lambda_eta(const TensorElement<S>& c, const UIABInstance<S>& inst);

// λμ = (1⊗μ)(λ⊗1) + (μ⊗1)(1⊗λ) ∓ 1⊗1 where λη = ±𝟙⊗𝟙; throws when not applicable
template <class S>
CheckResult check_loday_ronco(const UIABInstance<S>& inst);

struct StructureConstant {
    bool in_product = true;  // else coproduct
    std::size_t target = 0;
    std::size_t source = 0;
    std::string label;
};

// nonzero entries of μ and λ in columns fed by safe inputs
template <class S>
std::vector<StructureConstant> structure_constants(const UIABInstance<S>& inst);

template <class S>
UIABInstance<S> flip_sign(const UIABInstance<S>& inst, const StructureConstant& k);

// helpers shared with the cone algebra
template <class S>
TensorElement<S> bivector_from(const SparseVector<S>& v, const ModulePtr& base);

}  // namespace koszul
