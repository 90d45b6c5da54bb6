#pragma once

#include "koszul/chain_complex.hpp"
#include "koszul/check.hpp"
#include "koszul/tensor.hpp"
#include "koszul/uiab.hpp"

#include <optional>
#include <string>
#include <vector>

namespace koszul {

// A₂⁺ data on a single complex A. Q0 is the bivector c entering the cone
// product; c0 only enters the cone differential.
template <class S>
struct A2PlusData {
    std::string name;
    ChainComplex<S> complex;
    GradedMap<S> mu;      // A⊗A → A, degree 0
    GradedMap<S> lambda;  // A → A⊗A, degree 1-2n
    TensorElement<S> c0;  // degree -2n
    TensorElement<S> Q0;  // degree 1-2n
    TensorElement<S> B;   // degree 2-4n, in A⊗A⊗A
    int n = 1;
    std::vector<std::size_t> safe;
    SparseVector<S> unit;
    // truncated fixtures: window radius N of the weight labels, and a bound on
    // |w(out) - Σ w(in)| over all structure maps (checked on the window)
    std::optional<int> window;
    int weight_defect = 0;

    const ModulePtr& module() const { return complex.module(); }
};

// validates degrees, τc0 - c0 = (d⊗1 + 1⊗d)Q0, σB = B and the weight bound
template <class S>
A2PlusData<S> make_a2plus(std::string name, ChainComplex<S> complex, GradedMap<S> mu, GradedMap<S> lambda,
                          TensorElement<S> c0, TensorElement<S> Q0, TensorElement<S> B, int n,
                          std::optional<std::vector<std::size_t>> safe = std::nullopt, SparseVector<S> unit = {},
                          std::optional<int> window = std::nullopt, int weight_defect = 0);

// the UIAB seen by the cone: same μ, λ and unit
template <class S>
UIABInstance<S> underlying_uiab(const A2PlusData<S>& data);

// Unshifted operations. F = A^∨[2n], with e^∨ in degree -2n-|e|.
template <class S>
struct ConeProductPackage {
    ModulePtr A, F;
    GradedMap<S> lambda_R, lambda_L, lambda_both;  // λ + (μ⊗1)(1⊗c), λ + (1⊗μ)(c⊗1), both
    GradedMap<S> m_L;    // A⊗F → F
    GradedMap<S> m_R;    // F⊗A → F
    GradedMap<S> sigma;  // F⊗F → F
    GradedMap<S> tau_R;  // A⊗F → A
    GradedMap<S> tau_L;  // F⊗A → A
    GradedMap<S> beta;   // F⊗F → A
};

template <class S>
ConeProductPackage<S> derive_secondary_ops(const A2PlusData<S>& data);

// pairing identities defining the derived operations, over safe inputs
template <class S>
CheckGroup check_pairing_identities(const A2PlusData<S>& data, const ConeProductPackage<S>& pkg);

// op : X⊗Y → Z becomes s^i X ⊗ s^j Y → s^k Z (s raises degree by one);
// entries pick up (-1)^{j |x|} with |x| the unshifted first input
template <class S>
GradedMap<S> apply_op_shift(const GradedMap<S>& op, int i, int j, int k);

enum class Part { Plus, Minus };

template <class S>
struct ConeVector {
    SparseVector<S> v;  // cone basis indices
    bool incomplete = false;  // true coordinates may lie outside the window

    friend bool operator==(const ConeVector&, const ConeVector&) = default;
};

// The assembled product on A ⊕ sF. Minus elements keep the names of F.
template <class S>
class ConeProduct {
public:
    ConeProduct() = default;
    ConeProduct(const A2PlusData<S>& data, const ConeProductPackage<S>& pkg);

    const ModulePtr& module() const { return cone_; }
    const ModulePtr& plus_module() const { return A_; }
    const ModulePtr& minus_module() const { return sF_; }
    std::size_t plus(std::size_t a) const { return plus_[a]; }
    std::size_t minus(std::size_t f) const { return minus_[f]; }
    Part part(std::size_t x) const { return part_[x]; }
    std::size_t local(std::size_t x) const { return local_[x]; }  // index in A or sF
    std::optional<int> weight(std::size_t x) const;

    // shifted components; m^{++}_- is zero and not stored
    const GradedMap<S>& mu() const { return mu_; }
    const GradedMap<S>& m_pm_minus() const { return pm_m_; }
    const GradedMap<S>& m_pm_plus() const { return pm_p_; }
    const GradedMap<S>& m_mp_minus() const { return mp_m_; }
    const GradedMap<S>& m_mp_plus() const { return mp_p_; }
    const GradedMap<S>& m_mm_minus() const { return mm_m_; }
    const GradedMap<S>& m_mm_plus() const { return mm_p_; }

    ConeVector<S> operator()(std::size_t x, std::size_t y) const;
    ConeVector<S> operator()(const ConeVector<S>& x, const ConeVector<S>& y) const;
    ConeVector<S> basis(std::size_t x) const { return ConeVector<S>{{{x, S(1)}}, false}; }

    // safe cone elements: ±x for x in the safe set of A
    std::vector<std::size_t> safe() const;
    std::string render(const ConeVector<S>& v) const;

private:
    bool complete(std::size_t x, std::size_t y) const;

    ModulePtr A_, sF_, cone_;
    std::vector<std::size_t> plus_, minus_, local_;
    std::vector<Part> part_;
    std::vector<std::size_t> safe_;
    std::optional<int> window_;
    int defect_ = 0;
    GradedMap<S> mu_, pm_m_, pm_p_, mp_m_, mp_p_, mm_m_, mm_p_;
};

template <class S>
ConeProduct<S> assemble_cone_product(const A2PlusData<S>& data, const ConeProductPackage<S>& pkg);

// the closed-form components, evaluated directly from μ, λ and c
template <class S>
struct ClosedFormComponents {
    const A2PlusData<S>* data = nullptr;
    ModulePtr A, sF;
    MultiOp<S> mu, lam;
    std::vector<std::size_t> to_dual, to_primal;  // e ↦ e^∨ in sF and back

    SparseVector<S> pp_plus(std::size_t a, std::size_t b) const;          // m^{++}_+, in A
    SparseVector<S> mm_minus(std::size_t f, std::size_t g) const;         // m^{--}_-, in sF
    SparseVector<S> mp_plus(std::size_t f, std::size_t a) const;          // m^{-+}_+, in A
    SparseVector<S> pm_plus(std::size_t b, std::size_t f) const;          // m^{+-}_+, in A
    SparseVector<S> mp_minus(std::size_t f, std::size_t a) const;         // m^{-+}_-, in sF
    SparseVector<S> pm_minus(std::size_t b, std::size_t f) const;         // m^{+-}_-, in sF
};

template <class S>
ClosedFormComponents<S> closed_form_components(const A2PlusData<S>& data);

// each closed-form component against the assembled block, on safe inputs
template <class S>
CheckGroup check_closed_forms(const A2PlusData<S>& data, const ConeProduct<S>& product);

template <class S>
CheckResult check_cone_associativity(const ConeProduct<S>& product);

// m^{-+} = m^{+-}∘τ on mixed safe inputs
template <class S>
CheckResult check_cone_commutativity(const ConeProduct<S>& product);

// associativity on a⊗b⊗f̄, expanded in its ^{++-}_+ component, against the
// unital infinitesimal relation paired with 1⊗f
template <class S>
CheckGroup check_assoc_implies_uir(const A2PlusData<S>& data);

// Cone(c) for the continuation map F → A, f ↦ ⟨f⊗1, c0⟩
template <class S>
ConeComplex<S> cone_complex(const A2PlusData<S>& data);

}  // namespace koszul
