#pragma once

#include "koszul/chain_complex.hpp"
#include "koszul/cone_algebra.hpp"
#include "koszul/uiab.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace koszul {

// U-exponents kept: [0, N] or [-N, N]. Checks quantify over |k| ≤ r.
struct TruncationWindow {
    int N = 12;

    explicit TruncationWindow(int n = 12);
    int radius() const { return (N - 1) / 3; }
};

enum class Variant { Plus, Minus };

// ΛS^n = Λ[A, U], |U| = n-1, |A| = -n, for odd n ≥ 3
template <class S>
UIABInstance<S> make_loop_sphere(int n, const Ring& ring, TruncationWindow w = TruncationWindow{});

// ΛS¹ = Λ[A, U, U⁻¹] with λ₊ or λ₋
template <class S>
UIABInstance<S> make_loop_circle(Variant v, const Ring& ring, TruncationWindow w = TruncationWindow{});

// ΩS^n = Λ[U] (Laurent for n = 1, where the variant matters)
template <class S>
UIABInstance<S> make_based_loop(int n, const Ring& ring, TruncationWindow w = TruncationWindow{},
                                Variant v = Variant::Plus);

// the bivector c with λ₋ = λ₊ + (μ⊗1)(1⊗c) + (1⊗μ)(c⊗1) on the circle fixtures:
// 𝟙⊗A - A⊗𝟙 on ΛS¹, -𝟙⊗𝟙 on ΩS¹
template <class S>
TensorElement<S> circle_transition_bivector(const UIABInstance<S>& plus);

// A₂⁺ data of a free loop fixture: d = 0, c0 = 0, Q0 = -λη, B = 0
template <class S>
A2PlusData<S> a2plus_from_loop(const UIABInstance<S>& inst, int n, TruncationWindow w = TruncationWindow{});

template <class S>
struct TStarS1 {
    ChainComplex<S> A;  // p in degree 0, q in degree -1
    ChainComplex<S> M;  // p̃ in degree -2, q̃ in degree -1
    ChainMap<S> c;      // zero
    GradedMap<S> csec;  // p̃ ↦ q, q̃ ↦ p
    ConeComplex<S> cone;
    TransitionAutomorphism<S> phi;
};

template <class S>
TStarS1<S> make_tstar_s1(const Ring& ring);

struct RandomSpec {
    std::uint64_t seed = 0;
    std::size_t size = 3;
    std::vector<int> degrees;  // cycled over the basis; empty means all 0
    int mu_degree = 0;
    int lambda_degree = 0;
    int coefficient_bound = 2;  // entries in [-bound, bound]
};

inline constexpr std::size_t kMaxRandomSize = 8;

// not required to satisfy any axiom
template <class S>
UIABInstance<S> make_random_instance(const RandomSpec& spec, const Ring& ring);

// "lambda-s3", "lambda-s1-plus", ..., "tstar-s1"
const std::vector<std::string>& fixture_catalog();
bool is_uiab_fixture(const std::string& name);
bool is_a2plus_fixture(const std::string& name);

// throws Error listing the catalog for unknown names
template <class S>
UIABInstance<S> make_fixture(const std::string& name, const Ring& ring, TruncationWindow w = TruncationWindow{});

template <class S>
A2PlusData<S> make_a2plus_fixture(const std::string& name, const Ring& ring, TruncationWindow w = TruncationWindow{});

// expected λη up to sign, as quoted for each fixture
template <class S>
TensorElement<S> expected_lambda_eta(const std::string& name, const UIABInstance<S>& inst);

}  // namespace koszul
