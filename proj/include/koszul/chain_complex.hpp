#pragma once

#include "koszul/graded_map.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace koszul {

template <class S>
class ChainComplex {
public:
    ChainComplex() = default;
    explicit ChainComplex(GradedMap<S> d) : d_(std::move(d)) {
        if (d_.degree() != -1) throw DegreeError("differential must have degree -1");
        if (!same_module(d_.source(), d_.target())) throw DimensionError("differential must be an endomorphism");
        if (!compose(d_, d_).is_zero()) throw InvariantViolation("d∘d ≠ 0");
    }
    static ChainComplex with_zero_differential(const ModulePtr& m) { return ChainComplex(GradedMap<S>(m, m, -1)); }

    const ModulePtr& module() const { return d_.source(); }
    const GradedMap<S>& differential() const { return d_; }

private:
    GradedMap<S> d_;
};

// degree-0 map commuting with the differentials
template <class S>
class ChainMap {
public:
    ChainMap() = default;
    ChainMap(ChainComplex<S> source, ChainComplex<S> target, GradedMap<S> f)
        : source_(std::move(source)), target_(std::move(target)), f_(std::move(f)) {
        if (f_.degree() != 0) throw DegreeError("chain map must have degree 0");
        if (!same_module(f_.source(), source_.module()) || !same_module(f_.target(), target_.module()))
            throw DimensionError("chain map does not match its complexes");
        if (!(compose(target_.differential(), f_) == compose(f_, source_.differential())))
            throw InvariantViolation("map does not commute with the differentials");
    }

    const ChainComplex<S>& source() const { return source_; }
    const ChainComplex<S>& target() const { return target_; }
    const GradedMap<S>& map() const { return f_; }

private:
    ChainComplex<S> source_, target_;
    GradedMap<S> f_;
};

struct DegreeHomology {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;  // invariant factors > 1, each dividing the next

    friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

struct HomologySummary {
    Ring ring;
    std::map<int, DegreeHomology> degrees;  // only nonzero groups

    std::size_t total_rank() const;
    std::string render() const;  // "H_0 = Z^2 ⊕ Z/2, H_1 = Z"
    friend bool operator==(const HomologySummary&, const HomologySummary&) = default;
};

template <class S>
HomologySummary homology(const ChainComplex<S>& c);

template <class S>
struct ConeComplex {
    ChainComplex<S> complex;
    GradedMap<S> inclusion;   // A → Cone
    GradedMap<S> projection;  // Cone → M[-1]
    std::size_t plus_count = 0;
};

// Cone(c)_k = A_k ⊕ M_{k-1}, d(a, m) = (d_A a + c(m), -d_M m)
template <class S>
ConeComplex<S> mapping_cone(const ChainMap<S>& c);

// A / im c, presented by generators of the image in each degree
template <class S>
struct QuotientComplex {
    ChainComplex<S> ambient;
    std::map<int, Matrix<S>> relations;  // columns in coordinates of the degree block

    bool contains(int degree, const Vector<S>& v) const;
    // every column of f lands in the relations (f: X → ambient)
    bool annihilates(const GradedMap<S>& f) const;
};

template <class S>
QuotientComplex<S> quotient_by_image(const ChainMap<S>& c);

template <class S>
HomologySummary homology(const QuotientComplex<S>& q);

// [d, h] = d_target∘h - (-1)^{|h|} h∘d_source
template <class S>
GradedMap<S> graded_commutator(const GradedMap<S>& d_target, const GradedMap<S>& h, const GradedMap<S>& d_source);

struct HomotopyReport {
    bool holds = false;
    std::string detail;
};

// f - g = [d, h] exactly
template <class S>
HomotopyReport is_chain_homotopic(const ChainMap<S>& f, const ChainMap<S>& g, const GradedMap<S>& h);

// Cochain complexes are stored with negated degrees.
enum class Orientation { Chain, Cochain };

// support in [0, n] (chain) or [-n, 0] (stored cochain); the differential
// between the top degree and the one next to it vanishes
template <class S>
bool check_r_essential(const ChainComplex<S>& c, int n, Orientation o = Orientation::Chain);

template <class S>
struct QuotientHomotopy {
    GradedMap<S> h;  // [h] on the ambient complexes; descends to the quotients
    bool verified = false;
    std::string detail;
};

// [h] = h below the top cohomological degree n and 0 on it; checks
// [c'] - [c] = [d, [h]] on C1/im c1 → C2/im c2. Complexes use Cochain orientation.
template <class S>
QuotientHomotopy<S> induced_quotient_homotopy(const ChainMap<S>& c, const ChainMap<S>& c_prime, const GradedMap<S>& h,
                                              const ChainMap<S>& c1, const ChainMap<S>& c2, int n);

template <class S>
struct TransitionAutomorphism {
    GradedMap<S> phi;
    bool chain_map = false;
    bool unipotent = false;  // (Φ - id)^2 = 0
    bool identity_on_homology = true;
    std::string witness;  // a cycle z with Φ z - z not a boundary
};

// Φ(a, m) = (a + csec(m), m) on Cone(c); csec : M → A of degree +1 with [d, csec] = 0
template <class S>
TransitionAutomorphism<S> transition_automorphism(const ConeComplex<S>& cone, const GradedMap<S>& csec);

}  // namespace koszul
