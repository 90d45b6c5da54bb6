#include "koszul/chain_complex.hpp"

#include <set>

namespace koszul {

namespace {

using Index = Eigen::Index;

std::string group_name(const Ring& ring, const DegreeHomology& h) {
    std::string out;
    std::string base = ring.name();
    if (h.free_rank == 1) out = base;
    if (h.free_rank > 1) out = base + "^" + std::to_string(h.free_rank);
    for (const auto& t : h.torsion) out += (out.empty() ? "" : " ⊕ ") + std::string("Z/") + t.str();
    return out.empty() ? "0" : out;
}

template <class S>
Matrix<S> block_or_empty(const GradedMap<S>& f, int k, Index rows_if_missing) {
    auto it = f.blocks().find(k);
    if (it == f.blocks().end()) return zero_matrix<S>(rows_if_missing, 0);
    return it->second;
}

template <class S>
Matrix<S> relations_in(const std::map<int, Matrix<S>>& rel, int k, Index rows) {
    auto it = rel.find(k);
    if (it == rel.end()) return zero_matrix<S>(rows, 0);
    return it->second;
}

// rank and torsion of Z/B where B ⊂ Z ⊂ R^n, Z and B given by generators
template <class S>
DegreeHomology subquotient(const Matrix<S>& z_basis, const Matrix<S>& b_gens) {
    DegreeHomology out;
    if (z_basis.cols() == 0) return out;
    if constexpr (ScalarTraits<S>::is_field) {
        out.free_rank = static_cast<std::size_t>(z_basis.cols()) - rank<S>(b_gens);
    } else {
        Matrix<Integer> coords = zero_matrix<Integer>(z_basis.cols(), b_gens.cols());
        for (Index j = 0; j < b_gens.cols(); ++j) {
            auto y = solve_in_image<Integer>(z_basis, b_gens.col(j));
            if (!y) throw InvariantViolation("boundary outside the cycle lattice");
            coords.col(j) = *y;
        }
        SmithForm snf = smith_normal_form(coords);
        out.free_rank = static_cast<std::size_t>(z_basis.cols()) - snf.rank;
        for (std::size_t i = 0; i < snf.rank; ++i) {
            const Integer& d = snf.D(static_cast<Index>(i), static_cast<Index>(i));
            if (d > 1) out.torsion.push_back(d);
        }
    }
    return out;
}

// cycles relative to the relations: {x in C_k : d x in I_{k-1}}
template <class S>
Matrix<S> relative_cycles(const Matrix<S>& d, const Matrix<S>& rel_below, Index n) {
    Matrix<S> stacked = hstack<S>(d, Matrix<S>(-rel_below));
    Matrix<S> gens = zero_matrix<S>(n, 0);
    auto ker = kernel_basis<S>(stacked);
    gens.resize(n, static_cast<Index>(ker.size()));
    for (std::size_t j = 0; j < ker.size(); ++j) gens.col(static_cast<Index>(j)) = ker[j].head(n);
    return column_basis<S>(gens);
}

template <class S>
HomologySummary homology_with_relations(const ChainComplex<S>& c, const std::map<int, Matrix<S>>& rel) {
    HomologySummary out{c.module()->ring(), {}};
    const GradedModule& m = *c.module();
    const GradedMap<S>& d = c.differential();
    for (int k : m.degrees()) {
        auto n = static_cast<Index>(m.dimension(k));
        auto below = static_cast<Index>(m.dimension(k - 1));
        Matrix<S> dk = d.block(k);
        Matrix<S> z = relative_cycles<S>(dk, relations_in(rel, k - 1, below), n);
        Matrix<S> above = block_or_empty(d, k + 1, n);
        Matrix<S> b = hstack<S>(relations_in(rel, k, n), above);
        DegreeHomology h = subquotient<S>(z, b);
        if (h.free_rank > 0 || !h.torsion.empty()) out.degrees.emplace(k, std::move(h));
    }
    return out;
}

template <class S>
bool in_span(const Matrix<S>& gens, const Vector<S>& v) {
    if (koszul::is_zero<S>(v)) return true;
    if (gens.cols() == 0) return false;
    return solve_in_image<S>(gens, v).has_value();
}

template <class S>
Vector<S> column_vector(const GradedMap<S>& f, std::size_t src) {
    int k = f.source()->degree(src) + f.degree();
    Vector<S> v = Vector<S>::Zero(static_cast<Index>(f.target()->dimension(k)));
    for (const auto& [i, c] : f.column(src)) v(static_cast<Index>(f.target()->offset_in_degree(i))) = c;
    return v;
}

}  // namespace

std::size_t HomologySummary::total_rank() const {
    std::size_t r = 0;
    for (const auto& [k, h] : degrees) r += h.free_rank;
    return r;
}

std::string HomologySummary::render() const {
    if (degrees.empty()) return "0";
    std::string out;
    for (const auto& [k, h] : degrees) {
        if (!out.empty()) out += ", ";
        out += "H_" + std::to_string(k) + " = " + group_name(ring, h);
    }
    return out;
}

template <class S>
HomologySummary homology(const ChainComplex<S>& c) {
    return homology_with_relations<S>(c, {});
}

template <class S>
ConeComplex<S> mapping_cone(const ChainMap<S>& c) {
    const ModulePtr& a = c.target().module();
    const ModulePtr& m = c.source().module();
    std::vector<BasisElement> basis = a->basis();
    for (const auto& e : m->basis()) basis.push_back({"s(" + e.name + ")", e.degree + 1, e.weight});
    ModulePtr cone = GradedModule::make(a->ring(), basis);

    auto plus = [&](std::size_t i) { return cone->index_of((*a)[i].name); };
    auto minus = [&](std::size_t i) { return cone->index_of("s(" + (*m)[i].name + ")"); };

    GradedMap<S> d(cone, cone, -1);
    for (std::size_t i = 0; i < a->size(); ++i)
        for (const auto& [j, v] : c.target().differential().column(i)) d.add(plus(j), plus(i), v);
    for (std::size_t i = 0; i < m->size(); ++i) {
        for (const auto& [j, v] : c.map().column(i)) d.add(plus(j), minus(i), v);
        for (const auto& [j, v] : c.source().differential().column(i)) d.add(minus(j), minus(i), S(-v));
    }

    ConeComplex<S> out;
    out.complex = ChainComplex<S>(std::move(d));
    out.plus_count = a->size();
    out.inclusion = GradedMap<S>(a, cone, 0);
    for (std::size_t i = 0; i < a->size(); ++i) out.inclusion.set(plus(i), i, S(1));
    ModulePtr shifted = shift(m, -1);
    out.projection = GradedMap<S>(cone, shifted, 0);
    for (std::size_t i = 0; i < m->size(); ++i) out.projection.set(shifted->index_of((*m)[i].name), minus(i), S(1));
    return out;
}

template <class S>
bool QuotientComplex<S>::contains(int degree, const Vector<S>& v) const {
    auto it = relations.find(degree);
    if (it == relations.end()) return koszul::is_zero<S>(v);
    return in_span<S>(it->second, v);
}

template <class S>
bool QuotientComplex<S>::annihilates(const GradedMap<S>& f) const {
    if (!same_module(f.target(), ambient.module())) throw DimensionError("map does not land in the ambient complex");
    for (std::size_t i = 0; i < f.source()->size(); ++i)
        if (!contains(f.source()->degree(i) + f.degree(), column_vector(f, i))) return false;
    return true;
}

template <class S>
QuotientComplex<S> quotient_by_image(const ChainMap<S>& c) {
    QuotientComplex<S> out;
    out.ambient = c.target();
    for (const auto& [k, b] : c.map().blocks()) {
        if (b.rows() == 0 || b.cols() == 0) continue;
        Matrix<S> basis = column_basis<S>(b);
        if (basis.cols() > 0) out.relations.emplace(k, std::move(basis));
    }
    return out;
}

template <class S>
HomologySummary homology(const QuotientComplex<S>& q) {
    return homology_with_relations<S>(q.ambient, q.relations);
}

template <class S>
GradedMap<S> graded_commutator(const GradedMap<S>& d_target, const GradedMap<S>& h, const GradedMap<S>& d_source) {
    if (d_target.degree() != -1 || d_source.degree() != -1) throw DegreeError("commutator needs differentials");
    GradedMap<S> dh = compose(d_target, h);
    GradedMap<S> hd = compose(h, d_source);
    return sign_of(h.degree()) > 0 ? dh - hd : dh + hd;
}

template <class S>
HomotopyReport is_chain_homotopic(const ChainMap<S>& f, const ChainMap<S>& g, const GradedMap<S>& h) {
    if (h.degree() != 1) throw DegreeError("homotopy must have degree +1");
    GradedMap<S> diff = f.map() - g.map();
    GradedMap<S> comm = graded_commutator(f.target().differential(), h, f.source().differential());
    GradedMap<S> rest = diff - comm;
    HomotopyReport out;
    out.holds = rest.is_zero();
    if (!out.holds) {
        for (std::size_t i = 0; i < rest.source()->size(); ++i) {
            auto col = rest.column(i);
            if (col.empty()) continue;
            out.detail = "f - g - [d,h] on " + (*rest.source())[i].name + " = " + render(col, *rest.target());
            break;
        }
    }
    return out;
}

template <class S>
bool check_r_essential(const ChainComplex<S>& c, int n, Orientation o) {
    const GradedModule& m = *c.module();
    int lo = o == Orientation::Chain ? 0 : -n;
    int hi = o == Orientation::Chain ? n : 0;
    for (int k : m.degrees())
        if (k < lo || k > hi)
            throw DegreeError("complex has generators in degree " + std::to_string(k) + ", outside [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
    // chain: ∂ on degree n; cochain: δ out of degree n-1, stored as d on degree 1-n
    int k = o == Orientation::Chain ? n : 1 - n;
    auto it = c.differential().blocks().find(k);
    return it == c.differential().blocks().end() || koszul::is_zero<S>(it->second);
}

template <class S>
QuotientHomotopy<S> induced_quotient_homotopy(const ChainMap<S>& c, const ChainMap<S>& c_prime, const GradedMap<S>& h,
                                              const ChainMap<S>& c1, const ChainMap<S>& c2, int n) {
    const ChainComplex<S>& k1 = c.source();
    const ChainComplex<S>& k2 = c.target();
    if (!check_r_essential(k1, n, Orientation::Cochain) || !check_r_essential(k2, n, Orientation::Cochain))
        throw InvariantViolation("complexes must be R-essential");
    if (!same_module(c1.target().module(), k1.module()) || !same_module(c2.target().module(), k2.module()))
        throw DimensionError("quotient maps must land in the complexes of c");
    HomotopyReport pre = is_chain_homotopic(c_prime, c, h);
    if (!pre.holds) throw InvariantViolation("c' - c is not [d, h]: " + pre.detail);

    QuotientComplex<S> q1 = quotient_by_image(c1);
    QuotientComplex<S> q2 = quotient_by_image(c2);
    if (!q2.annihilates(compose(c.map(), c1.map())) || !q2.annihilates(compose(c_prime.map(), c1.map())))
        throw InvariantViolation("c and c' must carry im c1 into im c2");

    QuotientHomotopy<S> out;
    out.h = h;
    // top cohomological degree n sits in stored degree -n
    if (out.h.blocks().count(-n)) out.h.set_block(-n, zero_matrix<S>(out.h.block(-n).rows(), out.h.block(-n).cols()));

    bool descends = q2.annihilates(compose(out.h, c1.map()));
    GradedMap<S> rest = (c_prime.map() - c.map()) - graded_commutator(k2.differential(), out.h, k1.differential());
    bool relation = q2.annihilates(rest);
    out.verified = descends && relation;
    if (!descends) out.detail = "[h] does not preserve the images";
    else if (!relation) out.detail = "[c'] - [c] - [d,[h]] is nonzero on the quotient";
    else out.detail = "verified";
    return out;
}

template <class S>
TransitionAutomorphism<S> transition_automorphism(const ConeComplex<S>& cone, const GradedMap<S>& csec) {
    if (csec.degree() != 1) throw DegreeError("secondary map must have degree +1");
    const ModulePtr& cm = cone.complex.module();
    const GradedMap<S>& d = cone.complex.differential();
    const std::size_t plus = cone.plus_count;
    if (csec.source()->size() != cm->size() - plus || csec.target()->size() != plus)
        throw DimensionError("secondary map does not match the cone");

    // [d, csec] = 0 is checked through the cone's blocks: d_A csec + csec d_M
    GradedMap<S> nil(cm, cm, 0);
    for (std::size_t i = 0; i < csec.source()->size(); ++i) {
        std::size_t src = cm->index_of("s(" + (*csec.source())[i].name + ")");
        for (const auto& [j, v] : csec.column(i)) nil.set(cm->index_of((*csec.target())[j].name), src, v);
    }
    GradedMap<S> dn = compose(d, nil);
    GradedMap<S> nd = compose(nil, d);
    if (!(dn == nd)) throw InvariantViolation("secondary map is not a chain map: [d, csec] ≠ 0");

    TransitionAutomorphism<S> out;
    out.phi = GradedMap<S>::identity(cm) + nil;
    out.chain_map = compose(d, out.phi) == compose(out.phi, d);
    out.unipotent = compose(nil, nil).is_zero();

    for (int k : cm->degrees()) {
        auto n = static_cast<Index>(cm->dimension(k));
        Matrix<S> z = relative_cycles<S>(d.block(k), zero_matrix<S>(static_cast<Index>(cm->dimension(k - 1)), 0), n);
        Matrix<S> b = block_or_empty(d, k + 1, n);
        Matrix<S> nk = nil.block(k);
        for (Index j = 0; j < z.cols(); ++j) {
            Vector<S> moved = nk * z.col(j);
            if (in_span<S>(b, moved)) continue;
            out.identity_on_homology = false;
            SparseVector<S> zs;
            auto idx = cm->in_degree(k);
            for (Index i = 0; i < n; ++i)
                if (!koszul::is_zero(z(i, j))) zs.emplace(idx[static_cast<std::size_t>(i)], z(i, j));
            out.witness = "Φ(" + render(zs, *cm) + ") - (" + render(zs, *cm) + ") = " + render(nil.apply(zs), *cm) +
                          " is not a boundary";
            return out;
        }
    }
    return out;
}

#define KOSZUL_INSTANTIATE(S)                                                                                      \
    template HomologySummary homology<S>(const ChainComplex<S>&);                                                  \
    template ConeComplex<S> mapping_cone<S>(const ChainMap<S>&);                                                   \
    template struct QuotientComplex<S>;                                                                            \
    template QuotientComplex<S> quotient_by_image<S>(const ChainMap<S>&);                                          \
    template HomologySummary homology<S>(const QuotientComplex<S>&);                                               \
    template GradedMap<S> graded_commutator<S>(const GradedMap<S>&, const GradedMap<S>&, const GradedMap<S>&);     \
    template HomotopyReport is_chain_homotopic<S>(const ChainMap<S>&, const ChainMap<S>&, const GradedMap<S>&);    \
    template bool check_r_essential<S>(const ChainComplex<S>&, int, Orientation);                                  \
    template QuotientHomotopy<S> induced_quotient_homotopy<S>(const ChainMap<S>&, const ChainMap<S>&,              \
                                                              const GradedMap<S>&, const ChainMap<S>&,             \
                                                              const ChainMap<S>&, int);                            \
    template TransitionAutomorphism<S> transition_automorphism<S>(const ConeComplex<S>&, const GradedMap<S>&);

KOSZUL_INSTANTIATE(Integer)
KOSZUL_INSTANTIATE(Rational)
KOSZUL_INSTANTIATE(Fp)

}  // namespace koszul
