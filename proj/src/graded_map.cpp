#include "koszul/graded_map.hpp"

namespace koszul {

namespace {

template <class S>
void require_same_ring(const GradedMap<S>& f, const GradedMap<S>& g) {
    if (!(f.ring() == g.ring())) throw RingMismatch("maps over different rings");
}

template <class S>
GradedMap<S> combine(const GradedMap<S>& f, const GradedMap<S>& g, bool subtract) {
    require_same_ring(f, g);
    if (f.degree() != g.degree()) throw DegreeError("adding maps of different degrees");
    if (!same_module(f.source(), g.source()) || !same_module(f.target(), g.target()))
        throw DimensionError("adding maps with different source or target");
    GradedMap<S> out(f.source(), f.target(), f.degree());
    for (const auto& [k, b] : f.blocks())
        out.set_block(k, subtract ? Matrix<S>(b - g.block(k)) : Matrix<S>(b + g.block(k)));
    for (std::size_t i = 0; i < f.source()->size(); ++i) out.mark_clipped(i, f.clipped(i) || g.clipped(i));
    return out;
}

}  // namespace

template <class S>
GradedMap<S> compose(const GradedMap<S>& f, const GradedMap<S>& g) {
    require_same_ring(f, g);
    if (!same_module(f.source(), g.target())) throw DimensionError("compose: source of f is not the target of g");
    GradedMap<S> out(g.source(), f.target(), f.degree() + g.degree());
    for (const auto& [k, gb] : g.blocks()) {
        int mid = k + g.degree();
        if (gb.rows() == 0 || out.block(k).rows() == 0) continue;
        out.set_block(k, f.block(mid) * gb);
    }
    for (std::size_t i = 0; i < g.source()->size(); ++i) {
        bool c = g.clipped(i);
        for (const auto& [j, v] : g.column(i)) c = c || f.clipped(j);
        out.mark_clipped(i, c);
    }
    return out;
}

template <class S>
GradedMap<S> operator+(const GradedMap<S>& f, const GradedMap<S>& g) { return combine(f, g, false); }

template <class S>
GradedMap<S> operator-(const GradedMap<S>& f, const GradedMap<S>& g) { return combine(f, g, true); }

template <class S>
GradedMap<S> operator*(const S& c, const GradedMap<S>& f) {
    GradedMap<S> out = f;
    for (const auto& [k, b] : f.blocks()) {
        Matrix<S> m = b;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = c * m(i, j);
        out.set_block(k, std::move(m));
    }
    return out;
}

template <class S>
GradedMap<S> tensor_map(const GradedMap<S>& f, const GradedMap<S>& g) {
    require_same_ring(f, g);
    ModulePtr src = tensor(f.source(), g.source());
    ModulePtr tgt = tensor(f.target(), g.target());
    GradedMap<S> out(src, tgt, f.degree() + g.degree());
    for (std::size_t i = 0; i < src->size(); ++i) {
        const Multi& xy = src->factor_indices(i);
        int sign = sign_of(static_cast<long long>(g.degree()) * f.source()->degree(xy[0]));
        auto fx = f.column(xy[0]);
        auto gy = g.column(xy[1]);
        for (const auto& [a, ca] : fx)
            for (const auto& [b, cb] : gy) {
                S v = ca * cb;
                out.add(tgt->index_of_tuple({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)}), i,
                        sign > 0 ? v : S(-v));
            }
        out.mark_clipped(i, f.clipped(xy[0]) || g.clipped(xy[1]));
    }
    return out;
}

template <class S>
GradedMap<S> twist(const ModulePtr& m, const ModulePtr& n) {
    ModulePtr src = tensor(m, n);
    ModulePtr tgt = tensor(n, m);
    GradedMap<S> out(src, tgt, 0);
    for (std::size_t i = 0; i < src->size(); ++i) {
        const Multi& xy = src->factor_indices(i);
        int sign = sign_of(static_cast<long long>(m->degree(xy[0])) * n->degree(xy[1]));
        out.set(tgt->index_of_tuple({xy[1], xy[0]}), i, S(sign));
    }
    return out;
}

template <class S>
GradedMap<S> shift_map(const GradedMap<S>& f, int k) {
    GradedMap<S> out(shift(f.source(), k), shift(f.target(), k), f.degree());
    S sign(sign_of(static_cast<long long>(f.degree()) * k));
    for (const auto& [d, b] : f.blocks()) {
        Matrix<S> m = b;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = sign * m(i, j);
        out.set_block(d - k, std::move(m));
    }
    for (std::size_t i = 0; i < f.source()->size(); ++i) out.mark_clipped(i, f.clipped(i));
    return out;
}

template <class S>
GradedMap<S> dual_map(const GradedMap<S>& f) {
    ModulePtr src = dual_module(f.target());
    ModulePtr tgt = dual_module(f.source());
    GradedMap<S> out(src, tgt, f.degree());
    // dual modules list the same elements in reversed degree order; match by name
    for (std::size_t x = 0; x < f.source()->size(); ++x)
        for (const auto& [y, c] : f.column(x)) {
            std::size_t yv = src->index_of((*f.target())[y].name + std::string(kDualMark));
            std::size_t xv = tgt->index_of((*f.source())[x].name + std::string(kDualMark));
            int sign = sign_of(static_cast<long long>(f.target()->degree(y)) * f.degree());
            out.add(xv, yv, sign > 0 ? c : S(-c));
        }
    return out;
}

template <class S>
GradedMap<S> double_dual_embedding(const ModulePtr& m) {
    ModulePtr dd = dual_module(dual_module(m));
    GradedMap<S> out(m, dd, 0);
    for (std::size_t x = 0; x < m->size(); ++x) {
        std::string name = (*m)[x].name + std::string(kDualMark) + std::string(kDualMark);
        out.set(dd->index_of(name), x, S(sign_of(m->degree(x))));
    }
    return out;
}

template <class S>
GradedMap<S> tensor_differential(const GradedMap<S>& dm, const GradedMap<S>& dn) {
    return tensor_map(dm, GradedMap<S>::identity(dn.source())) + tensor_map(GradedMap<S>::identity(dm.source()), dn);
}

template <class S>
std::string render(const SparseVector<S>& v, const GradedModule& m) {
    if (v.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : v) {
        std::string coef = to_string(c);
        bool neg = !coef.empty() && coef[0] == '-';
        if (neg) coef.erase(0, 1);
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (coef != "1") out += coef + "·";
        out += m[i].name;
        first = false;
    }
    return out;
}

#define KOSZUL_INSTANTIATE(S)                                                                \
    template GradedMap<S> compose<S>(const GradedMap<S>&, const GradedMap<S>&);               \
    template GradedMap<S> operator+ <S>(const GradedMap<S>&, const GradedMap<S>&);            \
    template GradedMap<S> operator- <S>(const GradedMap<S>&, const GradedMap<S>&);            \
    template GradedMap<S> operator* <S>(const S&, const GradedMap<S>&);                       \
    template GradedMap<S> tensor_map<S>(const GradedMap<S>&, const GradedMap<S>&);            \
    template GradedMap<S> twist<S>(const ModulePtr&, const ModulePtr&);                       \
    template GradedMap<S> shift_map<S>(const GradedMap<S>&, int);                             \
    template GradedMap<S> dual_map<S>(const GradedMap<S>&);                                   \
    template GradedMap<S> double_dual_embedding<S>(const ModulePtr&);                         \
    template GradedMap<S> tensor_differential<S>(const GradedMap<S>&, const GradedMap<S>&);   \
    template std::string render<S>(const SparseVector<S>&, const GradedModule&);

KOSZUL_INSTANTIATE(Integer)
KOSZUL_INSTANTIATE(Rational)
KOSZUL_INSTANTIATE(Fp)

}  // namespace koszul
