#pragma once

#include "koszul/graded_map.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace koszul {

// Sparse element of M_1 ⊗ ... ⊗ M_k. `tainted` records that some column used
// to produce it had out-of-window terms dropped, so it may be incomplete.
template <class S>
struct TensorElement {
    std::vector<ModulePtr> factors;
    std::map<Multi, S> terms;
    bool tainted = false;

    TensorElement() = default;
    explicit TensorElement(std::vector<ModulePtr> f) : factors(std::move(f)) {}

    static TensorElement basis(std::vector<ModulePtr> f, Multi t) {
        TensorElement out(std::move(f));
        out.terms.emplace(std::move(t), S(1));
        return out;
    }

    std::size_t arity() const { return factors.size(); }
    bool is_zero() const { return terms.empty(); }

    int degree_of(const Multi& t) const {
        int d = 0;
        for (std::size_t k = 0; k < t.size(); ++k) d += factors[k]->degree(t[k]);
        return d;
    }

    void add(const Multi& t, const S& c) {
        if (koszul::is_zero(c)) return;
        auto [it, fresh] = terms.emplace(t, c);
        if (!fresh) {
            it->second += c;
            if (koszul::is_zero(it->second)) terms.erase(it);
        }
    }

    // degree of the (homogeneous) element; nullopt when zero
    std::optional<int> degree() const {
        if (terms.empty()) return std::nullopt;
        return degree_of(terms.begin()->first);
    }
    bool homogeneous() const {
        auto d = degree();
        for (const auto& [t, c] : terms)
            if (degree_of(t) != *d) return false;
        return true;
    }

    TensorElement& operator+=(const TensorElement& o) {
        adopt(o);
        for (const auto& [t, c] : o.terms) add(t, c);
        tainted = tainted || o.tainted;
        return *this;
    }
    TensorElement& operator-=(const TensorElement& o) {
        adopt(o);
        for (const auto& [t, c] : o.terms) add(t, S(-c));
        tainted = tainted || o.tainted;
        return *this;
    }
    TensorElement scaled(const S& s) const {
        TensorElement out(factors);
        out.tainted = tainted;
        for (const auto& [t, c] : terms) out.add(t, s * c);
        return out;
    }
    TensorElement scaled(int s) const { return scaled(S(s)); }

    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }

    // equality of the recorded terms; taint is bookkeeping only
    friend bool operator==(const TensorElement& a, const TensorElement& b) {
        if (a.terms.size() != b.terms.size()) return false;
        auto i = a.terms.begin();
        auto j = b.terms.begin();
        for (; i != a.terms.end(); ++i, ++j)
            if (i->first != j->first || !(i->second == j->second)) return false;
        return true;
    }

private:
    void adopt(const TensorElement& o) {
        if (factors.empty()) factors = o.factors;
    }
};

template <class S>
std::string render(const TensorElement<S>& v) {
    if (v.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [t, c] : v.terms) {
        std::string coef = to_string(c);
        bool neg = !coef.empty() && coef[0] == '-';
        if (neg) coef.erase(0, 1);
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (coef != "1") out += coef + "·";
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (k) out += kTensorSep;
            out += (*v.factors[k])[t[k]].name;
        }
        first = false;
    }
    return out;
}

template <class S>
std::string render_basis(const std::vector<ModulePtr>& factors, const Multi& t) {
    std::string out;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) out += kTensorSep;
        out += (*factors[k])[t[k]].name;
    }
    return out;
}

template <class S>
TensorElement<S> twist_at(const TensorElement<S>& t, std::size_t pos);

// A graded map between tensor powers of one module, tabulated by factor tuple.
template <class S>
class MultiOp {
public:
    MultiOp() = default;
    MultiOp(const GradedMap<S>& f, const ModulePtr& base) : degree_(f.degree()), base_(base) {
        const GradedModule& src = *f.source();
        const GradedModule& tgt = *f.target();
        in_ = src.is_tensor() ? src.factors().size() : 1;
        out_ = tgt.is_tensor() ? tgt.factors().size() : 1;
        src_ = f.source();
        columns_.reserve(src.size());
        clipped_.reserve(src.size());
        std::vector<ModulePtr> out_factors(out_, base);
        for (std::size_t i = 0; i < src.size(); ++i) {
            TensorElement<S> col(out_factors);
            for (const auto& [j, c] : f.column(i))
                col.add(tgt.is_tensor() ? tgt.factor_indices(j) : Multi{static_cast<std::uint32_t>(j)}, c);
            columns_.push_back(std::move(col));
            clipped_.push_back(f.clipped(i));
        }
    }

    int degree() const { return degree_; }
    std::size_t in_arity() const { return in_; }
    std::size_t out_arity() const { return out_; }
    const ModulePtr& base() const { return base_; }

    std::size_t source_index(const Multi& input) const {
        return src_->is_tensor() ? src_->index_of_tuple(input) : input[0];
    }
    const TensorElement<S>& operator()(const Multi& input) const { return columns_[source_index(input)]; }

    // τ∘op, for two outputs
    MultiOp twisted_output() const {
        if (out_ != 2) throw DimensionError("twisted output needs a binary target");
        MultiOp out = *this;
        for (auto& col : out.columns_) col = twist_at(col, 0);
        return out;
    }
    // op∘τ, for two inputs
    MultiOp twisted_input() const {
        if (in_ != 2) throw DimensionError("twisted input needs a binary source");
        MultiOp out = *this;
        for (std::size_t i = 0; i < src_->size(); ++i) {
            const Multi& t = src_->factor_indices(i);
            std::size_t j = src_->index_of_tuple({t[1], t[0]});
            int e = src_->factors()[0]->degree(t[0]) * src_->factors()[1]->degree(t[1]);
            out.columns_[i] = columns_[j].scaled(sign_of(e));
            out.clipped_[i] = clipped_[j];
        }
        return out;
    }
    bool clipped(const Multi& input) const { return clipped_[source_index(input)]; }

private:
    int degree_ = 0;
    std::size_t in_ = 1, out_ = 1;
    ModulePtr base_, src_;
    std::vector<TensorElement<S>> columns_;
    std::vector<bool> clipped_;
};

// (1^{⊗pos} ⊗ op ⊗ 1 ⊗ ...)(t), Koszul sign (-1)^{|op| (|t_0| + ... + |t_{pos-1}|)}
template <class S>
TensorElement<S> apply_at(const TensorElement<S>& t, std::size_t pos, const MultiOp<S>& op) {
    std::vector<ModulePtr> factors(t.factors.begin(), t.factors.begin() + static_cast<long>(pos));
    for (std::size_t k = 0; k < op.out_arity(); ++k) factors.push_back(op.base());
    factors.insert(factors.end(), t.factors.begin() + static_cast<long>(pos + op.in_arity()), t.factors.end());
    TensorElement<S> out(std::move(factors));
    out.tainted = t.tainted;
    for (const auto& [tuple, c] : t.terms) {
        int pre = 0;
        for (std::size_t k = 0; k < pos; ++k) pre += t.factors[k]->degree(tuple[k]);
        S coef = sign_of(static_cast<long long>(op.degree()) * pre) > 0 ? c : S(-c);
        Multi input(tuple.begin() + static_cast<long>(pos), tuple.begin() + static_cast<long>(pos + op.in_arity()));
        if (op.clipped(input)) out.tainted = true;
        for (const auto& [r, rc] : op(input).terms) {
            Multi m(tuple.begin(), tuple.begin() + static_cast<long>(pos));
            m.insert(m.end(), r.begin(), r.end());
            m.insert(m.end(), tuple.begin() + static_cast<long>(pos + op.in_arity()), tuple.end());
            out.add(m, coef * rc);
        }
    }
    return out;
}

// τ acting on factors pos, pos+1
template <class S>
TensorElement<S> twist_at(const TensorElement<S>& t, std::size_t pos) {
    std::vector<ModulePtr> factors = t.factors;
    std::swap(factors[pos], factors[pos + 1]);
    TensorElement<S> out(std::move(factors));
    out.tainted = t.tainted;
    for (const auto& [tuple, c] : t.terms) {
        int a = t.factors[pos]->degree(tuple[pos]);
        int b = t.factors[pos + 1]->degree(tuple[pos + 1]);
        Multi m = tuple;
        std::swap(m[pos], m[pos + 1]);
        out.add(m, sign_of(static_cast<long long>(a) * b) > 0 ? c : S(-c));
    }
    return out;
}

// (1^{⊗pos} ⊗ v ⊗ 1 ...)(t): v inserted before factor pos, sign (-1)^{|v| · prefix}
template <class S>
TensorElement<S> insert_at(const TensorElement<S>& t, std::size_t pos, const TensorElement<S>& v) {
    std::vector<ModulePtr> factors(t.factors.begin(), t.factors.begin() + static_cast<long>(pos));
    factors.insert(factors.end(), v.factors.begin(), v.factors.end());
    factors.insert(factors.end(), t.factors.begin() + static_cast<long>(pos), t.factors.end());
    TensorElement<S> out(std::move(factors));
    out.tainted = t.tainted || v.tainted;
    for (const auto& [tuple, c] : t.terms) {
        int pre = 0;
        for (std::size_t k = 0; k < pos; ++k) pre += t.factors[k]->degree(tuple[k]);
        for (const auto& [r, rc] : v.terms) {
            int vd = v.degree_of(r);
            Multi m(tuple.begin(), tuple.begin() + static_cast<long>(pos));
            m.insert(m.end(), r.begin(), r.end());
            m.insert(m.end(), tuple.begin() + static_cast<long>(pos), tuple.end());
            S coef = c * rc;
            out.add(m, sign_of(static_cast<long long>(vd) * pre) > 0 ? coef : S(-coef));
        }
    }
    return out;
}

// cyclic permutation x⊗y⊗z ↦ (-1)^{|x|(|y|+|z|)} y⊗z⊗x
template <class S>
TensorElement<S> cycle(const TensorElement<S>& t) {
    std::vector<ModulePtr> factors(t.factors.begin() + 1, t.factors.end());
    factors.push_back(t.factors.front());
    TensorElement<S> out(std::move(factors));
    out.tainted = t.tainted;
    for (const auto& [tuple, c] : t.terms) {
        int first = t.factors[0]->degree(tuple[0]);
        int rest = t.degree_of(tuple) - first;
        Multi m(tuple.begin() + 1, tuple.end());
        m.push_back(tuple[0]);
        out.add(m, sign_of(static_cast<long long>(first) * rest) > 0 ? c : S(-c));
    }
    return out;
}

// element of a single tensor module (arity read off the module) as a TensorElement
template <class S>
TensorElement<S> as_tensor(const SparseVector<S>& v, const ModulePtr& m, const ModulePtr& base) {
    std::size_t arity = m->is_tensor() ? m->factors().size() : 1;
    TensorElement<S> out(std::vector<ModulePtr>(arity, base));
    for (const auto& [i, c] : v) out.add(m->is_tensor() ? m->factor_indices(i) : Multi{static_cast<std::uint32_t>(i)}, c);
    return out;
}

}  // namespace koszul
