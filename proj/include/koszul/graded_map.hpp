#pragma once

#include "koszul/graded_module.hpp"
#include "koszul/matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace koszul {

template <class S>
using SparseVector = std::map<std::size_t, S>;

template <class S>
void accumulate(SparseVector<S>& v, std::size_t i, const S& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = v.emplace(i, c);
    if (!fresh) {
        it->second += c;
        if (is_zero(it->second)) v.erase(it);
    }
}

// Homogeneous map of fixed degree; one dense block per source degree k,
// mapping into target degree k + degree. Columns may be marked clipped when
// a truncated fixture dropped out-of-window terms from them.
template <class S>
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(ModulePtr source, ModulePtr target, int degree)
        : source_(std::move(source)), target_(std::move(target)), degree_(degree) {
        if (!(source_->ring() == target_->ring())) throw RingMismatch("graded map between modules over different rings");
        require_ring<S>(source_->ring());
        for (int k : source_->degrees())
            blocks_.emplace(k, zero_matrix<S>(static_cast<Eigen::Index>(target_->dimension(k + degree_)),
                                              static_cast<Eigen::Index>(source_->dimension(k))));
        clipped_.assign(source_->size(), false);
    }

    static GradedMap identity(const ModulePtr& m) {
        GradedMap out(m, m, 0);
        for (auto& [k, b] : out.blocks_) b.setIdentity();
        return out;
    }

    const ModulePtr& source() const { return source_; }
    const ModulePtr& target() const { return target_; }
    int degree() const { return degree_; }
    const Ring& ring() const { return source_->ring(); }

    const std::map<int, Matrix<S>>& blocks() const { return blocks_; }
    const Matrix<S>& block(int source_degree) const {
        auto it = blocks_.find(source_degree);
        if (it == blocks_.end()) throw DegreeError("no block in source degree " + std::to_string(source_degree));
        return it->second;
    }
    void set_block(int source_degree, Matrix<S> m) {
        auto it = blocks_.find(source_degree);
        if (it == blocks_.end()) throw DegreeError("no block in source degree " + std::to_string(source_degree));
        if (m.rows() != it->second.rows() || m.cols() != it->second.cols())
            throw DimensionError("block in degree " + std::to_string(source_degree) + " has the wrong shape");
        it->second = std::move(m);
    }

    S coefficient(std::size_t tgt, std::size_t src) const {
        if (!compatible(tgt, src)) return S(0);
        return blocks_.at(source_->degree(src))(static_cast<Eigen::Index>(target_->offset_in_degree(tgt)),
                                                static_cast<Eigen::Index>(source_->offset_in_degree(src)));
    }

    void set(std::size_t tgt, std::size_t src, const S& value) { entry(tgt, src) = value; }
    void add(std::size_t tgt, std::size_t src, const S& value) { entry(tgt, src) += value; }

    SparseVector<S> column(std::size_t src) const {
        SparseVector<S> out;
        int k = source_->degree(src);
        const Matrix<S>& b = blocks_.at(k);
        auto rows = target_->in_degree(k + degree_);
        auto c = static_cast<Eigen::Index>(source_->offset_in_degree(src));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const S& v = b(static_cast<Eigen::Index>(r), c);
            if (!koszul::is_zero(v)) out.emplace(rows[r], v);
        }
        return out;
    }

    SparseVector<S> apply(const SparseVector<S>& v) const {
        SparseVector<S> out;
        for (const auto& [i, c] : v)
            for (const auto& [j, d] : column(i)) accumulate(out, j, c * d);
        return out;
    }

    bool clipped(std::size_t src) const { return clipped_[src]; }
    void mark_clipped(std::size_t src, bool v = true) { clipped_[src] = v; }
    const std::vector<bool>& clipped_flags() const { return clipped_; }
    bool any_clipped() const {
        for (bool b : clipped_)
            if (b) return true;
        return false;
    }

    bool is_zero() const {
        for (const auto& [k, b] : blocks_)
            if (!koszul::is_zero<S>(b)) return false;
        return true;
    }

    friend bool operator==(const GradedMap& a, const GradedMap& b) {
        if (a.degree_ != b.degree_ || !same_module(a.source_, b.source_) || !same_module(a.target_, b.target_))
            return false;
        for (const auto& [k, m] : a.blocks_)
            if (!equal<S>(m, b.blocks_.at(k))) return false;
        return a.clipped_ == b.clipped_;
    }

private:
    bool compatible(std::size_t tgt, std::size_t src) const {
        return target_->degree(tgt) == source_->degree(src) + degree_;
    }
    S& entry(std::size_t tgt, std::size_t src) {
        if (!compatible(tgt, src))
            throw DegreeError("entry " + (*target_)[tgt].name + " <- " + (*source_)[src].name +
                              " breaks homogeneity of degree " + std::to_string(degree_));
        return blocks_.at(source_->degree(src))(static_cast<Eigen::Index>(target_->offset_in_degree(tgt)),
                                                static_cast<Eigen::Index>(source_->offset_in_degree(src)));
    }

    ModulePtr source_, target_;
    int degree_ = 0;
    std::map<int, Matrix<S>> blocks_;
    std::vector<bool> clipped_;
};

// f ∘ g
template <class S>
GradedMap<S> compose(const GradedMap<S>& f, const GradedMap<S>& g);

template <class S>
GradedMap<S> operator+(const GradedMap<S>& f, const GradedMap<S>& g);
template <class S>
GradedMap<S> operator-(const GradedMap<S>& f, const GradedMap<S>& g);
template <class S>
GradedMap<S> operator*(const S& c, const GradedMap<S>& f);

// (f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)
template <class S>
GradedMap<S> tensor_map(const GradedMap<S>& f, const GradedMap<S>& g);

// τ(x⊗y) = (-1)^{|x||y|} y⊗x
template <class S>
GradedMap<S> twist(const ModulePtr& m, const ModulePtr& n);

// f[k] : M[k] → N[k], carrying the sign (-1)^{|f|k}
template <class S>
GradedMap<S> shift_map(const GradedMap<S>& f, int k);

// ⟨f^∨ φ, x⟩ = (-1)^{|φ||f|} ⟨φ, f x⟩
template <class S>
GradedMap<S> dual_map(const GradedMap<S>& f);

// x ↦ ev_x = (-1)^{|x|} x^∨∨, so that ⟨ev_x, φ⟩ = (-1)^{|x||φ|} ⟨φ, x⟩
template <class S>
GradedMap<S> double_dual_embedding(const ModulePtr& m);

// d⊗1 + 1⊗d on M⊗N
template <class S>
GradedMap<S> tensor_differential(const GradedMap<S>& dm, const GradedMap<S>& dn);

// maps written in words: "3 U^2 - A*U"
template <class S>
std::string render(const SparseVector<S>& v, const GradedModule& m);

}  // namespace koszul
