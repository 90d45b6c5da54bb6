#pragma once

#include "koszul/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace koszul {

struct BasisElement {
    std::string name;
    int degree = 0;
    // U-exponent for truncated fixtures; drives the safe window
    std::optional<int> weight;

    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

class GradedModule;
using ModulePtr = std::shared_ptr<const GradedModule>;
using Multi = std::vector<std::uint32_t>;

// Free graded module with a named basis in canonical order: by degree, then
// by name (digit runs compared numerically). Tensor modules keep their factor
// structure and order each degree lexicographically by factor indices.
class GradedModule {
public:
    GradedModule() = default;
    GradedModule(Ring ring, std::vector<BasisElement> basis);

    static ModulePtr make(Ring ring, std::vector<BasisElement> basis) {
        return std::make_shared<const GradedModule>(std::move(ring), std::move(basis));
    }

    const Ring& ring() const { return ring_; }
    std::size_t size() const { return basis_.size(); }
    bool empty() const { return basis_.empty(); }
    const BasisElement& operator[](std::size_t i) const { return basis_[i]; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    int degree(std::size_t i) const { return basis_[i].degree; }

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;

    // distinct degrees, ascending
    const std::vector<int>& degrees() const { return degrees_; }
    std::size_t dimension(int d) const;
    std::span<const std::size_t> in_degree(int d) const;
    std::size_t offset_in_degree(std::size_t i) const { return offset_[i]; }

    bool is_tensor() const { return !factors_.empty(); }
    const std::vector<ModulePtr>& factors() const { return factors_; }
    const Multi& factor_indices(std::size_t i) const { return tuples_[i]; }
    std::size_t index_of_tuple(const Multi& t) const;

    friend bool operator==(const GradedModule& a, const GradedModule& b) {
        return a.ring_ == b.ring_ && a.basis_ == b.basis_;
    }

    friend ModulePtr tensor(const std::vector<ModulePtr>& factors);

private:
    void index();

    Ring ring_;
    std::vector<BasisElement> basis_;
    std::map<std::string, std::size_t, std::less<>> by_name_;
    std::vector<int> degrees_;
    std::map<int, std::vector<std::size_t>> in_degree_;
    std::vector<std::size_t> offset_;
    std::vector<ModulePtr> factors_;
    std::vector<Multi> tuples_;
    std::vector<std::size_t> flat_to_index_;
};

bool natural_less(std::string_view a, std::string_view b);

ModulePtr tensor(const std::vector<ModulePtr>& factors);
inline ModulePtr tensor(const ModulePtr& a, const ModulePtr& b) { return tensor(std::vector<ModulePtr>{a, b}); }

// M[k]_n = M_{n+k}: every element drops k in degree
ModulePtr shift(const ModulePtr& m, int k);

// dual basis x^∨ in degree -|x|; the weight label of x is kept
ModulePtr dual_module(const ModulePtr& m);

inline bool same_module(const ModulePtr& a, const ModulePtr& b) { return a == b || *a == *b; }

inline constexpr std::string_view kTensorSep = "⊗";
inline constexpr std::string_view kDualMark = "^∨";

}  // namespace koszul
