#include "koszul/graded_module.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace koszul {

bool natural_less(std::string_view a, std::string_view b) {
    auto number_at = [](std::string_view s, std::size_t& i) {
        bool neg = s[i] == '-';
        if (neg) ++i;
        long long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
        return neg ? -v : v;
    };
    auto starts_number = [](std::string_view s, std::size_t i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) return true;
        return s[i] == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]));
    };
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (starts_number(a, i) && starts_number(b, j)) {
            long long x = number_at(a, i), y = number_at(b, j);
            if (x != y) return x < y;
            continue;
        }
        if (a[i] != b[j]) return a[i] < b[j];
        ++i;
        ++j;
    }
    if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
    return a < b;
}

GradedModule::GradedModule(Ring ring, std::vector<BasisElement> basis) : ring_(ring), basis_(std::move(basis)) {
    std::stable_sort(basis_.begin(), basis_.end(), [](const BasisElement& x, const BasisElement& y) {
        if (x.degree != y.degree) return x.degree < y.degree;
        return natural_less(x.name, y.name);
    });
    index();
}

void GradedModule::index() {
    by_name_.clear();
    in_degree_.clear();
    degrees_.clear();
    offset_.assign(basis_.size(), 0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].name.empty()) throw InvariantViolation("basis element with empty name");
        if (!by_name_.emplace(basis_[i].name, i).second)
            throw InvariantViolation("duplicate basis name '" + basis_[i].name + "'");
        auto& bucket = in_degree_[basis_[i].degree];
        offset_[i] = bucket.size();
        bucket.push_back(i);
    }
    for (const auto& [d, _] : in_degree_) degrees_.push_back(d);
}

std::optional<std::size_t> GradedModule::find(std::string_view name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

std::size_t GradedModule::index_of(std::string_view name) const {
    auto i = find(name);
    if (!i) throw Error("unknown basis element '" + std::string(name) + "'");
    return *i;
}

std::size_t GradedModule::dimension(int d) const {
    auto it = in_degree_.find(d);
    return it == in_degree_.end() ? 0 : it->second.size();
}

std::span<const std::size_t> GradedModule::in_degree(int d) const {
    auto it = in_degree_.find(d);
    if (it == in_degree_.end()) return {};
    return it->second;
}

std::size_t GradedModule::index_of_tuple(const Multi& t) const {
    if (t.size() != factors_.size()) throw DimensionError("tensor index has wrong arity");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < t.size(); ++k) flat = flat * factors_[k]->size() + t[k];
    return flat_to_index_[flat];
}

ModulePtr tensor(const std::vector<ModulePtr>& factors) {
    if (factors.empty()) throw DimensionError("tensor of no factors");
    const Ring& ring = factors.front()->ring();
    for (const auto& f : factors)
        if (!(f->ring() == ring)) throw RingMismatch("tensor: rings differ");

    std::size_t total = 1;
    for (const auto& f : factors) total *= f->size();

    struct Entry {
        int degree;
        Multi tuple;
    };
    std::vector<Entry> entries;
    entries.reserve(total);
    Multi t(factors.size(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        int deg = 0;
        for (std::size_t k = factors.size(); k-- > 0;) {
            t[k] = static_cast<std::uint32_t>(rest % factors[k]->size());
            rest /= factors[k]->size();
        }
        for (std::size_t k = 0; k < factors.size(); ++k) deg += factors[k]->degree(t[k]);
        entries.push_back({deg, t});
    }
    // flat order is already lexicographic in factor indices
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.degree < b.degree; });

    auto out = std::make_shared<GradedModule>();
    out->ring_ = ring;
    out->factors_ = factors;
    out->basis_.reserve(total);
    out->tuples_.reserve(total);
    out->flat_to_index_.assign(total, 0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        std::string name;
        for (std::size_t k = 0; k < factors.size(); ++k) {
            if (k) name += kTensorSep;
            name += (*factors[k])[entries[i].tuple[k]].name;
        }
        out->basis_.push_back({std::move(name), entries[i].degree, std::nullopt});
        std::size_t flat = 0;
        for (std::size_t k = 0; k < factors.size(); ++k) flat = flat * factors[k]->size() + entries[i].tuple[k];
        out->flat_to_index_[flat] = i;
        out->tuples_.push_back(std::move(entries[i].tuple));
    }
    out->index();
    return out;
}

ModulePtr shift(const ModulePtr& m, int k) {
    if (k == 0) return m;
    std::vector<BasisElement> basis = m->basis();
    for (auto& b : basis) b.degree -= k;
    return GradedModule::make(m->ring(), std::move(basis));
}

ModulePtr dual_module(const ModulePtr& m) {
    std::vector<BasisElement> basis = m->basis();
    for (auto& b : basis) {
        b.name += kDualMark;
        b.degree = -b.degree;
    }
    return GradedModule::make(m->ring(), std::move(basis));
}

}  // namespace koszul
