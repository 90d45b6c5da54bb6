#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace koszul {

enum class Status { Pass, Fail, NotApplicable, Error };

std::string status_name(Status s);

// first offending input with both sides expanded in canonical basis order
struct Witness {
    std::string input;
    std::string lhs;
    std::string rhs;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckResult {
    std::string name;
    Status status = Status::Pass;
    std::size_t checked = 0;
    std::size_t excluded = 0;  // inputs touching truncated terms
    std::optional<Witness> witness;
    std::string note;

    bool passed() const { return status == Status::Pass; }
    friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct CheckGroup {
    std::string subject;
    std::vector<CheckResult> results;
    std::vector<std::pair<std::string, std::string>> facts;  // computed values worth printing

    bool passed() const {
        for (const auto& r : results)
            if (r.status == Status::Fail || r.status == Status::Error) return false;
        return true;
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& r : results)
            if (r.name == name) return &r;
        return nullptr;
    }
};

using AxiomReport = CheckGroup;

}  // namespace koszul
