#pragma once

#include "koszul/check.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace koszul {

enum class Format { Text, Json, Markdown };

struct Report {
    std::string title;
    std::vector<CheckGroup> groups;
    // wall-clock seconds per group; left empty unless asked for, since timing
    // would make reports differ between runs
    std::vector<double> seconds;

    std::size_t count(Status s) const;
    bool passed() const { return count(Status::Fail) == 0 && count(Status::Error) == 0; }
};

nlohmann::ordered_json to_json(const Report& r);
std::string render(const Report& r, Format f);

}  // namespace koszul
