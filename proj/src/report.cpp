#include "koszul/report.hpp"

#include <cstdio>
#include <sstream>

namespace koszul {

std::size_t Report::count(Status s) const {
    std::size_t n = 0;
    for (const auto& g : groups)
        for (const auto& r : g.results) n += r.status == s;
    return n;
}

namespace {

std::string seconds_text(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3fs", s);
    return buf;
}

std::string summary_line(const Report& r) {
    std::ostringstream out;
    out << r.count(Status::Pass) << " passed, " << r.count(Status::Fail) << " failed, " << r.count(Status::NotApplicable)
        << " n/a, " << r.count(Status::Error) << " errors";
    return out.str();
}

std::string counts(const CheckResult& c) {
    std::string s = "checked " + std::to_string(c.checked);
    if (c.excluded) s += ", excluded " + std::to_string(c.excluded);
    return s;
}

std::string text(const Report& r) {
    std::ostringstream out;
    out << r.title << "\n";
    for (std::size_t i = 0; i < r.groups.size(); ++i) {
        const CheckGroup& g = r.groups[i];
        out << "\n== " << g.subject;
        if (i < r.seconds.size()) out << " (" << seconds_text(r.seconds[i]) << ")";
        out << "\n";
        for (const auto& [k, v] : g.facts) out << "  " << k << " = " << v << "\n";
        for (const auto& c : g.results) {
            std::string st = status_name(c.status);
            if (c.status == Status::Fail) st = "FAIL";
            if (c.status == Status::Error) st = "ERROR";
            st.resize(5, ' ');
            out << "  " << st << " " << c.name << "  (" << counts(c) << ")\n";
            if (!c.note.empty()) out << "        " << c.note << "\n";
            if (c.witness) {
                out << "        witness: " << c.witness->input << "\n";
                out << "        lhs: " << c.witness->lhs << "\n";
                out << "        rhs: " << c.witness->rhs << "\n";
            }
        }
    }
    out << "\nsummary: " << summary_line(r) << "\n";
    return out.str();
}

std::string cell(std::string s) {
    std::string out;
    for (char ch : s) {
        if (ch == '|') out += "\\|";
        else if (ch == '\n') out += " ";
        else out += ch;
    }
    return out;
}

std::string markdown(const Report& r) {
    std::ostringstream out;
    out << "# " << r.title << "\n";
    for (std::size_t i = 0; i < r.groups.size(); ++i) {
        const CheckGroup& g = r.groups[i];
        out << "\n## " << g.subject << "\n\n";
        if (i < r.seconds.size()) out << "Time: " << seconds_text(r.seconds[i]) << "\n\n";
        for (const auto& [k, v] : g.facts) out << "- `" << k << " = " << v << "`\n";
        if (!g.facts.empty()) out << "\n";
        out << "| check | status | checked | excluded | note |\n|---|---|---:|---:|---|\n";
        for (const auto& c : g.results)
            out << "| " << cell(c.name) << " | " << status_name(c.status) << " | " << c.checked << " | " << c.excluded
                << " | " << cell(c.note) << " |\n";
        for (const auto& c : g.results) {
            if (!c.witness) continue;
            out << "\nWitness for " << c.name << " at `" << c.witness->input << "`:\n\n```\nlhs: " << c.witness->lhs
                << "\nrhs: " << c.witness->rhs << "\n```\n";
        }
    }
    out << "\n**Summary:** " << summary_line(r) << "\n";
    return out.str();
}

}  // namespace

nlohmann::ordered_json to_json(const Report& r) {
    using nlohmann::ordered_json;
    ordered_json out;
    out["title"] = r.title;
    out["passed"] = r.passed();
    out["summary"] = {{"pass", r.count(Status::Pass)},
                      {"fail", r.count(Status::Fail)},
                      {"n/a", r.count(Status::NotApplicable)},
                      {"error", r.count(Status::Error)}};
    ordered_json groups = ordered_json::array();
    for (std::size_t i = 0; i < r.groups.size(); ++i) {
        const CheckGroup& g = r.groups[i];
        ordered_json jg;
        jg["subject"] = g.subject;
        jg["passed"] = g.passed();
        if (i < r.seconds.size()) jg["seconds"] = r.seconds[i];
        ordered_json facts = ordered_json::object();
        for (const auto& [k, v] : g.facts) facts[k] = v;
        jg["facts"] = facts;
        ordered_json results = ordered_json::array();
        for (const auto& c : g.results) {
            ordered_json jr{{"name", c.name}, {"status", status_name(c.status)}, {"checked", c.checked},
                            {"excluded", c.excluded}};
            if (!c.note.empty()) jr["note"] = c.note;
            if (c.witness) jr["witness"] = {{"input", c.witness->input}, {"lhs", c.witness->lhs}, {"rhs", c.witness->rhs}};
            results.push_back(jr);
        }
        jg["results"] = results;
        groups.push_back(jg);
    }
    out["groups"] = groups;
    return out;
}

std::string render(const Report& r, Format f) {
    switch (f) {
        case Format::Json: return to_json(r).dump(2) + "\n";
        case Format::Markdown: return markdown(r);
        case Format::Text: break;
    }
    return text(r);
}

}  // namespace koszul
