#pragma once

#include "koszul/report.hpp"
#include "koszul/scalar.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace koszul::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;  // bad arguments, parse or schema errors

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Job {
    std::string subject;
    std::function<CheckGroup()> run;
};

enum class Suite { Bialgebra, Cone, Homology, HomologyCone, All };

// throws Error for names outside the catalog or suites that do not apply
std::vector<Job> fixture_jobs(const std::string& name, const Ring& ring, int window, Suite suite);

// results land in job order whatever the thread count; an exception becomes an error entry
Report run_jobs(std::string title, const std::vector<Job>& jobs, unsigned threads = 1, bool timing = false);

const std::vector<Ring>& default_rings();

}  // namespace koszul::cli
