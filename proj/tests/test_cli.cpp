#include "doctest.h"

#include "koszul/cli.hpp"

#include <sstream>

using namespace koszul;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("demo prints lambda eta for the free loop space of the circle") {
    Outcome o = run({"demo", "lambda-s1-plus", "--ring", "Z"});
    CHECK(o.code == cli::kExitPass);
    CHECK(o.out.find("λη = A⊗1 - 1⊗A") != std::string::npos);
    CHECK(o.out.find("FAIL") == std::string::npos);
}

TEST_CASE("a broken scenario exits nonzero with a witness") {
    Outcome o = run({"check", KOSZUL_SOURCE_DIR "/scenarios/broken.json"});
    CHECK(o.code == cli::kExitFail);
    CHECK(o.out.find("witness: U⊗U") != std::string::npos);
}

TEST_CASE("homology of the cotangent circle reports a nontrivial Φ_*") {
    Outcome o = run({"homology", "tstar-s1", "--cone", "--ring", "Z"});
    CHECK(o.code == cli::kExitPass);
    CHECK(o.out.find("Φ_* = nontrivial") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({"check", "lambda-s3"}).code == cli::kExitPass);
    CHECK(run({"check", KOSZUL_SOURCE_DIR "/scenarios/minimal.json"}).code == cli::kExitPass);
    Outcome unknown = run({"check", "lambda-s9"});
    CHECK(unknown.code == cli::kExitUsage);
    CHECK(unknown.err.find("known fixtures: lambda-s3") != std::string::npos);
    CHECK(run({"cone", "omega-s3"}).code == cli::kExitUsage);
    CHECK(run({"report", "--format", "xml"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"check", "/nonexistent/file.json"}).code == cli::kExitUsage);
    CHECK(run({"check", "lambda-s3", "--window", "2"}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitPass);
}

TEST_CASE("reports do not depend on the thread count") {
    Outcome one = run({"report", "--format", "json", "--threads", "1"});
    Outcome four = run({"report", "--format", "json", "--threads", "4"});
    Outcome again = run({"report", "--format", "json", "--threads", "1"});
    CHECK(one.code == cli::kExitPass);
    CHECK(one.out == four.out);
    CHECK(one.out == again.out);
    Outcome md1 = run({"report", "--format", "md", "lambda-s3", "tstar-s1"});
    Outcome md3 = run({"report", "--format", "md", "lambda-s3", "tstar-s1", "--threads", "3"});
    CHECK(md1.out == md3.out);
}

TEST_CASE("json and markdown agree on the summary") {
    Outcome j = run({"report", "--format", "json", "omega-s1-minus", "--ring", "Z"});
    Outcome m = run({"report", "--format", "md", "omega-s1-minus", "--ring", "Z"});
    auto doc = nlohmann::json::parse(j.out);
    std::string line = "**Summary:** " + std::to_string(doc["summary"]["pass"].get<int>()) + " passed, " +
                       std::to_string(doc["summary"]["fail"].get<int>()) + " failed, " +
                       std::to_string(doc["summary"]["n/a"].get<int>()) + " n/a";
    CHECK(m.out.find(line) != std::string::npos);
}

}
