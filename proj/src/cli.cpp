#include "koszul/cli.hpp"

#include "koszul/fixtures.hpp"
#include "koszul/scenario.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

namespace koszul::cli {

namespace {

template <class F>
decltype(auto) with_scalar(const Ring& r, F&& f) {
    switch (r.kind) {
        case RingKind::Integers: return f(Integer{});
        case RingKind::Rationals: return f(Rational{});
        case RingKind::PrimeField: break;
    }
    return f(Fp{});
}

bool in_catalog(const std::string& name) {
    const auto& c = fixture_catalog();
    return std::find(c.begin(), c.end(), name) != c.end();
}

std::string catalog_list() {
    std::string out;
    for (const auto& n : fixture_catalog()) out += (out.empty() ? "" : ", ") + n;
    return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_circle(const std::string& name) { return name.find("-s1-") != std::string::npos; }

CheckResult pass_if(std::string name, bool ok, std::string note = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.checked = 1;
    r.status = ok ? Status::Pass : Status::Fail;
    r.note = std::move(note);
    return r;
}

template <class S>
CheckResult matches_up_to_sign(const TensorElement<S>& value, const TensorElement<S>& expected) {
    CheckResult r;
    r.name = "λη matches the closed form up to sign";
    r.checked = 1;
    if (value == expected) {
        r.note = expected.is_zero() ? "both zero" : "sign +";
    } else if (value == expected.scaled(-1)) {
        r.note = "sign -";
    } else {
        r.status = Status::Fail;
        r.witness = Witness{"η", render(value), "±(" + render(expected) + ")"};
    }
    return r;
}

template <class S>
ChainComplex<S> complex_of(const UIABInstance<S>& inst) {
    if (inst.differential) return ChainComplex<S>(*inst.differential);
    return ChainComplex<S>::with_zero_differential(inst.module);
}

// ---- fixture suites

template <class S>
void bialgebra_jobs(std::vector<Job>& jobs, const std::string& name, const Ring& ring, TruncationWindow w) {
    const std::string at = name + " over " + ring.name();
    jobs.push_back({at + ": axioms", [=] {
                        auto inst = make_fixture<S>(name, ring, w);
                        CheckGroup g = check_axioms(inst);
                        g.facts.emplace_back("window", "N = " + std::to_string(w.N) + ", " +
                                                           std::to_string(inst.safe.size()) + " safe of " +
                                                           std::to_string(inst.module->size()) + " basis elements");
                        return g;
                    }});
    jobs.push_back({at + ": properties", [=] {
                        auto inst = make_fixture<S>(name, ring, w);
                        CheckGroup g;
                        auto le = lambda_eta(inst);
                        g.facts.emplace_back("λη", render(le.value));
                        g.results.push_back(le.symmetry);
                        g.results.push_back(matches_up_to_sign(le.value, expected_lambda_eta(name, inst)));
                        g.results.push_back(check_commutativity(inst));
                        g.results.push_back(check_cocommutativity(inst));
                        g.results.push_back(check_involutivity(inst));
                        g.results.push_back(check_cc_implies_antisymmetry(inst));
                        if (name.rfind("omega-s1-", 0) == 0) g.results.push_back(check_loday_ronco(inst));
                        return g;
                    }});
    if (!is_circle(name)) return;
    jobs.push_back({at + ": transition between λ₊ and λ₋", [=] {
                        const bool plus = ends_with(name, "-plus");
                        const std::string base = name.substr(0, name.rfind('-'));
                        auto p = make_fixture<S>(base + "-plus", ring, w);
                        auto m = make_fixture<S>(base + "-minus", ring, w);
                        auto c = circle_transition_bivector(p);
                        CheckGroup g;
                        g.facts.emplace_back("c", render(c));
                        if (plus) {
                            CheckResult r = check_secondary_relation(p, m, c);
                            r.name = "λ₋ = λ₊ + (μ⊗1)(1⊗c) + (1⊗μ)(c⊗1)";
                            g.results.push_back(r);
                            CheckResult l = check_lemma_c_lambda_eta(c.scaled(-1), p);
                            l.name = "-c = λ₊η";
                            g.results.push_back(l);
                        } else {
                            CheckResult r = check_secondary_relation(m, p, c.scaled(-1));
                            r.name = "λ₊ = λ₋ - (μ⊗1)(1⊗c) - (1⊗μ)(c⊗1)";
                            g.results.push_back(r);
                            CheckResult l = check_lemma_c_lambda_eta(c, m);
                            l.name = "c = λ₋η";
                            g.results.push_back(l);
                        }
                        return g;
                    }});
}

template <class S>
CheckGroup cone_product_group(const A2PlusData<S>& data) {
    auto pkg = derive_secondary_ops(data);
    auto prod = assemble_cone_product(data, pkg);
    CheckGroup g = check_pairing_identities(data, pkg);
    for (auto& r : check_closed_forms(data, prod).results) g.results.push_back(std::move(r));
    g.results.push_back(check_cone_commutativity(prod));
    g.facts.emplace_back("cone basis", std::to_string(prod.module()->size()) + " elements, " +
                                           std::to_string(prod.safe().size()) + " safe");
    g.facts.emplace_back("weight defect", std::to_string(data.weight_defect));
    return g;
}

template <class S>
void cone_jobs(std::vector<Job>& jobs, const std::string& at, std::function<A2PlusData<S>()> make) {
    jobs.push_back({at + ": cone product", [=] { return cone_product_group(make()); }});
    jobs.push_back({at + ": cone associativity", [=] { return check_assoc_implies_uir(make()); }});
}

template <class S>
CheckGroup tstar_group(const Ring& ring, bool with_phi) {
    auto t = make_tstar_s1<S>(ring);
    CheckGroup g;
    g.facts.emplace_back("H(A)", homology(t.A).render());
    g.facts.emplace_back("H(M)", homology(t.M).render());
    g.facts.emplace_back("H(Cone(c))", homology(t.cone.complex).render());
    if (!with_phi) return g;
    g.results.push_back(pass_if("c = 0", t.c.map().is_zero()));
    g.results.push_back(pass_if("Φ is a chain map", t.phi.chain_map));
    g.results.push_back(pass_if("(Φ - id)² = 0, so Φ is invertible", t.phi.unipotent));
    g.results.push_back(pass_if("Φ_* ≠ id on cone homology", !t.phi.identity_on_homology, t.phi.witness));
    g.facts.emplace_back("Φ_*", t.phi.identity_on_homology ? "identity" : "nontrivial");
    return g;
}

template <class S>
std::vector<Job> fixture_jobs_t(const std::string& name, const Ring& ring, TruncationWindow w, Suite suite) {
    std::vector<Job> jobs;
    const std::string at = name + " over " + ring.name();
    if (name == "tstar-s1") {
        bool phi = suite != Suite::Homology;
        jobs.push_back({at + (phi ? ": transition automorphism" : ": homology"), [=] { return tstar_group<S>(ring, phi); }});
        return jobs;
    }
    const bool cone = is_a2plus_fixture(name);
    auto make = [=] { return make_a2plus_fixture<S>(name, ring, w); };
    if (suite == Suite::Bialgebra || suite == Suite::All) bialgebra_jobs<S>(jobs, name, ring, w);
    if (suite == Suite::Cone && !cone)
        throw Error(name + " has no cone data; cone fixtures: lambda-s3, lambda-s1-plus, lambda-s1-minus");
    if ((suite == Suite::Cone || suite == Suite::All) && cone) cone_jobs<S>(jobs, at, make);
    if (suite == Suite::HomologyCone && !cone) throw Error(name + " has no cone data");
    if (suite == Suite::Homology || suite == Suite::HomologyCone || suite == Suite::All) {
        const bool with_cone = suite == Suite::HomologyCone || (suite == Suite::All && cone);
        jobs.push_back({at + ": homology", [=] {
                            auto inst = make_fixture<S>(name, ring, w);
                            CheckGroup g;
                            g.facts.emplace_back("H(A)", homology(complex_of(inst)).render());
                            if (with_cone) g.facts.emplace_back("H(Cone(c0))", homology(cone_complex(make()).complex).render());
                            return g;
                        }});
    }
    return jobs;
}

// ---- scenario suites

bool wants(const Scenario& sc, const std::string& check) {
    return std::find(sc.checks.begin(), sc.checks.end(), check) != sc.checks.end();
}

template <class S>
std::vector<Job> scenario_jobs_t(const Scenario& sc, Suite suite) {
    std::vector<Job> jobs;
    const std::string at = sc.name + " over " + sc.ring.name();
    if (suite == Suite::Cone || suite == Suite::HomologyCone || (suite == Suite::Bialgebra && wants(sc, "cone"))) {
        if (!sc.has_cone()) throw SchemaError("/cone", "required for cone checks");
    }
    if (suite == Suite::Bialgebra) {
        if (wants(sc, "axioms")) jobs.push_back({at + ": axioms", [=] { return check_axioms(build_instance<S>(sc)); }});
        static const std::vector<std::string> props{"lambda-eta",      "commutativity", "cocommutativity",
                                                    "involutivity",    "cc-antisymmetry", "loday-ronco",
                                                    "lemma-c"};
        bool any = false;
        for (const auto& p : props) any = any || wants(sc, p);
        if (any)
            jobs.push_back({at + ": properties", [=] {
                                auto inst = build_instance<S>(sc);
                                CheckGroup g;
                                if (wants(sc, "lambda-eta")) {
                                    auto le = lambda_eta(inst);
                                    g.facts.emplace_back("λη", render(le.value));
                                    g.results.push_back(le.symmetry);
                                }
                                if (wants(sc, "commutativity")) g.results.push_back(check_commutativity(inst));
                                if (wants(sc, "cocommutativity")) g.results.push_back(check_cocommutativity(inst));
                                if (wants(sc, "involutivity")) g.results.push_back(check_involutivity(inst));
                                if (wants(sc, "cc-antisymmetry")) g.results.push_back(check_cc_implies_antisymmetry(inst));
                                if (wants(sc, "loday-ronco")) {
                                    try {
                                        g.results.push_back(check_loday_ronco(inst));
                                    } catch (const Error& e) {
                                        CheckResult r;
                                        r.name = "Loday-Ronco relation";
                                        r.status = Status::NotApplicable;
                                        r.note = e.what();
                                        g.results.push_back(r);
                                    }
                                }
                                if (wants(sc, "lemma-c"))
                                    g.results.push_back(check_lemma_c_lambda_eta(build_bivector<S>(sc, "c", inst.module), inst));
                                return g;
                            }});
    }
    auto make = [=] { return *build_a2plus<S>(sc); };
    if (suite == Suite::Cone || (suite == Suite::Bialgebra && wants(sc, "cone"))) cone_jobs<S>(jobs, at, make);
    if (suite == Suite::Homology || suite == Suite::HomologyCone) {
        const bool with_cone = suite == Suite::HomologyCone;
        jobs.push_back({at + ": homology", [=] {
                            CheckGroup g;
                            ModulePtr m = build_module<S>(sc);
                            g.facts.emplace_back("H(A)", homology(ChainComplex<S>(build_differential<S>(sc, m))).render());
                            if (with_cone) g.facts.emplace_back("H(Cone(c0))", homology(cone_complex(make()).complex).render());
                            return g;
                        }});
    }
    return jobs;
}

// ---- plumbing

std::vector<Ring> parse_rings(const std::vector<std::string>& names) {
    if (names.empty()) return default_rings();
    std::vector<Ring> out;
    for (const auto& n : names) out.push_back(Ring::parse(n));
    return out;
}

struct Options {
    std::vector<std::string> rings;
    int window = 12;
    unsigned threads = 1;
    std::string format = "text";
    bool timing = false;
};

Format format_of(const std::string& f) {
    if (f == "json") return Format::Json;
    if (f == "md") return Format::Markdown;
    return Format::Text;
}

// fixture name or scenario path
std::vector<Job> target_jobs(const std::string& target, const Options& o, Suite suite, bool fixtures_only = false) {
    if (in_catalog(target)) {
        std::vector<Job> jobs;
        TruncationWindow w(o.window);
        for (const Ring& r : parse_rings(o.rings))
            for (auto& j : with_scalar(r, [&](auto tag) { return fixture_jobs_t<decltype(tag)>(target, r, w, suite); }))
                jobs.push_back(std::move(j));
        return jobs;
    }
    if (fixtures_only || !(ends_with(target, ".json") || std::filesystem::exists(target)))
        throw Error("unknown fixture '" + target + "'; known fixtures: " + catalog_list());
    if (!o.rings.empty()) throw Error("--ring does not apply to scenario files; the ring is set in the file");
    Scenario sc = ingest_file(target);
    return with_scalar(sc.ring, [&](auto tag) { return scenario_jobs_t<decltype(tag)>(sc, suite); });
}

int emit(std::ostream& out, const Report& r, const Options& o) {
    out << render(r, format_of(o.format));
    return r.passed() ? kExitPass : kExitFail;
}

template <class S>
nlohmann::ordered_json export_fixture(const std::string& name, const Ring& ring, TruncationWindow w) {
    if (name == "tstar-s1") throw Error("tstar-s1 is a chain-level example and has no bialgebra to export");
    auto inst = make_fixture<S>(name, ring, w);
    std::vector<std::string> checks{"axioms", "lambda-eta", "commutativity", "cocommutativity", "involutivity",
                                    "cc-antisymmetry"};
    if (!is_a2plus_fixture(name)) return export_scenario(inst, checks);
    auto data = make_a2plus_fixture<S>(name, ring, w);
    checks.push_back("cone");
    return export_scenario(inst, checks, &data);
}

void write_out(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

}  // namespace

const std::vector<Ring>& default_rings() {
    static const std::vector<Ring> rings{Ring::integers(), Ring::rationals(), Ring::prime_field(5)};
    return rings;
}

std::vector<Job> fixture_jobs(const std::string& name, const Ring& ring, int window, Suite suite) {
    if (!in_catalog(name)) throw Error("unknown fixture '" + name + "'; known fixtures: " + catalog_list());
    TruncationWindow w(window);
    return with_scalar(ring, [&](auto tag) { return fixture_jobs_t<decltype(tag)>(name, ring, w, suite); });
}

Report run_jobs(std::string title, const std::vector<Job>& jobs, unsigned threads, bool timing) {
    Report report;
    report.title = std::move(title);
    report.groups.resize(jobs.size());
    std::vector<double> seconds(jobs.size(), 0.0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            auto t0 = std::chrono::steady_clock::now();
            CheckGroup g;
            try {
                g = jobs[i].run();
            } catch (const std::exception& e) {
                CheckResult r;
                r.name = "evaluation";
                r.status = Status::Error;
                r.note = e.what();
                g.results = {r};
            }
            g.subject = jobs[i].subject;
            report.groups[i] = std::move(g);
            seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1))));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (timing) report.seconds = std::move(seconds);
    return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact checks for unital infinitesimal bialgebras and their cone algebras", "koszul"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub, bool formats = true) {
        sub->add_option("--ring", o.rings, "Z, Q or GF(p); repeatable (default: Z, Q, GF(5))");
        sub->add_option("--window", o.window, "truncation window N for fixtures")->check(CLI::Range(4, 64));
        sub->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));
        sub->add_flag("--timing", o.timing, "include wall-clock times (reports stop being reproducible)");
        if (formats) sub->add_option("--format", o.format, "text, json or md")->check(CLI::IsMember({"text", "json", "md"}));
    };

    std::string target;
    auto* check = app.add_subcommand("check", "run the checks of a scenario file or fixture");
    check->add_option("target", target, "scenario file or fixture name")->required();
    common(check);

    auto* demo = app.add_subcommand("demo", "run every suite on a shipped fixture");
    demo->add_option("fixture", target, "fixture name")->required();
    common(demo);

    bool with_cone = false;
    auto* hom = app.add_subcommand("homology", "homology summaries");
    hom->add_option("target", target, "scenario file or fixture name")->required();
    hom->add_flag("--cone", with_cone, "include the cone and, for tstar-s1, the transition automorphism");
    common(hom);

    auto* cone = app.add_subcommand("cone", "assemble the cone product and cross-check the closed forms");
    cone->add_option("target", target, "scenario file or cone fixture")->required();
    common(cone);

    std::vector<std::string> targets;
    auto* report = app.add_subcommand("report", "full report over fixtures and scenarios");
    report->add_option("targets", targets, "fixtures or scenario files (default: the whole catalog)");
    common(report, false);
    report->add_option("--format", o.format, "json or md")->required()->check(CLI::IsMember({"json", "md"}));

    std::string ring_name = "Z", output;
    auto* exp = app.add_subcommand("export", "write a fixture as a scenario file");
    exp->add_option("fixture", target, "fixture name")->required();
    exp->add_option("--ring", ring_name, "Z, Q or GF(p)");
    exp->add_option("--window", o.window, "truncation window N")->check(CLI::Range(4, 64));
    exp->add_option("-o,--output", output, "output path (default: stdout)");

    RandomSpec spec;
    auto* rnd = app.add_subcommand("random", "write a seeded random instance as a scenario file");
    rnd->add_option("--seed", spec.seed, "generator seed");
    rnd->add_option("--size", spec.size, "basis size")->check(CLI::Range(std::size_t{1}, kMaxRandomSize));
    rnd->add_option("--bound", spec.coefficient_bound, "coefficients lie in [-bound, bound]")->check(CLI::Range(0, 100));
    rnd->add_option("--ring", ring_name, "Z, Q or GF(p)");
    rnd->add_option("-o,--output", output, "output path (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*check) return emit(out, run_jobs("check " + target, target_jobs(target, o, Suite::Bialgebra), o.threads, o.timing), o);
        if (*demo) return emit(out, run_jobs("demo " + target, target_jobs(target, o, Suite::All, true), o.threads, o.timing), o);
        if (*hom) {
            Suite s = with_cone ? Suite::HomologyCone : Suite::Homology;
            if (target == "tstar-s1" && !with_cone) s = Suite::Homology;
            return emit(out, run_jobs("homology " + target + (with_cone ? " --cone" : ""), target_jobs(target, o, s), o.threads, o.timing), o);
        }
        if (*cone) return emit(out, run_jobs("cone " + target, target_jobs(target, o, Suite::Cone), o.threads, o.timing), o);
        if (*report) {
            if (targets.empty()) targets = fixture_catalog();
            std::vector<Job> jobs;
            for (const auto& t : targets)
                for (auto& j : target_jobs(t, o, in_catalog(t) ? Suite::All : Suite::Bialgebra)) jobs.push_back(std::move(j));
            return emit(out, run_jobs("report", jobs, o.threads, o.timing), o);
        }
        if (*exp) {
            if (!in_catalog(target)) throw Error("unknown fixture '" + target + "'; known fixtures: " + catalog_list());
            Ring r = Ring::parse(ring_name);
            TruncationWindow w(o.window);
            auto doc = with_scalar(r, [&](auto tag) { return export_fixture<decltype(tag)>(target, r, w); });
            write_out(out, output, doc.dump(2) + "\n");
            return kExitPass;
        }
        if (*rnd) {
            Ring r = Ring::parse(ring_name);
            auto doc = with_scalar(r, [&](auto tag) {
                using S = decltype(tag);
                return export_scenario(make_random_instance<S>(spec, r), {"axioms"});
            });
            write_out(out, output, doc.dump(2) + "\n");
            return kExitPass;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaError& e) {
        err << "schema error at " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace koszul::cli
