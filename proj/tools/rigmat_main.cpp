#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rigmat/corpus.hpp"
#include "rigmat/pinv.hpp"
#include "rigmat/positivity.hpp"
#include "rigmat/session.hpp"
#include "rigmat/split.hpp"
#include "rigmat/trace.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknown = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("RIGMAT_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(output_path);
        out << text << "\n";
    }
}

int run_session(const std::string& path, const std::string& rig_override,
                const std::string& output_path, const std::string& kind_filter) {
    try {
        rigmat::SessionDocument doc = rigmat::parse_session(read_file(path), rig_override);
        rigmat::SessionReport report = rigmat::evaluate_session(doc, kind_filter);
        emit(report.to_json(), output_path);
        return report.exit_code();
    } catch (const rigmat::SessionError& e) {
        std::cerr << "parse/evaluation error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int run_corpus(const std::string& output_path) {
    auto reports = rigmat::run_all_cases();
    std::ostringstream out;
    bool all_pass = true;
    for (const auto& r : reports) {
        out << (r.pass ? "PASS " : "FAIL ") << r.id << "  " << r.description << "\n";
        if (!r.pass) {
            out << "     " << r.detail << "\n";
            all_pass = false;
        }
    }
    out << (all_pass ? "corpus: all cases pass" : "corpus: FAILURES present");
    emit(out.str(), output_path);
    return all_pass ? kExitPass : kExitFailure;
}

int run_check(const std::string& suite, std::uint64_t seed, int cases,
              const std::string& rig_name, const std::string& output_path) {
    using namespace rigmat;
    GenConfig cfg;
    cfg.seed = seed;
    cfg.rig = rig_by_name(rig_name);
    std::ostringstream out;
    bool pass = true;

    auto report_laws = [&](ArrowClass cls, bool totality) {
        LawReport r = law_suite(cfg, cls, cases, totality);
        for (const auto& [law, stats] : r.stats)
            out << "laws/" << class_name(cls) << "/" << law_name(law) << ": " << stats.checked
                << " checked, " << stats.both_defined << " both-defined, " << stats.one_sided
                << " one-sided, " << stats.failures << " failures\n";
        for (const auto& f : r.failures)
            out << "  failure at " << law_name(f.law) << "#" << f.instance << ": " << f.detail
                << "\n";
        pass = pass && r.pass();
    };

    if (suite == "laws" || suite == "all") {
        report_laws(ArrowClass::All, false);
        report_laws(ArrowClass::Contraction, true);
    }
    if (suite == "contraction-closure" || suite == "closure" || suite == "all") {
        int failures = 0;
        for (int i = 0; i < cases; ++i) {
            Rng rng(cfg.seed, 0x70, static_cast<std::uint64_t>(i));
            int x = rng.uniform(0, 3), a = rng.uniform(0, 3), b = rng.uniform(0, 3);
            Matrix f = gen_contraction(cfg, static_cast<std::uint64_t>(i), a + x, b + x);
            TraceProblem tp(f, BlockPartition{a, x}, BlockPartition{b, x});
            if (!closure_check(f, tp, ArrowClass::Contraction)) ++failures;
        }
        out << "closure/contraction: " << cases << " samples, " << failures << " failures\n";
        pass = pass && failures == 0;
    }
    if (suite == "coincidence" || suite == "all") {
        int failures = 0, both = 0;
        for (int i = 0; i < cases; ++i) {
            Rng rng(cfg.seed, 0x71, static_cast<std::uint64_t>(i));
            int x = rng.uniform(0, 2), a = rng.uniform(0, 2), b = rng.uniform(0, 2);
            Matrix f = rng.coin() ? gen_contraction(cfg, static_cast<std::uint64_t>(i), a + x, b + x)
                                  : gen_matrix(cfg, static_cast<std::uint64_t>(i), b + x, a + x);
            TraceProblem tp(f, BlockPartition{a, x}, BlockPartition{b, x});
            if (kernel_image_trace(tp).verdict.is_exists() &&
                pseudotrace(tp).verdict.is_exists())
                ++both;
            if (!coincidence_check(tp)) ++failures;
        }
        out << "coincidence: " << cases << " problems, " << both << " doubly defined, "
            << failures << " failures\n";
        pass = pass && failures == 0;
    }
    if (suite == "maxed" || suite == "all") {
        int failures = 0;
        for (int i = 0; i < cases; ++i) {
            Rng rng(cfg.seed, 0x72, static_cast<std::uint64_t>(i));
            int a = rng.uniform(1, 3), b = rng.uniform(0, 2);
            Matrix iso = gen_isometry(cfg, static_cast<std::uint64_t>(i) * 2, a, a + b);
            Matrix lower = gen_contraction(cfg, static_cast<std::uint64_t>(i) * 2 + 1,
                                           a, rng.uniform(0, 2));
            Matrix stacked = assemble({{iso}, {lower}}, BlockPartition{a + b, lower.cod()},
                                      BlockPartition{a});
            if (is_contraction(stacked).is_exists() && !lower.is_zero()) ++failures;
        }
        out << "maxed-out: " << cases << " stacked columns, " << failures << " violations\n";
        pass = pass && failures == 0;
    }
    if (suite == "ep" || suite == "all") {
        int failures = 0;
        for (int i = 0; i < cases; ++i) {
            Rng rng(cfg.seed, 0x73, static_cast<std::uint64_t>(i));
            int n = rng.uniform(1, 4);
            Matrix f = gen_contraction(cfg, static_cast<std::uint64_t>(i), n, n);
            Matrix g = sub(identity(cfg.rig, n), f);
            if (!is_ep(g).is_exists()) ++failures;
        }
        out << "ep: " << cases << " endo-contractions, " << failures << " failures\n";
        pass = pass && failures == 0;
    }
    out << (pass ? "check: pass" : "check: FAIL");
    emit(out.str(), output_path);
    return pass ? kExitPass : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dagger matrix categories: pseudoinverses, traces, counterexamples"};
    app.require_subcommand(1);

    std::string path, output_path, rig_override;
    std::string suite = "all";
    std::string rig_name = "Rationals";
    std::uint64_t seed = default_seed();
    int cases = 100;

    CLI::App* eval = app.add_subcommand("eval", "evaluate a session file");
    eval->add_option("session", path, "session file")->required();
    eval->add_option("--rig", rig_override, "override the session rig");
    eval->add_option("-o,--output", output_path, "write the report here");

    CLI::App* pinv_cmd = app.add_subcommand("pinv", "run only the pinv statements of a session");
    pinv_cmd->add_option("session", path, "session file")->required();
    pinv_cmd->add_option("--rig", rig_override, "override the session rig");
    pinv_cmd->add_option("-o,--output", output_path, "write the report here");

    CLI::App* trace_cmd = app.add_subcommand("trace", "run only the trace statements of a session");
    trace_cmd->add_option("session", path, "session file")->required();
    trace_cmd->add_option("--rig", rig_override, "override the session rig");
    trace_cmd->add_option("-o,--output", output_path, "write the report here");

    CLI::App* corpus_cmd = app.add_subcommand("corpus", "run the counterexample corpus");
    corpus_cmd->add_option("-o,--output", output_path, "write the report here");

    CLI::App* check_cmd = app.add_subcommand("check", "run seeded law/closure suites");
    check_cmd->add_option("--suite", suite,
                          "laws | closure | coincidence | maxed | ep | all");
    check_cmd->add_option("--seed", seed, "generator seed (default: RIGMAT_SEED or 0)");
    check_cmd->add_option("--cases", cases, "instances per suite");
    check_cmd->add_option("--rig", rig_name, "rig for the generator suites");
    check_cmd->add_option("-o,--output", output_path, "write the report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (eval->parsed()) return run_session(path, rig_override, output_path, "");
        if (pinv_cmd->parsed()) return run_session(path, rig_override, output_path, "pinv");
        if (trace_cmd->parsed()) return run_session(path, rig_override, output_path, "trace");
        if (corpus_cmd->parsed()) return run_corpus(output_path);
        if (check_cmd->parsed()) return run_check(suite, seed, cases, rig_name, output_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
