#include "oraclesim/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "oraclesim/deutsch.hpp"
#include "oraclesim/dump.hpp"
#include "oraclesim/measure.hpp"
#include "oraclesim/verify.hpp"

namespace oraclesim {

namespace {

using nlohmann::json;

struct UsageError {
    std::string message;
};

std::string join_values(const FunctionValues &f, const char *sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) {
            out += sep;
        }
        out += std::to_string(f[i]);
    }
    return out;
}

std::string fmt_double(double v, int precision = 3) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

void check_initial_a(int a) {
    if (a != 0 && a != 1) {
        throw UsageError{"--initial-a must be 0 or 1"};
    }
}

void check_setting(const std::string &b) {
    if (std::find(kSettingLabels.begin(), kSettingLabels.end(), b) == kSettingLabels.end()) {
        throw UsageError{"problem setting must be one of 00, 01, 10, 11 (got '" + b + "')"};
    }
}

json verdict_json(const Verdict &v) {
    return {{"outcome", v.outcome_bit},
            {"classification", std::string(to_string(v.classification))},
            {"evaluations", v.evaluations_used},
            {"readout", v.readout},
            {"readout_probability", round_significant(v.readout_probability)}};
}

std::string verdict_line(const Verdict &v) {
    return "outcome=" + std::to_string(v.outcome_bit) +
           " classification=" + std::string(to_string(v.classification)) +
           " evaluations=" + std::to_string(v.evaluations_used);
}

void print_trace(std::ostream &out, const StageTrace &trace) {
    for (const auto &stage : trace.stages) {
        out << "stage " << stage.label << '\n';
        for (const auto &line : format_state(stage.state)) {
            out << "  " << line << '\n';
        }
    }
}

json stages_json(const StageTrace &trace, const json &meta) {
    json stages = json::array();
    for (const auto &stage : trace.stages) {
        stages.push_back(to_json(make_dump(stage.state, stage.label, meta)));
    }
    return stages;
}

json base_meta() { return {{"tool", "oraclesim"}, {"version", tool_version()}}; }

// ---------------------------------------------------------------------------

int cmd_run(std::ostream &out, const std::string &b, bool trace, bool as_json, int initial_a) {
    check_setting(b);
    check_initial_a(initial_a);
    const auto run = run_deutsch(b, {initial_a});
    if (as_json) {
        json meta = base_meta();
        meta["setting"] = b;
        meta["initial_a"] = initial_a;
        out << json{{"verdict", verdict_json(run.verdict)}, {"stages", stages_json(run.trace, meta)}}.dump(2)
            << '\n';
        return kExitOk;
    }
    if (trace) {
        print_trace(out, run.trace);
    }
    out << verdict_line(run.verdict) << '\n';
    return kExitOk;
}

int cmd_superposed(std::ostream &out, bool as_json, int initial_a) {
    check_initial_a(initial_a);
    const DeutschOptions options{initial_a};
    const auto trace = run_deutsch_superposed(options);
    const auto solutions = solution_correlation(trace.final_state(), options);
    const auto rho = rho_invariance(trace);
    if (as_json) {
        json meta = base_meta();
        meta["setting"] = "superposed";
        meta["initial_a"] = initial_a;
        json sol = json::object();
        for (const auto &[b, cls] : solutions) {
            sol[b] = std::string(to_string(cls));
        }
        out << json{{"stages", stages_json(trace, meta)},
                    {"solutions", sol},
                    {"rho_B",
                     {{"diagonal_max_delta", rho.max_diagonal_deviation},
                      {"offdiagonal_max_delta", rho.max_offdiagonal_deviation}}}}
                   .dump(2)
            << '\n';
        return kExitOk;
    }
    print_trace(out, trace);
    for (const auto &[b, cls] : solutions) {
        out << "setting " << b << " -> " << to_string(cls) << '\n';
    }
    out << "rho_B diagonal max delta=" << fmt_double(rho.max_diagonal_deviation)
        << " off-diagonal max delta=" << fmt_double(rho.max_offdiagonal_deviation) << '\n';
    return kExitOk;
}

int cmd_verify(std::ostream &out, bool as_json) {
    const auto results = run_verification();
    bool all = true;
    json arr = json::array();
    for (const auto &r : results) {
        all = all && r.passed;
        if (as_json) {
            arr.push_back({{"name", r.name},
                           {"criterion", r.criterion},
                           {"passed", r.passed},
                           {"max_deviation", r.max_deviation},
                           {"detail", r.detail}});
        } else {
            out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(38) << r.name
                << " max_dev=" << std::setw(10) << fmt_double(r.max_deviation);
            if (!r.detail.empty()) {
                out << "  " << r.detail;
            }
            out << '\n';
        }
    }
    if (as_json) {
        out << json{{"checks", arr}, {"passed", all}}.dump(2) << '\n';
    } else {
        out << (all ? "all " : "NOT all ") << results.size() << " checks passed\n";
    }
    return all ? kExitOk : kExitVerificationFailed;
}

int cmd_sample(std::ostream &out, const std::string &target, const std::string &reg, long long shots,
               unsigned long long seed, const std::string &stage, bool as_json, int initial_a) {
    if (shots < 1) {
        throw UsageError{"--shots must be at least 1"};
    }
    check_initial_a(initial_a);
    StageTrace trace;
    if (target == "superposed") {
        trace = run_deutsch_superposed({initial_a});
    } else {
        check_setting(target);
        trace = run_deutsch(target, {initial_a}).trace;
    }
    const StateVector *state = nullptr;
    for (const auto &s : trace.stages) {
        if (s.label == stage) {
            state = &s.state;
        }
    }
    if (!state) {
        throw UsageError{"unknown stage '" + stage + "'"};
    }
    if (!state->layout().contains(reg)) {
        throw UsageError{"unknown register '" + reg + "' (expected B, A or V)"};
    }
    const auto result = sample(*state, reg, static_cast<std::size_t>(shots), seed);
    if (as_json) {
        json counts = json::object();
        for (const auto &[k, c] : result.counts) {
            counts[k] = c;
        }
        out << json{{"register", reg},   {"stage", stage},       {"setting", target},
                    {"shots", shots},    {"seed", seed},         {"rng", result.rng},
                    {"counts", counts},  {"version", tool_version()}}
                   .dump(2)
            << '\n';
        return kExitOk;
    }
    out << "register " << reg << " stage " << stage << " shots " << shots << " seed " << seed
        << " rng " << result.rng << '\n';
    out << std::left << std::setw(10) << "outcome" << std::setw(10) << "count" << "frequency\n";
    for (const auto &[k, c] : result.counts) {
        char freq[32];
        std::snprintf(freq, sizeof freq, "%.6f", static_cast<double>(c) / static_cast<double>(shots));
        out << std::left << std::setw(10) << k << std::setw(10) << c << freq << '\n';
    }
    return kExitOk;
}

int cmd_dj(std::ostream &out, std::ostream &err, const std::string &file, int n, bool all) {
    if (all == !file.empty()) {
        throw UsageError{"dj needs exactly one of --function-file or --all"};
    }
    if (all) {
        if (n < 1 || n > 3) {
            throw UsageError{"--all needs --n between 1 and 3"};
        }
        const auto sweep = deutsch_jozsa_sweep(n);
        std::size_t correct = 0;
        for (const auto &e : sweep) {
            correct += e.correct();
            out << "f=" << join_values(e.function, "") << " expected=" << to_string(e.expected)
                << " classification=" << to_string(e.verdict.classification) << " readout=" << e.verdict.readout
                << " evaluations=" << e.verdict.evaluations_used << (e.correct() ? " ok" : " WRONG") << '\n';
        }
        out << sweep.size() << " verdicts, " << correct << " correct\n";
        return correct == sweep.size() ? kExitOk : kExitVerificationFailed;
    }

    std::ifstream in(file);
    if (!in) {
        throw UsageError{"cannot read function file '" + file + "'"};
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    FunctionTable table = [&] {
        try {
            return parse_function_table(buffer.str());
        } catch (const FormatError &ex) {
            throw UsageError{"malformed function file: " + std::string(ex.what())};
        }
    }();
    if (n != 0 && n != table.arg_bits()) {
        throw UsageError{"--n " + std::to_string(n) + " does not match the file's " +
                         std::to_string(table.arg_bits()) + " argument bits"};
    }
    if (table.arg_bits() > kMaxDeutschJozsaBits) {
        throw UsageError{"functions are limited to " + std::to_string(kMaxDeutschJozsaBits) + " argument bits"};
    }
    for (const auto &[label, f] : table.settings()) {
        if (classify_function(f) == FunctionClass::Neither) {
            err << "promise violation: " << label << ": " << join_values(f)
                << " is neither constant nor balanced\n";
            return kExitPromiseViolation;
        }
    }
    for (const auto &[label, f] : table.settings()) {
        const auto v = run_deutsch_jozsa(f);
        out << label << ": " << verdict_line(v) << " readout=" << v.readout << '\n';
    }
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact state-vector simulator for the Deutsch and Deutsch-Jozsa oracle problems",
                 "oraclesim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    std::string b;
    bool trace = false;
    bool as_json = false;
    int initial_a = 0;
    auto *run = app.add_subcommand("run", "Run the algorithm for one problem setting");
    run->add_option("b", b, "Problem setting: 00, 01, 10 or 11")->required();
    run->add_flag("--trace", trace, "Print all four pipeline stages");
    run->add_flag("--json", as_json, "Emit JSON state dumps per stage");
    run->add_option("--initial-a", initial_a, "Initial basis state of register A (0 or 1)");

    auto *sup = app.add_subcommand("superposed", "Run with register B in uniform superposition");
    sup->add_flag("--json", as_json, "Emit JSON");
    sup->add_option("--initial-a", initial_a, "Initial basis state of register A (0 or 1)");

    auto *ver = app.add_subcommand("verify", "Run the built-in verification suite");
    ver->add_flag("--json", as_json, "Emit JSON");

    std::string target;
    std::string reg = "A";
    long long shots = 1000;
    unsigned long long seed = 0;
    std::string stage(kStageFinal);
    auto *smp = app.add_subcommand("sample", "Sample a register of a pipeline state");
    smp->add_option("setting", target, "Problem setting (00, 01, 10, 11) or 'superposed'")->required();
    smp->add_option("--register", reg, "Register to measure (B, A or V)");
    smp->add_option("--shots", shots, "Number of shots");
    smp->add_option("--seed", seed, "RNG seed");
    smp->add_option("--stage", stage, "Stage to sample (input, after_H_A, after_H_f, after_H_A_2)");
    smp->add_flag("--json", as_json, "Emit JSON");
    smp->add_option("--initial-a", initial_a, "Initial basis state of register A (0 or 1)");

    std::string function_file;
    int n = 0;
    bool all = false;
    auto *dj = app.add_subcommand("dj", "Deutsch-Jozsa on n-bit functions");
    dj->add_option("--function-file", function_file, "Function table file ('<label>: v0,v1,...' per line)");
    dj->add_option("--n", n, "Argument bits");
    dj->add_flag("--all", all, "Enumerate every constant and balanced function (n <= 3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    try {
        if (run->parsed()) {
            return cmd_run(out, b, trace, as_json, initial_a);
        }
        if (sup->parsed()) {
            return cmd_superposed(out, as_json, initial_a);
        }
        if (ver->parsed()) {
            return cmd_verify(out, as_json);
        }
        if (smp->parsed()) {
            return cmd_sample(out, target, reg, shots, seed, stage, as_json, initial_a);
        }
        if (dj->parsed()) {
            return cmd_dj(out, err, function_file, n, all);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.message << '\n';
        return kExitUsage;
    } catch (const PromiseViolationError &e) {
        err << "promise violation: " << e.what() << '\n';
        return kExitPromiseViolation;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
    return kExitUsage;
}

} // namespace oraclesim
