#include "oraclesim/deutsch.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace oraclesim {

namespace {

constexpr int kQubitA = 2;
constexpr int kQubitV = 3;
const std::vector<int> kOracleTargets = {0, 1, 2, 3};

void check_setting(std::string_view b) {
    if (std::find(kSettingLabels.begin(), kSettingLabels.end(), b) == kSettingLabels.end()) {
        throw DomainError("problem setting must be one of 00, 01, 10, 11; got '" + std::string(b) + "'");
    }
}

void check_initial_a(const DeutschOptions &options) {
    if (options.initial_a != 0 && options.initial_a != 1) {
        throw DomainError("initial A state must be 0 or 1");
    }
}

FunctionClass class_from_bit(int bit, const DeutschOptions &options) {
    return (bit ^ options.initial_a) == 1 ? FunctionClass::Balanced : FunctionClass::Constant;
}

} // namespace

const StateVector &StageTrace::at(std::string_view label) const {
    for (const auto &s : stages) {
        if (s.label == label) {
            return s.state;
        }
    }
    throw DomainError("trace has no stage '" + std::string(label) + "'");
}

double trace_consistency_error(const StageTrace &trace) {
    if (trace.steps.size() + 1 != trace.stages.size()) {
        throw StructureError("trace needs one step between consecutive stages");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto next = apply(trace.stages[i].state, trace.steps[i]);
        worst = std::max(worst, next.max_abs_diff(trace.stages[i + 1].state));
    }
    return worst;
}

Circuit deutsch_circuit() {
    return {{hadamard(), {kQubitA}, "H_A"},
            {oracle_with_setting(FunctionTable::deutsch()), kOracleTargets, "H_f"},
            {hadamard(), {kQubitA}, "H_A"}};
}

StateVector prepare_input(std::string_view b, const DeutschOptions &options) {
    check_setting(b);
    check_initial_a(options);
    const BasisLabel label(std::string(b) + (options.initial_a ? "1" : "0") + "1");
    return apply_unitary(basis_state(RegisterLayout::deutsch(), label), hadamard(), {kQubitV});
}

StateVector prepare_superposed_input(const DeutschOptions &options) {
    check_initial_a(options);
    const BasisLabel label(std::string("00") + (options.initial_a ? "1" : "0") + "1");
    auto state = basis_state(RegisterLayout::deutsch(), label);
    for (int q : {0, 1, kQubitV}) {
        state = apply_unitary(state, hadamard(), {q});
    }
    return state;
}

PipelineRun run_pipeline(const StateVector &input) {
    if (!(input.layout() == RegisterLayout::deutsch())) {
        throw LayoutError("pipeline expects layout " + RegisterLayout::deutsch().describe() +
                          ", got " + input.layout().describe());
    }
    Circuit circuit = deutsch_circuit();
    CountingOracle oracle(circuit[1].unitary, circuit[1].targets);

    PipelineRun run;
    run.trace.stages.push_back({std::string(kStageInput), input});
    const auto after_h = apply(input, circuit[0]);
    run.trace.stages.push_back({std::string(kStageAfterHadamard), after_h});
    const auto after_f = oracle.apply(after_h);
    run.trace.stages.push_back({std::string(kStageAfterOracle), after_f});
    run.trace.stages.push_back({std::string(kStageFinal), apply(after_f, circuit[2])});
    run.trace.steps = std::move(circuit);
    run.oracle_applications = oracle.applications();
    return run;
}

Verdict read_verdict(const StateVector &final_state, const DeutschOptions &options,
                     int evaluations_used) {
    check_initial_a(options);
    const auto dist = outcome_distribution(final_state, "A");
    const auto outcome = dist.point_mass();
    if (!outcome) {
        throw StructureError("register A is not in an eigenstate of the readout observable");
    }
    Verdict v;
    v.outcome_bit = *outcome == "1" ? 1 : 0;
    v.classification = class_from_bit(v.outcome_bit, options);
    v.evaluations_used = evaluations_used;
    v.readout = *outcome;
    v.readout_probability = dist.probability(*outcome);
    return v;
}

DeutschRun run_deutsch(std::string_view b, const DeutschOptions &options) {
    auto run = run_pipeline(prepare_input(b, options));
    auto verdict = read_verdict(run.trace.final_state(), options, run.oracle_applications);
    return {std::move(run.trace), verdict};
}

StageTrace run_deutsch_superposed(const DeutschOptions &options) {
    return run_pipeline(prepare_superposed_input(options)).trace;
}

std::map<std::string, FunctionClass> solution_correlation(const StateVector &final_state,
                                                          const DeutschOptions &options) {
    check_initial_a(options);
    const auto settings = outcome_distribution(final_state, "B");
    std::map<std::string, FunctionClass> out;
    for (const auto &[b, p] : settings.support(1e-20)) {
        const auto branch = measure(final_state, "B", b).post_state;
        const auto readout = outcome_distribution(branch, "A").point_mass();
        if (!readout) {
            throw StructureError("register A is not deterministic for setting " + b);
        }
        out.emplace(b, class_from_bit(*readout == "1" ? 1 : 0, options));
    }
    return out;
}

Verdict run_deutsch_jozsa(std::span<const int> f) {
    const auto cls = classify_function(f);
    if (f.size() < 2) {
        throw DomainError("Deutsch-Jozsa needs at least one argument bit");
    }
    const int n = static_cast<int>(std::log2(static_cast<double>(f.size())));
    if (n > kMaxDeutschJozsaBits) {
        throw DomainError("Deutsch-Jozsa is limited to " + std::to_string(kMaxDeutschJozsaBits) +
                          " argument bits");
    }
    if (cls == FunctionClass::Neither) {
        throw PromiseViolationError("function is neither constant nor balanced");
    }

    const RegisterLayout layout({{"X", n}, {"V", 1}});
    auto state = basis_state(layout, BasisLabel::from_index(1, n + 1));
    const Unitary h = hadamard();
    for (int q = 0; q <= n; ++q) {
        state = apply_unitary(state, h, {q});
    }
    std::vector<int> targets(static_cast<std::size_t>(n + 1));
    for (int q = 0; q <= n; ++q) {
        targets[static_cast<std::size_t>(q)] = q;
    }
    CountingOracle oracle(oracle_fixed(f), targets);
    state = oracle.apply(state);
    for (int q = 0; q < n; ++q) {
        state = apply_unitary(state, h, {q});
    }

    const auto dist = outcome_distribution(state, "X");
    const auto best = std::max_element(dist.probs.begin(), dist.probs.end(),
                                       [](const auto &l, const auto &r) { return l.second < r.second; });
    const double p_zero = dist.probability(std::string(static_cast<std::size_t>(n), '0'));

    Verdict v;
    v.outcome_bit = p_zero > 0.5 ? 0 : 1;
    v.classification = v.outcome_bit == 0 ? FunctionClass::Constant : FunctionClass::Balanced;
    v.evaluations_used = oracle.applications();
    v.readout = best->first;
    v.readout_probability = best->second;
    return v;
}

std::vector<FunctionValues> promise_functions(int n) {
    if (n < 1 || n > 4) {
        throw DomainError("promise set enumeration supports 1 <= n <= 4");
    }
    const std::size_t size = std::size_t{1} << n;
    std::vector<FunctionValues> out;
    out.emplace_back(size, 0);
    out.emplace_back(size, 1);
    FunctionValues f(size, 0);
    std::fill(f.begin() + static_cast<std::ptrdiff_t>(size / 2), f.end(), 1);
    do {
        out.push_back(f);
    } while (std::next_permutation(f.begin(), f.end()));
    return out;
}

std::vector<SweepEntry> deutsch_jozsa_sweep(int n) {
    const auto functions = promise_functions(n);
    std::vector<SweepEntry> entries(functions.size());
    std::exception_ptr failure;
    const auto count = static_cast<std::int64_t>(functions.size());
#pragma omp parallel for schedule(dynamic) if (count >= 64)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            auto &e = entries[static_cast<std::size_t>(i)];
            e.function = functions[static_cast<std::size_t>(i)];
            e.expected = classify_function(e.function);
            e.verdict = run_deutsch_jozsa(e.function);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return entries;
}

std::uint64_t classical_query_count(int n) {
    if (n < 1 || n > 63) {
        throw DomainError("classical_query_count needs 1 <= n <= 63");
    }
    return (std::uint64_t{1} << (n - 1)) + 1;
}

RhoInvarianceReport rho_invariance(const StageTrace &trace, std::string_view register_name) {
    if (trace.stages.empty()) {
        throw StructureError("empty trace");
    }
    RhoInvarianceReport report;
    report.register_name = std::string(register_name);
    report.basis_input = outcome_distribution(trace.input(), register_name).point_mass().has_value();

    const DensityMatrix reference = partial_trace(trace.input(), register_name);
    for (const auto &stage : trace.stages) {
        RhoStage rs{stage.label, partial_trace(stage.state, register_name), 0.0, 0.0, 0.0};
        for (std::size_t r = 0; r < rs.rho.dim(); ++r) {
            for (std::size_t c = 0; c < rs.rho.dim(); ++c) {
                const double d = std::abs(rs.rho(r, c) - reference(r, c));
                rs.full_deviation = std::max(rs.full_deviation, d);
                if (r == c) {
                    rs.diagonal_deviation = std::max(rs.diagonal_deviation, d);
                } else {
                    rs.offdiagonal_deviation = std::max(rs.offdiagonal_deviation, d);
                }
            }
        }
        report.max_full_deviation = std::max(report.max_full_deviation, rs.full_deviation);
        report.max_diagonal_deviation = std::max(report.max_diagonal_deviation, rs.diagonal_deviation);
        report.max_offdiagonal_deviation =
            std::max(report.max_offdiagonal_deviation, rs.offdiagonal_deviation);
        report.stages.push_back(std::move(rs));
    }
    report.full_invariant = report.max_full_deviation < kAmpTolerance;
    report.diagonal_invariant = report.max_diagonal_deviation < kAmpTolerance;
    return report;
}

} // namespace oraclesim
