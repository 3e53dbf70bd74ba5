#include "oraclesim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "oraclesim/deutsch.hpp"
#include "oraclesim/gates.hpp"
#include "oraclesim/measure.hpp"
#include "oraclesim/qcore.hpp"

namespace oraclesim {

namespace {

// Sparse real ket keyed by bitstring; enough to write the closed forms of the
// pipeline states as sums of tensor products.
using Ket = std::map<std::string, double>;

Ket tensor(const Ket &a, const Ket &b) {
    Ket out;
    for (const auto &[la, va] : a) {
        for (const auto &[lb, vb] : b) {
            out[la + lb] += va * vb;
        }
    }
    return out;
}

Ket tensor(const Ket &a, const Ket &b, const Ket &c) { return tensor(tensor(a, b), c); }

Ket add(const Ket &a, const Ket &b) {
    Ket out = a;
    for (const auto &[l, v] : b) {
        out[l] += v;
    }
    return out;
}

Ket scale(double s, const Ket &a) {
    Ket out;
    for (const auto &[l, v] : a) {
        out[l] = s * v;
    }
    return out;
}

double deviation(const StateVector &state, const Ket &expected) {
    std::vector<Amp> amps(state.dimension());
    for (const auto &[label, v] : expected) {
        amps[BasisLabel(label).index()] += v;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        worst = std::max(worst, std::abs(state[i] - amps[i]));
    }
    return worst;
}

const double kRoot2 = std::sqrt(2.0);
const Ket kZero = {{"0", 1.0}};
const Ket kOne = {{"1", 1.0}};
const Ket kPlus = {{"0", 1.0}, {"1", 1.0}};   // |0> + |1>, unnormalized
const Ket kMinus = {{"0", 1.0}, {"1", -1.0}}; // |0> - |1>, unnormalized
const Ket kB01 = {{"01", 1.0}};
const Ket kAllB = {{"00", 1.0}, {"01", 1.0}, {"10", 1.0}, {"11", 1.0}};
const Ket kB00MinusB11 = {{"00", 1.0}, {"11", -1.0}};
const Ket kB01MinusB10 = {{"01", 1.0}, {"10", -1.0}};

struct Equation {
    const char *check;
    std::string_view stage;
    Ket ket;
};

std::vector<Equation> fixed_setting_equations() {
    return {
        {"fixed_input_state", kStageInput, scale(1 / kRoot2, tensor(kB01, kZero, kMinus))},
        {"fixed_after_hadamard", kStageAfterHadamard, scale(0.5, tensor(kB01, kPlus, kMinus))},
        {"fixed_after_oracle", kStageAfterOracle, scale(0.5, tensor(kB01, kMinus, kMinus))},
        {"fixed_final_state", kStageFinal, scale(1 / kRoot2, tensor(kB01, kOne, kMinus))},
    };
}

std::vector<Equation> superposed_equations() {
    const Ket bracket8 =
        add(tensor(kB00MinusB11, kPlus), tensor(kB01MinusB10, kMinus));
    const Ket bracket9 = add(tensor(kB00MinusB11, kZero), tensor(kB01MinusB10, kOne));
    return {
        {"superposed_input", kStageInput, scale(1 / (2 * kRoot2), tensor(kAllB, kZero, kMinus))},
        {"superposed_after_hadamard", kStageAfterHadamard,
         scale(0.25, tensor(kAllB, kPlus, kMinus))},
        {"superposed_after_oracle", kStageAfterOracle, scale(0.25, tensor(bracket8, kMinus))},
        // trailing factor on V
        {"superposed_final", kStageFinal, scale(1 / (2 * kRoot2), tensor(bracket9, kMinus))},
    };
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

CheckResult make(std::string name, int criterion, double dev, double tol, std::string detail = {}) {
    return {std::move(name), criterion, dev < tol, dev, std::move(detail)};
}

// Block-diagonal (in B) random step on the Deutsch layout.
GateStep random_b_block_step(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> kind(0, 4);
    switch (kind(rng)) {
    case 0:
        return {random_unitary(2, rng), {2}, "U_A"};
    case 1:
        return {random_unitary(2, rng), {3}, "U_V"};
    case 2:
        return {random_unitary(4, rng), {2, 3}, "U_AV"};
    case 3: {
        std::vector<Unitary> blocks;
        for (int i = 0; i < 4; ++i) {
            blocks.push_back(random_unitary(2, rng));
        }
        return {block_diagonal(blocks), {0, 1, 2}, "C_B(U_A)"};
    }
    default: {
        std::vector<Unitary> blocks;
        for (int i = 0; i < 4; ++i) {
            blocks.push_back(random_unitary(4, rng));
        }
        return {block_diagonal(blocks), {0, 1, 2, 3}, "C_B(U_AV)"};
    }
    }
}

StateVector random_state(const RegisterLayout &layout, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::pair<Amp, BasisLabel>> terms;
    for (std::size_t i = 0; i < layout.dimension(); ++i) {
        terms.emplace_back(Amp(g(rng), g(rng)), BasisLabel::from_index(i, layout.total_qubits()));
    }
    return superpose(layout, terms);
}

double distribution_diff(const OutcomeDistribution &a, const OutcomeDistribution &b) {
    double worst = 0.0;
    for (const auto &[k, p] : a.probs) {
        worst = std::max(worst, std::abs(p - b.probability(k)));
    }
    return worst;
}

void run_equation_checks(std::vector<CheckResult> &out) {
    const auto run = run_deutsch("01");
    for (const auto &eq : fixed_setting_equations()) {
        out.push_back(make(eq.check, 1, deviation(run.trace.at(eq.stage), eq.ket), kAmpTolerance));
    }
    const auto superposed = run_deutsch_superposed();
    for (const auto &eq : superposed_equations()) {
        out.push_back(make(eq.check, 2, deviation(superposed.at(eq.stage), eq.ket), kAmpTolerance));
    }
    double consistency = std::max(trace_consistency_error(run.trace), trace_consistency_error(superposed));
    out.push_back(make("trace_consistency", 1, consistency, kAmpTolerance));
}

void run_readout_checks(std::vector<CheckResult> &out) {
    double worst = 0.0;
    bool classes_ok = true;
    int max_evaluations = 0;
    int min_evaluations = 1 << 30;
    for (const auto &b : kSettingLabels) {
        const auto run = run_deutsch(b);
        const std::string expected = (b == "01" || b == "10") ? "1" : "0";
        const auto dist = outcome_distribution(run.trace.final_state(), "A");
        worst = std::max(worst, std::abs(dist.probability(expected) - 1.0));
        const auto cls = classify_function(FunctionTable::deutsch().values(b));
        classes_ok = classes_ok && run.verdict.classification == cls;
        max_evaluations = std::max(max_evaluations, run.verdict.evaluations_used);
        min_evaluations = std::min(min_evaluations, run.verdict.evaluations_used);
    }
    auto readout = make("readout_table", 3, worst, kAmpTolerance);
    readout.passed = readout.passed && classes_ok;
    out.push_back(readout);

    const auto superposed = run_pipeline(prepare_superposed_input());
    const auto dj = run_deutsch_jozsa(FunctionValues{0, 1});
    const bool one = min_evaluations == 1 && max_evaluations == 1 && superposed.oracle_applications == 1 &&
                     dj.evaluations_used == 1;
    const bool two = classical_query_count(1) == 2;
    out.push_back({"single_evaluation", 4, one && two, 0.0,
                   "quantum evaluations=" + std::to_string(max_evaluations) +
                       " classical=" + std::to_string(classical_query_count(1))});
}

void run_structural_state_checks(std::vector<CheckResult> &out) {
    double disturbance = 0.0;
    double prob_err = 0.0;
    for (const auto &b : kSettingLabels) {
        const auto final_state = run_deutsch(b).trace.final_state();
        const auto outcome = *outcome_distribution(final_state, "A").point_mass();
        const auto rec = measure(final_state, "A", outcome);
        disturbance = std::max(disturbance, rec.post_state.max_abs_diff(final_state));
        prob_err = std::max(prob_err, std::abs(rec.probability - 1.0));
    }
    out.push_back(make("non_disturbance", 5, std::max(disturbance, prob_err), kAmpTolerance));

    const auto run = run_deutsch("01");
    const auto recovered = run_circuit(run.trace.final_state(), inverse(deutsch_circuit()));
    out.push_back(make("reversibility", 6, deviation(recovered, fixed_setting_equations()[0].ket),
                       kAmpTolerance));
}

void run_deferred_checks(std::vector<CheckResult> &out) {
    const auto report = deferred_equivalence(deutsch_circuit(), prepare_superposed_input(), "B", "A");
    for (const auto &branch : report.branches) {
        const std::string expected = (branch.outcome == "01" || branch.outcome == "10") ? "1" : "0";
        double readout_err = std::abs(branch.readout_projected_first.at(expected) - 1.0);
        readout_err = std::max(readout_err, std::abs(branch.readout_projected_last.at(expected) - 1.0));
        const double dev = std::max(branch.max_deviation, readout_err);
        out.push_back(make("deferred_equivalence_b" + branch.outcome, 7, dev, kAmpTolerance,
                           "P(b)=" + fmt(branch.probability) + " readout A=" + expected));
    }

    std::mt19937_64 rng(20240607);
    std::uniform_int_distribution<int> length(1, 5);
    const auto layout = RegisterLayout::deutsch();
    double worst = 0.0;
    constexpr int kCircuits = 128;
    for (int i = 0; i < kCircuits; ++i) {
        Circuit circuit;
        const int steps = length(rng);
        for (int s = 0; s < steps; ++s) {
            circuit.push_back(random_b_block_step(rng));
        }
        const auto r = deferred_equivalence(circuit, random_state(layout, rng), "B", "A");
        worst = std::max(worst, r.max_deviation);
    }
    out.push_back(make("deferred_equivalence_random_circuits", 7, worst, kAmpTolerance,
                       std::to_string(kCircuits) + " random B-block-diagonal circuits"));
}

void run_rho_checks(std::vector<CheckResult> &out) {
    double worst = 0.0;
    bool ok = true;
    for (int a0 = 0; a0 <= 1; ++a0) {
        for (const auto &b : kSettingLabels) {
            const auto report = rho_invariance(run_deutsch(b, {a0}).trace);
            worst = std::max(worst, report.max_full_deviation);
            ok = ok && report.basis_input && report.passed();
        }
    }
    auto basis = make("rho_b_invariance_basis_inputs", 8, worst, kAmpTolerance);
    basis.passed = basis.passed && ok;
    out.push_back(basis);

    const auto report = rho_invariance(run_deutsch_superposed());
    out.push_back(make("rho_b_diagonal_superposed", 8, report.max_diagonal_deviation, kAmpTolerance,
                       "off-diagonal max delta " + fmt(report.max_offdiagonal_deviation) +
                           " (reported, not asserted)"));
}

void run_dj_checks(std::vector<CheckResult> &out) {
    bool ok = true;
    std::size_t total = 0;
    double worst = 0.0;
    const std::map<int, std::size_t> expected_counts = {{1, 4}, {2, 8}, {3, 72}};
    for (const auto &[n, count] : expected_counts) {
        const auto sweep = deutsch_jozsa_sweep(n);
        ok = ok && sweep.size() == count;
        for (const auto &e : sweep) {
            ok = ok && e.correct();
            if (e.expected == FunctionClass::Constant) {
                worst = std::max(worst, std::abs(e.verdict.readout_probability - 1.0));
            }
            ++total;
        }
    }
    auto check = make("deutsch_jozsa_exhaustive", 9, worst, kAmpTolerance,
                      std::to_string(total) + " functions, n=1..3");
    check.passed = check.passed && ok;
    out.push_back(check);
}

void run_sampling_checks(std::vector<CheckResult> &out) {
    const auto counts = sample(prepare_superposed_input(), "B", 40000, 42).counts;
    const double sigma = std::sqrt(40000 * 0.25 * 0.75);
    double worst_z = 0.0;
    bool ok = counts.size() == 4;
    for (const auto &b : kSettingLabels) {
        const auto it = counts.find(b);
        const double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        worst_z = std::max(worst_z, std::abs(c - 10000.0) / sigma);
    }
    ok = ok && worst_z <= 3.0;
    const auto eigen = sample(run_deutsch("01").trace.final_state(), "A", 1000, 7).counts;
    ok = ok && eigen.size() == 1 && eigen.count("1") && eigen.at("1") == 1000;
    const auto basis = sample(basis_state(RegisterLayout::deutsch(), BasisLabel("0000")), "B", 7, 1).counts;
    ok = ok && basis.size() == 1 && basis.count("00") && basis.at("00") == 7;
    out.push_back({"sampling_sanity", 10, ok, worst_z, "max |count-10000|/sigma = " + fmt(worst_z)});
}

void run_property_checks(std::vector<CheckResult> &out) {
    double unitarity = Unitary::unitarity_error(hadamard().matrix());
    unitarity = std::max(unitarity, Unitary::unitarity_error(oracle_with_setting(FunctionTable::deutsch()).matrix()));
    bool permutations_ok = true;
    std::vector<Unitary> oracles{oracle_with_setting(FunctionTable::deutsch())};
    for (int n = 1; n <= 3; ++n) {
        for (const auto &f : promise_functions(n)) {
            oracles.push_back(oracle_fixed(f));
        }
    }
    for (const auto &u : oracles) {
        unitarity = std::max(unitarity, Unitary::unitarity_error(u.matrix()));
        const auto &m = u.matrix();
        for (std::size_t r = 0; r < m.dim(); ++r) {
            int ones_row = 0;
            int ones_col = 0;
            for (std::size_t c = 0; c < m.dim(); ++c) {
                const Amp e = m(r, c);
                permutations_ok = permutations_ok && (e == Amp(0.0) || e == Amp(1.0));
                ones_row += e == Amp(1.0);
                ones_col += m(c, r) == Amp(1.0);
            }
            permutations_ok = permutations_ok && ones_row == 1 && ones_col == 1;
        }
        permutations_ok = permutations_ok && (m * m).max_abs_diff(SquareMatrix::identity(m.dim())) == 0.0;
    }
    out.push_back(make("gate_unitarity", 11, unitarity, kMatrixTolerance,
                       std::to_string(oracles.size() + 1) + " gates"));
    out.push_back({"oracle_permutation_self_inverse", 11, permutations_ok, 0.0,
                   "exact 0/1 entries, U*U == I"});

    std::mt19937_64 rng(99);
    double norm_err = 0.0;
    const RegisterLayout layout({{"Q", 5}});
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> qubits = {0, 1, 2, 3, 4};
        std::shuffle(qubits.begin(), qubits.end(), rng);
        const auto k = static_cast<std::size_t>(1 + trial % 3);
        const std::vector<int> targets(qubits.begin(), qubits.begin() + static_cast<std::ptrdiff_t>(k));
        const auto s = apply_unitary(random_state(layout, rng), random_unitary(std::size_t{1} << k, rng), targets);
        norm_err = std::max(norm_err, std::abs(s.norm() - 1.0));
    }
    out.push_back(make("norm_preservation", 11, norm_err, kAmpTolerance, "200 random gates"));

    const auto h = hadamard();
    out.push_back(make("hadamard_involution", 11,
                       (h * h).matrix().max_abs_diff(SquareMatrix::identity(2)), kAmpTolerance));

    double phase_dev = 0.0;
    bool verdicts_ok = true;
    for (double theta : {0.3, 1.0, M_PI / 2, M_PI, 4.0}) {
        for (const auto &b : kSettingLabels) {
            const auto input = prepare_input(b);
            const auto ref = run_pipeline(input).trace.final_state();
            const auto rotated = run_pipeline(input.with_global_phase(theta));
            const auto v0 = read_verdict(ref, {}, 1);
            const auto v1 = read_verdict(rotated.trace.final_state(), {}, rotated.oracle_applications);
            verdicts_ok = verdicts_ok && v0.classification == v1.classification &&
                          v0.outcome_bit == v1.outcome_bit;
            for (const char *reg : {"B", "A", "V"}) {
                phase_dev = std::max(phase_dev, distribution_diff(outcome_distribution(ref, reg),
                                                                  outcome_distribution(rotated.trace.final_state(), reg)));
            }
        }
        const auto ref = run_deutsch_superposed().final_state();
        const auto rotated = run_pipeline(prepare_superposed_input().with_global_phase(theta)).trace.final_state();
        verdicts_ok = verdicts_ok && solution_correlation(ref) == solution_correlation(rotated);
        for (const char *reg : {"B", "A", "V"}) {
            phase_dev = std::max(phase_dev, distribution_diff(outcome_distribution(ref, reg),
                                                              outcome_distribution(rotated, reg)));
        }
    }
    auto phase = make("global_phase_invariance", 11, phase_dev, kAmpTolerance);
    phase.passed = phase.passed && verdicts_ok;
    out.push_back(phase);
}

} // namespace

const std::vector<std::string> &verification_manifest() {
    static const std::vector<std::string> names = {
        "fixed_input_state",
        "fixed_after_hadamard",
        "fixed_after_oracle",
        "fixed_final_state",
        "superposed_input",
        "superposed_after_hadamard",
        "superposed_after_oracle",
        "superposed_final",
        "trace_consistency",
        "readout_table",
        "single_evaluation",
        "non_disturbance",
        "reversibility",
        "deferred_equivalence_b00",
        "deferred_equivalence_b01",
        "deferred_equivalence_b10",
        "deferred_equivalence_b11",
        "deferred_equivalence_random_circuits",
        "rho_b_invariance_basis_inputs",
        "rho_b_diagonal_superposed",
        "deutsch_jozsa_exhaustive",
        "sampling_sanity",
        "gate_unitarity",
        "oracle_permutation_self_inverse",
        "norm_preservation",
        "hadamard_involution",
        "global_phase_invariance",
    };
    return names;
}

std::vector<CheckResult> run_verification() {
    std::vector<CheckResult> out;
    const std::vector<std::function<void(std::vector<CheckResult> &)>> groups = {
        run_equation_checks, run_readout_checks, run_structural_state_checks, run_deferred_checks,
        run_rho_checks,      run_dj_checks,      run_sampling_checks,         run_property_checks,
    };
    for (const auto &group : groups) {
        try {
            group(out);
        } catch (const std::exception &ex) {
            out.push_back({"error", 0, false, 0.0, ex.what()});
        }
    }
    return out;
}

} // namespace oraclesim
