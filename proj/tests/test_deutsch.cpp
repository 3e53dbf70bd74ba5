#include "oraclesim/deutsch.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <unordered_map>

#include "closed_forms.hpp"

using namespace oraclesim;

namespace {

const double kInvRoot2 = 1 / std::sqrt(2.0);

TEST(RunDeutsch, BalancedSettingMatchesClosedForms) {
    const auto run = run_deutsch("01");
    EXPECT_LT(closed_forms::deviation(run.trace.at(kStageInput), closed_forms::balanced_input()), 1e-12);
    EXPECT_LT(closed_forms::deviation(run.trace.at(kStageAfterHadamard), closed_forms::balanced_after_hadamard()), 1e-12);
    EXPECT_LT(closed_forms::deviation(run.trace.at(kStageAfterOracle), closed_forms::balanced_after_oracle()), 1e-12);
    EXPECT_LT(closed_forms::deviation(run.trace.at(kStageFinal), closed_forms::balanced_final()), 1e-12);
    EXPECT_EQ(run.verdict.outcome_bit, 1);
    EXPECT_EQ(run.verdict.classification, FunctionClass::Balanced);
    EXPECT_EQ(run.verdict.evaluations_used, 1);
    EXPECT_NEAR(run.trace.final_state()[BasisLabel("0110").index()].real(), kInvRoot2, 1e-12);
    EXPECT_NEAR(run.trace.final_state()[BasisLabel("0111").index()].real(), -kInvRoot2, 1e-12);
}

TEST(RunDeutsch, ConstantZeroReadsZero) {
    const auto run = run_deutsch("00");
    EXPECT_EQ(run.verdict.outcome_bit, 0);
    EXPECT_EQ(run.verdict.classification, FunctionClass::Constant);
}

TEST(RunDeutsch, SettingTenCarriesOppositeSign) {
    const auto run = run_deutsch("10");
    EXPECT_EQ(run.verdict.outcome_bit, 1);
    EXPECT_EQ(run.verdict.classification, FunctionClass::Balanced);
    const auto &f = run.trace.final_state();
    EXPECT_NEAR(f[BasisLabel("1010").index()].real(), -kInvRoot2, 1e-12);
    EXPECT_NEAR(f[BasisLabel("1011").index()].real(), kInvRoot2, 1e-12);
    // b=11 picks up the sign on the constant side
    const auto run11 = run_deutsch("11");
    const auto &g = run11.trace.final_state();
    EXPECT_NEAR(g[BasisLabel("1100").index()].real(), -kInvRoot2, 1e-12);
}

TEST(RunDeutsch, EveryStageMatchesSuperposedFormsRestrictedToSetting) {
    for (const auto &b : kSettingLabels) {
        // superposed forms conditioned on b, renormalized by 2
        const std::vector<closed_forms::Ket> forms = {closed_forms::superposed_input(), closed_forms::superposed_after_hadamard(),
                                                      closed_forms::superposed_after_oracle(), closed_forms::superposed_final()};
        const auto run = run_deutsch(b);
        for (std::size_t i = 0; i < forms.size(); ++i) {
            closed_forms::Ket restricted;
            for (const auto &[bits, v] : forms[i]) {
                if (bits.starts_with(b)) {
                    restricted[bits] = 2 * v;
                }
            }
            EXPECT_LT(closed_forms::deviation(run.trace.stages[i].state, restricted), 1e-12)
                << "b=" << b << " stage " << run.trace.stages[i].label;
        }
    }
}

TEST(RunDeutsch, RejectsUnknownSetting) {
    EXPECT_THROW(run_deutsch("02"), DomainError);
    EXPECT_THROW(run_deutsch("1"), DomainError);
    EXPECT_THROW(run_deutsch("01", {2}), DomainError);
}

TEST(RunDeutsch, InitialAOneInvertsReadoutButNotVerdict) {
    for (const auto &b : kSettingLabels) {
        const auto zero = run_deutsch(b, {0});
        const auto one = run_deutsch(b, {1});
        EXPECT_EQ(one.verdict.outcome_bit, 1 - zero.verdict.outcome_bit) << b;
        EXPECT_EQ(one.verdict.classification, zero.verdict.classification) << b;
        EXPECT_EQ(one.verdict.classification, classify_function(FunctionTable::deutsch().values(b)));
    }
}

TEST(RunDeutsch, TraceIsConsistentWithDeclaredSteps) {
    const auto run = run_deutsch("11");
    ASSERT_EQ(run.trace.stages.size(), 4u);
    EXPECT_EQ(run.trace.stages[0].label, "input");
    EXPECT_EQ(run.trace.stages[3].label, "after_H_A_2");
    EXPECT_LT(trace_consistency_error(run.trace), 1e-12);
}

TEST(RunDeutschSuperposed, StagesMatchClosedForms) {
    const auto trace = run_deutsch_superposed();
    EXPECT_LT(closed_forms::deviation(trace.at(kStageInput), closed_forms::superposed_input()), 1e-12);
    EXPECT_LT(closed_forms::deviation(trace.at(kStageAfterHadamard), closed_forms::superposed_after_hadamard()), 1e-12);
    EXPECT_LT(closed_forms::deviation(trace.at(kStageAfterOracle), closed_forms::superposed_after_oracle()), 1e-12);
    EXPECT_LT(closed_forms::deviation(trace.at(kStageFinal), closed_forms::superposed_final()), 1e-12);
}

TEST(RunDeutschSuperposed, NamedAmplitudes) {
    const auto trace = run_deutsch_superposed();
    const auto &oracle_stage = trace.at(kStageAfterOracle);
    EXPECT_NEAR(oracle_stage[BasisLabel("0000").index()].real(), 0.25, 1e-12);
    EXPECT_NEAR(oracle_stage[BasisLabel("1100").index()].real(), -0.25, 1e-12);

    const auto &input = trace.input();
    int nonzero = 0;
    for (std::size_t i = 0; i < 16; ++i) {
        if (std::abs(input[i]) > 1e-12) {
            ++nonzero;
            EXPECT_NEAR(std::abs(input[i]), 1 / (2 * std::sqrt(2.0)), 1e-12);
        }
    }
    EXPECT_EQ(nonzero, 8);

    const auto &final_state = trace.final_state();
    for (const char *prefix : {"001", "010"}) { // (b=00, a=1), (b=01, a=0)
        for (const char *v : {"0", "1"}) {
            EXPECT_EQ(std::abs(final_state[BasisLabel(std::string(prefix) + v).index()]) < 1e-12, true);
        }
    }
}

TEST(RunDeutschSuperposed, RestrictionConsistency) {
    const auto superposed = run_deutsch_superposed();
    for (const auto &b : kSettingLabels) {
        const auto fixed = run_deutsch(b);
        for (std::size_t i = 0; i < 4; ++i) {
            const auto conditioned = measure(superposed.stages[i].state, "B", b).post_state;
            EXPECT_LT(conditioned.max_abs_diff(fixed.trace.stages[i].state), 1e-12) << b << " stage " << i;
        }
    }
}

TEST(RunDeutschSuperposed, OracleAppliedOnce) {
    EXPECT_EQ(run_pipeline(prepare_superposed_input()).oracle_applications, 1);
}

TEST(SolutionCorrelation, SuperposedFinalState) {
    const auto map = solution_correlation(run_deutsch_superposed().final_state());
    const std::map<std::string, FunctionClass> want = {{"00", FunctionClass::Constant},
                                                       {"01", FunctionClass::Balanced},
                                                       {"10", FunctionClass::Balanced},
                                                       {"11", FunctionClass::Constant}};
    EXPECT_EQ(map, want);
    for (const auto &[b, cls] : map) {
        EXPECT_EQ(cls, classify_function(FunctionTable::deutsch().values(b)));
    }
}

TEST(SolutionCorrelation, SingleSettingFinalState) {
    const auto map = solution_correlation(run_deutsch("01").trace.final_state());
    ASSERT_EQ(map.size(), 1u);
    EXPECT_EQ(map.at("01"), FunctionClass::Balanced);
}

TEST(SolutionCorrelation, NonDeterministicReadoutIsStructureError) {
    EXPECT_THROW(solution_correlation(run_deutsch_superposed().at(kStageAfterHadamard)), StructureError);
    EXPECT_THROW(read_verdict(run_deutsch_superposed().final_state(), {}, 1), StructureError);
}

TEST(GlobalPhase, VerdictsAndDistributionsUnchanged) {
    for (double theta : {0.1, 0.7, 2.0, M_PI, 5.5}) {
        for (const auto &b : kSettingLabels) {
            const auto ref = run_deutsch(b);
            const auto rotated = run_pipeline(prepare_input(b).with_global_phase(theta));
            const auto v = read_verdict(rotated.trace.final_state(), {}, rotated.oracle_applications);
            EXPECT_EQ(v.classification, ref.verdict.classification);
            EXPECT_EQ(v.outcome_bit, ref.verdict.outcome_bit);
            for (const char *reg : {"B", "A", "V"}) {
                const auto d0 = outcome_distribution(ref.trace.final_state(), reg);
                const auto d1 = outcome_distribution(rotated.trace.final_state(), reg);
                for (const auto &[k, p] : d0.probs) {
                    EXPECT_NEAR(p, d1.probability(k), 1e-12);
                }
            }
        }
    }
}

TEST(DeutschJozsa, SingleBitMatchesDeutsch) {
    const auto v = run_deutsch_jozsa(FunctionValues{0, 1});
    EXPECT_EQ(v.classification, FunctionClass::Balanced);
    EXPECT_EQ(v.classification, run_deutsch("01").verdict.classification);
    EXPECT_EQ(v.evaluations_used, 1);
}

TEST(DeutschJozsa, ConstantTwoBitFunctionInterferesCompletely) {
    const auto v = run_deutsch_jozsa(FunctionValues{0, 0, 0, 0});
    EXPECT_EQ(v.classification, FunctionClass::Constant);
    EXPECT_EQ(v.readout, "00");
    EXPECT_NEAR(v.readout_probability, 1.0, 1e-12);
}

TEST(DeutschJozsa, PromiseViolationRaisedBeforeRun) {
    EXPECT_THROW(run_deutsch_jozsa(FunctionValues{0, 0, 0, 1}), PromiseViolationError);
    EXPECT_THROW(run_deutsch_jozsa(FunctionValues(512, 0)), DomainError);
    EXPECT_THROW(run_deutsch_jozsa(FunctionValues{0, 0, 1}), DomainError);
}

TEST(DeutschJozsa, EightBitFunctionsAreSupported) {
    FunctionValues f(256, 0);
    for (std::size_t i = 0; i < 256; ++i) {
        f[i] = static_cast<int>(std::popcount(i) & 1u);
    }
    const auto v = run_deutsch_jozsa(f);
    EXPECT_EQ(v.classification, FunctionClass::Balanced);
    // parity is linear: all weight on the all-ones outcome
    EXPECT_EQ(v.readout, "11111111");
    EXPECT_NEAR(v.readout_probability, 1.0, 1e-12);
}

TEST(DeutschJozsa, ExhaustiveSweepUpToThreeBits) {
    const std::map<int, std::pair<std::size_t, std::size_t>> counts = {{1, {2, 2}}, {2, {2, 6}}, {3, {2, 70}}};
    for (const auto &[n, expected] : counts) {
        const auto sweep = deutsch_jozsa_sweep(n);
        std::size_t constant = 0;
        std::size_t balanced = 0;
        for (const auto &e : sweep) {
            EXPECT_TRUE(e.correct());
            EXPECT_EQ(e.verdict.evaluations_used, 1);
            constant += e.expected == FunctionClass::Constant;
            balanced += e.expected == FunctionClass::Balanced;
        }
        EXPECT_EQ(constant, expected.first) << n;
        EXPECT_EQ(balanced, expected.second) << n;
    }
}

TEST(DeutschJozsa, PromiseFunctionsAreDistinctAndOrdered) {
    const auto fs = promise_functions(3);
    ASSERT_EQ(fs.size(), 72u);
    EXPECT_EQ(fs[0], FunctionValues(8, 0));
    EXPECT_EQ(fs[1], FunctionValues(8, 1));
    EXPECT_EQ(fs[2], (FunctionValues{0, 0, 0, 0, 1, 1, 1, 1}));
    EXPECT_TRUE(std::is_sorted(fs.begin() + 2, fs.end()));
    EXPECT_EQ(std::adjacent_find(fs.begin() + 2, fs.end()), fs.end());
}

// Minimax depth of the best adaptive deterministic decision tree that tells
// constant from balanced over the promise set, found by exhaustive search.
int adversary_query_depth(int n) {
    const auto functions = promise_functions(n);
    const std::size_t size = std::size_t{1} << n;
    std::unordered_map<std::string, int> memo;
    // assignment: '.' unknown, '0'/'1' answered
    std::function<int(const std::string &)> depth = [&](const std::string &assignment) -> int {
        if (auto it = memo.find(assignment); it != memo.end()) {
            return it->second;
        }
        bool saw_constant = false;
        bool saw_balanced = false;
        for (const auto &f : functions) {
            bool consistent = true;
            for (std::size_t x = 0; x < size && consistent; ++x) {
                consistent = assignment[x] == '.' || assignment[x] - '0' == f[x];
            }
            if (consistent) {
                (classify_function(f) == FunctionClass::Constant ? saw_constant : saw_balanced) = true;
            }
        }
        int best = 0;
        if (saw_constant && saw_balanced) {
            best = 1 << 20;
            for (std::size_t x = 0; x < size; ++x) {
                if (assignment[x] != '.') {
                    continue;
                }
                int worst = 0;
                for (char answer : {'0', '1'}) {
                    std::string next = assignment;
                    next[x] = answer;
                    worst = std::max(worst, depth(next));
                }
                best = std::min(best, 1 + worst);
            }
        }
        memo.emplace(assignment, best);
        return best;
    };
    return depth(std::string(size, '.'));
}

TEST(ClassicalQueryCount, MatchesAdversarySearch) {
    EXPECT_EQ(classical_query_count(1), 2u);
    EXPECT_EQ(classical_query_count(3), 5u);
    for (int n = 1; n <= 3; ++n) {
        EXPECT_EQ(static_cast<std::uint64_t>(adversary_query_depth(n)), classical_query_count(n)) << n;
    }
    EXPECT_THROW(classical_query_count(0), DomainError);
}

TEST(ClassicalQueryCount, FourFixedQueriesNeverDecideAtThreeBits) {
    const auto functions = promise_functions(3);
    for (unsigned mask = 0; mask < 256; ++mask) {
        if (std::popcount(mask) != 4) {
            continue;
        }
        // some answer pattern on these positions is consistent with both classes
        bool ambiguous = false;
        for (unsigned answers = 0; answers < 16 && !ambiguous; ++answers) {
            bool c = false;
            bool b = false;
            for (const auto &f : functions) {
                bool ok = true;
                int k = 0;
                for (int x = 0; x < 8 && ok; ++x) {
                    if (mask & (1u << x)) {
                        ok = f[static_cast<std::size_t>(x)] == static_cast<int>((answers >> k++) & 1u);
                    }
                }
                if (ok) {
                    (classify_function(f) == FunctionClass::Constant ? c : b) = true;
                }
            }
            ambiguous = c && b;
        }
        EXPECT_TRUE(ambiguous) << "mask " << mask;
    }
}

TEST(QueryAccounting, QuantumUsesOneClassicalTwo) {
    EXPECT_EQ(run_deutsch("10").verdict.evaluations_used, 1);
    EXPECT_EQ(classical_query_count(1), 2u);
}

TEST(RhoInvariance, BasisInputKeepsProjectorAtEveryStage) {
    const auto report = rho_invariance(run_deutsch("01").trace);
    EXPECT_TRUE(report.basis_input);
    EXPECT_TRUE(report.passed());
    EXPECT_LT(report.max_full_deviation, 1e-12);
    for (const auto &stage : report.stages) {
        EXPECT_NEAR(stage.rho(1, 1).real(), 1.0, 1e-12);
    }
}

TEST(RhoInvariance, SuperposedInputKeepsDiagonalOnly) {
    const auto report = rho_invariance(run_deutsch_superposed());
    EXPECT_FALSE(report.basis_input);
    EXPECT_TRUE(report.diagonal_invariant);
    EXPECT_FALSE(report.full_invariant);
    EXPECT_TRUE(report.passed());
    for (const auto &stage : report.stages) {
        for (double d : stage.rho.diagonal()) {
            EXPECT_NEAR(d, 0.25, 1e-12);
        }
    }
    EXPECT_NEAR(report.stages.front().rho(0, 1).real(), 0.25, 1e-12);
    EXPECT_NEAR(std::abs(report.stages.back().rho(0, 1)), 0.0, 1e-12);
    EXPECT_NEAR(report.max_offdiagonal_deviation, 0.5, 1e-12);
}

} // namespace
