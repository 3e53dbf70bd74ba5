#pragma once

// Drivers for the three-register Deutsch algorithm and its Deutsch-Jozsa
// generalization.
//
// Layout [(B,2), (A,1), (V,1)]: B holds the problem setting b (which of the
// four one-bit functions the oracle computes), A the function argument and
// readout, V the value register the oracle adds f_b(a) into. The pipeline is
// H on A, the oracle on (B,A,V), H on A.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oraclesim/gates.hpp"
#include "oraclesim/measure.hpp"
#include "oraclesim/qcore.hpp"

namespace oraclesim {

inline const std::array<std::string, 4> kSettingLabels = {"00", "01", "10", "11"};

inline constexpr std::string_view kStageInput = "input";
inline constexpr std::string_view kStageAfterHadamard = "after_H_A";
inline constexpr std::string_view kStageAfterOracle = "after_H_f";
inline constexpr std::string_view kStageFinal = "after_H_A_2";

struct TraceStage {
    std::string label;
    StateVector state;
};

/// The four pipeline states; steps[i] takes stages[i] to stages[i + 1].
struct StageTrace {
    std::vector<TraceStage> stages;
    Circuit steps;

    const StateVector &at(std::string_view label) const;
    const StateVector &input() const { return stages.front().state; }
    const StateVector &final_state() const { return stages.back().state; }
};

/// Max |re-applied step - recorded next stage| over the trace.
double trace_consistency_error(const StageTrace &trace);

struct Verdict {
    int outcome_bit = 0;
    FunctionClass classification = FunctionClass::Neither;
    int evaluations_used = 0;
    /// Most probable readout outcome and its probability.
    std::string readout;
    double readout_probability = 0.0;
};

struct DeutschOptions {
    /// Initial basis state of A. With 1 the readout bit is inverted
    /// (0 = balanced) and the verdict accounts for it.
    int initial_a = 0;
};

struct DeutschRun {
    StageTrace trace;
    Verdict verdict;
};

struct PipelineRun {
    StageTrace trace;
    int oracle_applications = 0;
};

/// H_A, oracle, H_A as a circuit on the Deutsch layout.
Circuit deutsch_circuit();

/// |b>_B |a0>_A (|0>_V - |1>_V)/sqrt2, reached from |b, a0, 1> by H on V.
StateVector prepare_input(std::string_view b, const DeutschOptions &options = {});
/// Uniform superposition over B, otherwise as prepare_input.
StateVector prepare_superposed_input(const DeutschOptions &options = {});

/// Runs the pipeline on any Deutsch-layout state, counting oracle calls.
PipelineRun run_pipeline(const StateVector &input);

/// Reads A on a final state. Throws StructureError when A is not a point mass.
Verdict read_verdict(const StateVector &final_state, const DeutschOptions &options,
                     int evaluations_used);

/// Fixed-setting run. Throws DomainError for labels outside 00/01/10/11.
DeutschRun run_deutsch(std::string_view b, const DeutschOptions &options = {});

StageTrace run_deutsch_superposed(const DeutschOptions &options = {});

/// Conditions the final state on each possible b and reads A.
/// Throws StructureError when A is not deterministic inside some b block.
std::map<std::string, FunctionClass> solution_correlation(const StateVector &final_state,
                                                          const DeutschOptions &options = {});

inline constexpr int kMaxDeutschJozsaBits = 8;

/// Layout [(X,n), (V,1)]; H on all qubits of |0...0,1>, oracle_fixed(f), H on
/// X, read X. All-zero readout means constant. Throws PromiseViolationError
/// for functions that are neither constant nor balanced, DomainError for
/// n outside 1..8.
Verdict run_deutsch_jozsa(std::span<const int> f);

/// The two constant functions followed by every balanced function of n bits,
/// balanced ones in lexicographic order of their value lists.
std::vector<FunctionValues> promise_functions(int n);

struct SweepEntry {
    FunctionValues function;
    FunctionClass expected = FunctionClass::Neither;
    Verdict verdict;
    bool correct() const {
        return verdict.classification == expected && verdict.evaluations_used == 1;
    }
};

/// run_deutsch_jozsa over promise_functions(n); entries are independent and
/// run in parallel.
std::vector<SweepEntry> deutsch_jozsa_sweep(int n);

/// Worst-case deterministic classical queries to tell constant from
/// balanced: 2^(n-1) + 1.
std::uint64_t classical_query_count(int n);

struct RhoStage {
    std::string label;
    DensityMatrix rho;
    double full_deviation = 0.0;
    double diagonal_deviation = 0.0;
    double offdiagonal_deviation = 0.0;
};

struct RhoInvarianceReport {
    std::string register_name;
    /// True when the register starts in a basis state; only then is the
    /// whole reduced matrix expected to stay fixed.
    bool basis_input = false;
    std::vector<RhoStage> stages;
    double max_full_deviation = 0.0;
    double max_diagonal_deviation = 0.0;
    double max_offdiagonal_deviation = 0.0;
    bool full_invariant = false;
    bool diagonal_invariant = false;

    bool passed() const { return diagonal_invariant && (!basis_input || full_invariant); }
};

/// Reduced density matrix of `register_name` at each stage, compared with
/// the input stage.
RhoInvarianceReport rho_invariance(const StageTrace &trace, std::string_view register_name = "B");

} // namespace oraclesim
