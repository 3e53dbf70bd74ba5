#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oraclesim/qcore.hpp"

namespace oraclesim {

/// Born-rule distribution of one register's outcomes. Every outcome of the
/// register is present, zero-probability ones included.
struct OutcomeDistribution {
    std::string register_name;
    std::map<std::string, double> probs;

    double probability(const std::string &outcome) const;
    /// Outcomes with probability above `threshold`.
    std::map<std::string, double> support(double threshold = kAmpTolerance) const;
    /// The outcome carrying all the probability (within 1e-12), if any.
    std::optional<std::string> point_mass() const;
};

struct MeasurementRecord {
    std::string register_name;
    std::string outcome;
    double probability = 0.0;
    StateVector post_state;
};

/// Identifier of the sampling algorithm; recorded in sample output so a run
/// can be reproduced.
inline constexpr std::string_view kSamplerId = "mt19937_64/inverse-cdf-53bit";

struct SampleResult {
    std::string register_name;
    std::uint64_t seed = 0;
    std::size_t shots = 0;
    std::string rng = std::string(kSamplerId);
    /// Only observed outcomes appear.
    std::map<std::string, std::size_t> counts;
};

OutcomeDistribution outcome_distribution(const StateVector &state, std::string_view register_name);

/// Projects `register_name` onto `outcome` and renormalizes.
/// Throws ImpossibleOutcomeError when the outcome has zero probability.
MeasurementRecord measure(const StateVector &state, std::string_view register_name,
                          std::string_view outcome);

/// Draws `shots` outcomes with a fresh mt19937_64 seeded by `seed`; each draw
/// maps a 53-bit uniform u in [0,1) to the first outcome (in index order)
/// whose cumulative probability exceeds u. Throws DomainError on zero shots.
SampleResult sample(const StateVector &state, std::string_view register_name, std::size_t shots,
                    std::uint64_t seed);

/// Joint distribution over two registers, keyed "<outcome1>|<outcome2>".
std::map<std::string, double> joint_distribution(const StateVector &state, std::string_view first,
                                                 std::string_view second);

// ---------------------------------------------------------------------------
// Deferred measurement

struct DeferredBranch {
    std::string outcome;
    /// Probability of the outcome in the initial state.
    double probability = 0.0;
    /// Joint (register, readout) distribution when the register is projected
    /// first, weighted by `probability`.
    std::map<std::string, double> projected_first;
    /// Joint distribution restricted to this outcome when the projection is
    /// taken after the circuit.
    std::map<std::string, double> projected_last;
    /// Readout distribution conditioned on this outcome, both orderings.
    std::map<std::string, double> readout_projected_first;
    std::map<std::string, double> readout_projected_last;
    double max_deviation = 0.0;
    bool agree = false;
};

struct DeferredReport {
    std::string register_name;
    std::string readout_name;
    std::vector<DeferredBranch> branches;
    double max_deviation = 0.0;
    bool agree = false;
};

/// Largest modulus of any matrix element of a step that connects different
/// basis states of `register_name`; zero for block-diagonal steps.
double block_offdiagonal_weight(const RegisterLayout &layout, const GateStep &step,
                                std::string_view register_name);

/// Compares projecting `register_name` before the circuit with projecting it
/// after the circuit, branch by branch, on the joint (register, readout)
/// distribution. Throws PreconditionError when a step mixes the register's
/// basis states.
DeferredReport deferred_equivalence(const Circuit &circuit, const StateVector &initial,
                                    std::string_view register_name, std::string_view readout_name);

} // namespace oraclesim
