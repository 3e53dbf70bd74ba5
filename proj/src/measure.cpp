#include "oraclesim/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace oraclesim {

namespace {

// Below this an outcome is treated as impossible; its amplitudes are pure
// round-off and renormalizing them would produce noise.
constexpr double kImpossibleProbability = 1e-20;

std::vector<double> marginal(const StateVector &state, const std::vector<int> &qubits) {
    std::vector<double> probs(std::size_t{1} << qubits.size());
    kernels::marginal_probabilities(state.amplitudes(), state.layout().total_qubits(), qubits, probs);
    return probs;
}

std::string label_of(std::size_t index, int width) {
    return BasisLabel::from_index(index, width).bits();
}

std::string joint_key(const std::string &first, const std::string &second) {
    return first + "|" + second;
}

} // namespace

double OutcomeDistribution::probability(const std::string &outcome) const {
    const auto it = probs.find(outcome);
    if (it == probs.end()) {
        throw LayoutError("'" + outcome + "' is not an outcome of register " + register_name);
    }
    return it->second;
}

std::map<std::string, double> OutcomeDistribution::support(double threshold) const {
    std::map<std::string, double> out;
    for (const auto &[k, p] : probs) {
        if (p > threshold) {
            out.emplace(k, p);
        }
    }
    return out;
}

std::optional<std::string> OutcomeDistribution::point_mass() const {
    for (const auto &[k, p] : probs) {
        if (std::abs(p - 1.0) <= kAmpTolerance) {
            return k;
        }
    }
    return std::nullopt;
}

OutcomeDistribution outcome_distribution(const StateVector &state, std::string_view register_name) {
    const auto &layout = state.layout();
    const int width = layout.find(register_name).width;
    const auto probs = marginal(state, layout.qubits(register_name));
    OutcomeDistribution dist{std::string(register_name), {}};
    for (std::size_t k = 0; k < probs.size(); ++k) {
        dist.probs.emplace(label_of(k, width), probs[k]);
    }
    return dist;
}

MeasurementRecord measure(const StateVector &state, std::string_view register_name,
                          std::string_view outcome) {
    const auto &layout = state.layout();
    const Register &reg = layout.find(register_name);
    const BasisLabel wanted{std::string(outcome)};
    if (wanted.size() != static_cast<std::size_t>(reg.width)) {
        throw LayoutError("outcome '" + wanted.bits() + "' does not match the width of register " +
                          reg.name);
    }
    const int n = layout.total_qubits();
    const int shift = n - layout.offset(register_name) - reg.width;
    const std::uint64_t mask = (std::uint64_t{1} << reg.width) - 1;
    const std::uint64_t target = wanted.index();

    std::vector<Amp> amps(state.dimension());
    double prob = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (((i >> shift) & mask) == target) {
            amps[i] = state[i];
            prob += std::norm(state[i]);
        }
    }
    if (prob <= kImpossibleProbability) {
        throw ImpossibleOutcomeError("outcome " + wanted.bits() + " of register " + reg.name +
                                     " has zero probability");
    }
    const double scale = 1.0 / std::sqrt(prob);
    for (Amp &a : amps) {
        a *= scale;
    }
    return {reg.name, wanted.bits(), std::min(prob, 1.0), StateVector(layout, std::move(amps))};
}

SampleResult sample(const StateVector &state, std::string_view register_name, std::size_t shots,
                    std::uint64_t seed) {
    if (shots == 0) {
        throw DomainError("sample needs at least one shot");
    }
    const auto &layout = state.layout();
    const int width = layout.find(register_name).width;
    const auto probs = marginal(state, layout.qubits(register_name));

    std::vector<double> cumulative(probs.size());
    double running = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        running += probs[k];
        cumulative[k] = running;
    }
    const double total = running;

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> counts(probs.size());
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const auto k = static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(it - cumulative.begin(), static_cast<std::ptrdiff_t>(probs.size()) - 1));
        ++counts[k];
    }

    SampleResult result;
    result.register_name = std::string(register_name);
    result.seed = seed;
    result.shots = shots;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] > 0) {
            result.counts.emplace(label_of(k, width), counts[k]);
        }
    }
    return result;
}

std::map<std::string, double> joint_distribution(const StateVector &state, std::string_view first,
                                                 std::string_view second) {
    const auto &layout = state.layout();
    const int w1 = layout.find(first).width;
    const int w2 = layout.find(second).width;
    if (first == second) {
        throw LayoutError("joint distribution needs two different registers");
    }
    auto qubits = layout.qubits(first);
    const auto q2 = layout.qubits(second);
    qubits.insert(qubits.end(), q2.begin(), q2.end());
    const auto probs = marginal(state, qubits);
    std::map<std::string, double> out;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        const std::string bits = label_of(k, w1 + w2);
        out.emplace(joint_key(bits.substr(0, static_cast<std::size_t>(w1)),
                              bits.substr(static_cast<std::size_t>(w1))),
                    probs[k]);
    }
    return out;
}

double block_offdiagonal_weight(const RegisterLayout &layout, const GateStep &step,
                                std::string_view register_name) {
    const auto reg_qubits = layout.qubits(register_name);
    const std::size_t k = step.targets.size();
    std::uint64_t mask = 0;
    for (std::size_t t = 0; t < k; ++t) {
        if (std::find(reg_qubits.begin(), reg_qubits.end(), step.targets[t]) != reg_qubits.end()) {
            mask |= std::uint64_t{1} << (k - 1 - t);
        }
    }
    if (mask == 0) {
        return 0.0;
    }
    double worst = 0.0;
    const std::size_t dim = step.unitary.dim();
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if (((r ^ c) & mask) != 0) {
                worst = std::max(worst, std::abs(step.unitary(r, c)));
            }
        }
    }
    return worst;
}

DeferredReport deferred_equivalence(const Circuit &circuit, const StateVector &initial,
                                    std::string_view register_name, std::string_view readout_name) {
    const auto &layout = initial.layout();
    const int width = layout.find(register_name).width;
    layout.find(readout_name);
    if (register_name == readout_name) {
        throw LayoutError("deferred register and readout register must differ");
    }
    for (const auto &step : circuit) {
        const double w = block_offdiagonal_weight(layout, step, register_name);
        if (w > kAmpTolerance) {
            throw PreconditionError("step '" + step.label + "' mixes basis states of register " +
                                    std::string(register_name) + " (off-block weight " +
                                    std::to_string(w) + ")");
        }
    }

    const StateVector final_unprojected = run_circuit(initial, circuit);
    const auto last = joint_distribution(final_unprojected, register_name, readout_name);
    const auto initial_dist = outcome_distribution(initial, register_name);

    DeferredReport report;
    report.register_name = std::string(register_name);
    report.readout_name = std::string(readout_name);
    report.agree = true;

    for (std::size_t b = 0; b < (std::size_t{1} << width); ++b) {
        DeferredBranch branch;
        branch.outcome = label_of(b, width);
        branch.probability = initial_dist.probability(branch.outcome);
        const std::string prefix = branch.outcome + "|";

        for (const auto &[key, p] : last) {
            branch.projected_first[key] = 0.0;
            branch.projected_last[key] = key.starts_with(prefix) ? p : 0.0;
        }
        if (branch.probability > kImpossibleProbability) {
            const auto projected = measure(initial, register_name, branch.outcome).post_state;
            const auto first = joint_distribution(run_circuit(projected, circuit), register_name,
                                                  readout_name);
            for (const auto &[key, p] : first) {
                branch.projected_first[key] = branch.probability * p;
                if (key.starts_with(prefix)) {
                    const std::string readout = key.substr(prefix.size());
                    branch.readout_projected_first[readout] = p;
                    branch.readout_projected_last[readout] = branch.projected_last[key] / branch.probability;
                }
            }
        }
        for (const auto &[key, p] : branch.projected_first) {
            branch.max_deviation = std::max(branch.max_deviation, std::abs(p - branch.projected_last[key]));
        }
        for (const auto &[readout, p] : branch.readout_projected_first) {
            branch.max_deviation =
                std::max(branch.max_deviation, std::abs(p - branch.readout_projected_last[readout]));
        }
        branch.agree = branch.max_deviation <= kAmpTolerance;
        report.max_deviation = std::max(report.max_deviation, branch.max_deviation);
        report.agree = report.agree && branch.agree;
        report.branches.push_back(std::move(branch));
    }
    return report;
}

} // namespace oraclesim
