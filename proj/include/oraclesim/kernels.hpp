#pragma once

// Dense amplitude kernels.
//
// Every kernel comes in two flavours: the default one is OpenMP-parallel over
// independent amplitude groups, the `_serial` one is a plain loop kept as the
// reference the parallel version is tested and benchmarked against.
//
// Qubit positions follow the layout convention used throughout the library:
// position 0 is the most significant bit of the basis index.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace oraclesim {

using Amp = std::complex<double>;

namespace kernels {

/// Below this many independent work items the parallel kernels run on the
/// calling thread; thread start-up dominates for the small registers the
/// drivers use.
inline constexpr std::size_t kMinParallelWork = 1u << 10;

/// Number of OpenMP threads the parallel kernels may use (1 without OpenMP).
int max_threads();

/// Applies a 2^k x 2^k row-major `matrix` to the qubits at `targets`
/// (targets[0] is the most significant bit of the matrix index).
/// Preconditions (distinct, in-range targets, matching sizes) are the
/// caller's responsibility.
void apply_gate(std::span<Amp> amps, int num_qubits, std::span<const Amp> matrix,
                std::span<const int> targets);
void apply_gate_serial(std::span<Amp> amps, int num_qubits, std::span<const Amp> matrix,
                       std::span<const int> targets);

/// Born-rule marginal over `qubits`: out[j] = sum of |amp|^2 over basis
/// indices whose bits at `qubits` spell j (qubits[0] most significant).
/// `out` must hold 2^qubits.size() entries.
void marginal_probabilities(std::span<const Amp> amps, int num_qubits,
                            std::span<const int> qubits, std::span<double> out);
void marginal_probabilities_serial(std::span<const Amp> amps, int num_qubits,
                                   std::span<const int> qubits, std::span<double> out);

/// Reduced density matrix of the pure state on `keep` (row-major, 2^k x 2^k).
void reduced_density(std::span<const Amp> amps, int num_qubits, std::span<const int> keep,
                     std::span<Amp> out);
void reduced_density_serial(std::span<const Amp> amps, int num_qubits,
                            std::span<const int> keep, std::span<Amp> out);

double squared_norm(std::span<const Amp> amps);
double squared_norm_serial(std::span<const Amp> amps);

} // namespace kernels
} // namespace oraclesim
