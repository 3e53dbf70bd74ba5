#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oraclesim/qcore.hpp"

namespace oraclesim {

/// Values f(0), ..., f(2^n - 1) of a boolean function, each 0 or 1.
using FunctionValues = std::vector<int>;

enum class FunctionClass { Constant, Balanced, Neither };

std::string_view to_string(FunctionClass c);

/// A family of boolean functions of `arg_bits` arguments, indexed by
/// setting labels (bitstrings of a common width).
class FunctionTable {
  public:
    /// Throws FormatError when value lists disagree in length, have a length
    /// that is not a power of two, hold non-binary values, or when labels
    /// are not bitstrings of one width.
    explicit FunctionTable(std::map<std::string, FunctionValues> settings);

    /// f_00 = [0,0], f_01 = [0,1], f_10 = [1,0], f_11 = [1,1].
    static FunctionTable deutsch();

    int arg_bits() const { return arg_bits_; }
    int setting_bits() const { return setting_bits_; }
    const std::map<std::string, FunctionValues> &settings() const { return settings_; }
    const FunctionValues &values(std::string_view label) const;
    bool complete() const { return settings_.size() == (std::size_t{1} << setting_bits_); }

  private:
    std::map<std::string, FunctionValues> settings_;
    int arg_bits_ = 0;
    int setting_bits_ = 0;
};

/// Parses the line format `<label>: <comma-separated 0/1 values>`.
/// Blank lines and lines starting with '#' are ignored. Throws FormatError.
FunctionTable parse_function_table(std::string_view text);

Unitary hadamard();

/// Permutation |b, a, v> -> |b, a, v xor f_b(a)> on (setting, argument,
/// value) qubits. Throws IncompleteOracleError unless every setting label
/// of the table's width is present.
Unitary oracle_with_setting(const FunctionTable &table);

/// Permutation |a, v> -> |a, v xor f(a)>. Throws DomainError on non-binary
/// values or a length that is not a power of two.
Unitary oracle_fixed(std::span<const int> f);

/// Constant iff all values equal, Balanced iff exactly half are 1.
/// Throws DomainError on an empty list or a length that is not a power of two.
FunctionClass classify_function(std::span<const int> values);

/// Haar-random unitary (QR of a complex Gaussian matrix with phase fix).
Unitary random_unitary(std::size_t dim, std::mt19937_64 &rng);

/// Direct sum of the blocks; block i acts on the subspace whose leading
/// control bits spell i.
Unitary block_diagonal(std::span<const Unitary> blocks);

/// Applies an oracle and counts how many times it was applied. One instance
/// belongs to one run.
class CountingOracle {
  public:
    CountingOracle(Unitary u, std::vector<int> targets)
        : unitary_(std::move(u)), targets_(std::move(targets)) {}

    StateVector apply(const StateVector &state) {
        ++applications_;
        return apply_unitary(state, unitary_, targets_);
    }

    int applications() const { return applications_; }
    const Unitary &unitary() const { return unitary_; }
    const std::vector<int> &targets() const { return targets_; }

  private:
    Unitary unitary_;
    std::vector<int> targets_;
    int applications_ = 0;
};

} // namespace oraclesim
