#pragma once

// Exact dense linear algebra over labeled multi-qubit registers.
//
// Conventions used everywhere in the library (including JSON dumps):
//  * a RegisterLayout is an ordered list of named qubit groups;
//  * qubit position 0 is the high bit of the first register, positions run
//    through the registers in layout order;
//  * basis indices are big-endian: position 0 is the most significant bit.
//
// All value types are immutable once constructed; operations return new
// values and may be called concurrently.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oraclesim/error.hpp"
#include "oraclesim/kernels.hpp"

namespace oraclesim {

/// Equality tolerance for amplitudes, norms and probabilities.
inline constexpr double kAmpTolerance = 1e-12;
/// Tolerance for matrix-level checks (unitarity, positive semidefiniteness).
inline constexpr double kMatrixTolerance = 1e-10;

struct Register {
    std::string name;
    int width = 0;

    bool operator==(const Register &) const = default;
};

class RegisterLayout {
  public:
    /// Throws LayoutError on empty layouts, non-positive widths, duplicate
    /// names, or more than 30 qubits in total.
    explicit RegisterLayout(std::vector<Register> registers);

    /// [(B,2), (A,1), (V,1)]: problem setting, argument, value.
    static RegisterLayout deutsch();

    const std::vector<Register> &registers() const { return registers_; }
    int total_qubits() const { return total_qubits_; }
    std::size_t dimension() const { return std::size_t{1} << total_qubits_; }

    bool contains(std::string_view name) const;
    const Register &find(std::string_view name) const;
    /// Position of the register's most significant qubit.
    int offset(std::string_view name) const;
    /// Qubit positions of a register, most significant first.
    std::vector<int> qubits(std::string_view name) const;

    /// Compact text form, e.g. "B[2] A[1] V[1]".
    std::string describe() const;

    bool operator==(const RegisterLayout &) const = default;

  private:
    std::vector<Register> registers_;
    int total_qubits_ = 0;
};

/// Bitstring naming a computational basis vector, written in layout order.
class BasisLabel {
  public:
    /// Throws LayoutError unless `bits` is a non-empty string of '0'/'1'.
    explicit BasisLabel(std::string bits);
    static BasisLabel from_index(std::uint64_t index, int width);

    const std::string &bits() const { return bits_; }
    std::size_t size() const { return bits_.size(); }
    /// Big-endian integer value of the bits.
    std::uint64_t index() const;

    bool operator==(const BasisLabel &) const = default;
    auto operator<=>(const BasisLabel &) const = default;

  private:
    std::string bits_;
};

/// Row-major dense square complex matrix.
class SquareMatrix {
  public:
    SquareMatrix() = default;
    /// Zero matrix.
    explicit SquareMatrix(std::size_t dim);
    SquareMatrix(std::size_t dim, std::vector<Amp> entries);
    static SquareMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    Amp operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    std::span<const Amp> entries() const { return entries_; }

    SquareMatrix adjoint() const;
    SquareMatrix operator*(const SquareMatrix &rhs) const;
    /// Largest entrywise modulus of (this - rhs).
    double max_abs_diff(const SquareMatrix &rhs) const;

  private:
    std::size_t dim_ = 0;
    std::vector<Amp> entries_;
};

/// Dense unitary on 2^k-dimensional space; U^dagger U = I within 1e-10.
class Unitary {
  public:
    /// Throws UnitarityError if the matrix is not unitary or its dimension is
    /// not a power of two.
    explicit Unitary(SquareMatrix matrix);
    Unitary(std::size_t dim, std::vector<Amp> entries);

    const SquareMatrix &matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.dim(); }
    int num_qubits() const { return num_qubits_; }
    Amp operator()(std::size_t row, std::size_t col) const { return matrix_(row, col); }

    Unitary adjoint() const;
    Unitary operator*(const Unitary &rhs) const;

    /// max |(U^dagger U - I)_ij|
    static double unitarity_error(const SquareMatrix &m);

  private:
    SquareMatrix matrix_;
    int num_qubits_ = 0;
};

class StateVector {
  public:
    /// Throws LayoutError on a size mismatch and DegenerateStateError on
    /// non-finite amplitudes or a norm further than 1e-10 from 1.
    StateVector(RegisterLayout layout, std::vector<Amp> amps);

    const RegisterLayout &layout() const { return layout_; }
    std::span<const Amp> amplitudes() const { return amps_; }
    std::size_t dimension() const { return amps_.size(); }
    Amp operator[](std::size_t index) const { return amps_[index]; }
    Amp amplitude(const BasisLabel &label) const;
    double norm() const;

    /// The same state multiplied by exp(i*theta).
    StateVector with_global_phase(double theta) const;
    /// Largest amplitude-wise modulus of (this - other); layouts must match.
    double max_abs_diff(const StateVector &other) const;

  private:
    RegisterLayout layout_;
    std::vector<Amp> amps_;
};

/// Reduced state of one register.
class DensityMatrix {
  public:
    DensityMatrix(RegisterLayout layout, SquareMatrix matrix);

    const RegisterLayout &layout() const { return layout_; }
    const SquareMatrix &matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.dim(); }
    Amp operator()(std::size_t row, std::size_t col) const { return matrix_(row, col); }

    Amp trace() const;
    /// max |rho_ij - conj(rho_ji)|
    double hermiticity_error() const;
    double min_eigenvalue() const;
    /// Number of eigenvalues above `tolerance`.
    int rank(double tolerance = 1e-9) const;
    std::vector<double> diagonal() const;

  private:
    RegisterLayout layout_;
    SquareMatrix matrix_;
};

/// One unitary applied to an ordered list of qubit positions.
struct GateStep {
    Unitary unitary;
    std::vector<int> targets;
    std::string label;
};

using Circuit = std::vector<GateStep>;

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

StateVector basis_state(const RegisterLayout &layout, const BasisLabel &label);

/// Normalized linear combination of basis vectors. Repeated labels add.
/// Throws DegenerateStateError when the combination is the zero vector.
StateVector superpose(const RegisterLayout &layout,
                      std::span<const std::pair<Amp, BasisLabel>> terms);
StateVector superpose(const RegisterLayout &layout,
                      std::initializer_list<std::pair<Amp, BasisLabel>> terms);

/// Applies `u` to `targets` (targets[0] is the most significant bit of u's
/// index) tensored with the identity elsewhere.
StateVector apply_unitary(const StateVector &state, const Unitary &u,
                          std::span<const int> targets);
StateVector apply_unitary(const StateVector &state, const Unitary &u,
                          std::initializer_list<int> targets);
StateVector apply(const StateVector &state, const GateStep &step);
StateVector run_circuit(const StateVector &state, const Circuit &circuit);
/// Adjoint steps in reverse order.
Circuit inverse(const Circuit &circuit);

/// <s1|s2>, conjugate-linear in the first argument.
Amp inner_product(const StateVector &s1, const StateVector &s2);

/// Tr over every register except `keep` of |psi><psi|.
DensityMatrix partial_trace(const StateVector &state, std::string_view keep);

} // namespace oraclesim
