#include "oraclesim/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Dense>

namespace oraclesim {

namespace {

constexpr int kMaxQubits = 30;
constexpr double kStateNormTolerance = 1e-10;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
    int k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

} // namespace

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(std::vector<Register> registers) : registers_(std::move(registers)) {
    if (registers_.empty()) {
        throw LayoutError("register layout must contain at least one register");
    }
    std::set<std::string> names;
    for (const auto &reg : registers_) {
        if (reg.name.empty()) {
            throw LayoutError("register names must be non-empty");
        }
        if (reg.width < 1) {
            throw LayoutError("register '" + reg.name + "' must be at least one qubit wide");
        }
        if (!names.insert(reg.name).second) {
            throw LayoutError("duplicate register name '" + reg.name + "'");
        }
        total_qubits_ += reg.width;
    }
    if (total_qubits_ > kMaxQubits) {
        throw LayoutError("layout exceeds " + std::to_string(kMaxQubits) + " qubits");
    }
}

RegisterLayout RegisterLayout::deutsch() { return RegisterLayout({{"B", 2}, {"A", 1}, {"V", 1}}); }

bool RegisterLayout::contains(std::string_view name) const {
    return std::any_of(registers_.begin(), registers_.end(),
                       [&](const Register &r) { return r.name == name; });
}

const Register &RegisterLayout::find(std::string_view name) const {
    for (const auto &reg : registers_) {
        if (reg.name == name) {
            return reg;
        }
    }
    throw LayoutError("unknown register '" + std::string(name) + "' in layout " + describe());
}

int RegisterLayout::offset(std::string_view name) const {
    int pos = 0;
    for (const auto &reg : registers_) {
        if (reg.name == name) {
            return pos;
        }
        pos += reg.width;
    }
    throw LayoutError("unknown register '" + std::string(name) + "' in layout " + describe());
}

std::vector<int> RegisterLayout::qubits(std::string_view name) const {
    const int first = offset(name);
    std::vector<int> out(static_cast<std::size_t>(find(name).width));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = first + static_cast<int>(i);
    }
    return out;
}

std::string RegisterLayout::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < registers_.size(); ++i) {
        if (i) {
            os << ' ';
        }
        os << registers_[i].name << '[' << registers_[i].width << ']';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// BasisLabel

BasisLabel::BasisLabel(std::string bits) : bits_(std::move(bits)) {
    if (bits_.empty() || bits_.size() > 63) {
        throw LayoutError("basis label must have between 1 and 63 bits");
    }
    if (bits_.find_first_not_of("01") != std::string::npos) {
        throw LayoutError("basis label '" + bits_ + "' contains characters other than 0/1");
    }
}

BasisLabel BasisLabel::from_index(std::uint64_t index, int width) {
    if (width < 1 || width > 63 || (index >> width) != 0) {
        throw LayoutError("index " + std::to_string(index) + " does not fit in " +
                          std::to_string(width) + " bits");
    }
    std::string bits(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        if ((index >> (width - 1 - i)) & 1u) {
            bits[static_cast<std::size_t>(i)] = '1';
        }
    }
    return BasisLabel(std::move(bits));
}

std::uint64_t BasisLabel::index() const {
    std::uint64_t v = 0;
    for (char c : bits_) {
        v = (v << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return v;
}

// ---------------------------------------------------------------------------
// SquareMatrix / Unitary

SquareMatrix::SquareMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

SquareMatrix::SquareMatrix(std::size_t dim, std::vector<Amp> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw LayoutError("matrix of dimension " + std::to_string(dim_) + " needs " +
                          std::to_string(dim_ * dim_) + " entries, got " +
                          std::to_string(entries_.size()));
    }
}

SquareMatrix SquareMatrix::identity(std::size_t dim) {
    SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m.entries_[i * dim + i] = 1.0;
    }
    return m;
}

SquareMatrix SquareMatrix::adjoint() const {
    SquareMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out.entries_[c * dim_ + r] = std::conj(entries_[r * dim_ + c]);
        }
    }
    return out;
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix &rhs) const {
    if (rhs.dim_ != dim_) {
        throw LayoutError("matrix dimensions differ");
    }
    SquareMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const Amp a = entries_[r * dim_ + k];
            if (a == Amp{}) {
                continue;
            }
            for (std::size_t c = 0; c < dim_; ++c) {
                out.entries_[r * dim_ + c] += a * rhs.entries_[k * dim_ + c];
            }
        }
    }
    return out;
}

double SquareMatrix::max_abs_diff(const SquareMatrix &rhs) const {
    if (rhs.dim_ != dim_) {
        throw LayoutError("matrix dimensions differ");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        worst = std::max(worst, std::abs(entries_[i] - rhs.entries_[i]));
    }
    return worst;
}

double Unitary::unitarity_error(const SquareMatrix &m) {
    return (m.adjoint() * m).max_abs_diff(SquareMatrix::identity(m.dim()));
}

Unitary::Unitary(SquareMatrix matrix) : matrix_(std::move(matrix)) {
    if (!is_power_of_two(matrix_.dim())) {
        throw UnitarityError("unitary dimension " + std::to_string(matrix_.dim()) +
                             " is not a power of two");
    }
    for (const Amp &a : matrix_.entries()) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw UnitarityError("unitary has non-finite entries");
        }
    }
    const double err = unitarity_error(matrix_);
    if (err > kMatrixTolerance) {
        throw UnitarityError("matrix is not unitary (max |U^dagger U - I| = " + std::to_string(err) +
                             ")");
    }
    num_qubits_ = log2_exact(matrix_.dim());
}

Unitary::Unitary(std::size_t dim, std::vector<Amp> entries)
    : Unitary(SquareMatrix(dim, std::move(entries))) {}

Unitary Unitary::adjoint() const { return Unitary(matrix_.adjoint()); }

Unitary Unitary::operator*(const Unitary &rhs) const { return Unitary(matrix_ * rhs.matrix_); }

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(RegisterLayout layout, std::vector<Amp> amps)
    : layout_(std::move(layout)), amps_(std::move(amps)) {
    if (amps_.size() != layout_.dimension()) {
        throw LayoutError("state of layout " + layout_.describe() + " needs " +
                          std::to_string(layout_.dimension()) + " amplitudes, got " +
                          std::to_string(amps_.size()));
    }
    for (const Amp &a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw DegenerateStateError("state has non-finite amplitudes");
        }
    }
    const double n = norm();
    if (std::abs(n - 1.0) > kStateNormTolerance) {
        throw DegenerateStateError("state is not normalized (norm " + std::to_string(n) + ")");
    }
}

Amp StateVector::amplitude(const BasisLabel &label) const {
    if (label.size() != static_cast<std::size_t>(layout_.total_qubits())) {
        throw LayoutError("label '" + label.bits() + "' does not match layout " + layout_.describe());
    }
    return amps_[label.index()];
}

double StateVector::norm() const { return std::sqrt(kernels::squared_norm(amps_)); }

StateVector StateVector::with_global_phase(double theta) const {
    const Amp phase = std::polar(1.0, theta);
    std::vector<Amp> out(amps_);
    for (Amp &a : out) {
        a *= phase;
    }
    return StateVector(layout_, std::move(out));
}

double StateVector::max_abs_diff(const StateVector &other) const {
    if (!(other.layout_ == layout_)) {
        throw LayoutError("states have different layouts");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        worst = std::max(worst, std::abs(amps_[i] - other.amps_[i]));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(RegisterLayout layout, SquareMatrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    if (matrix_.dim() != layout_.dimension()) {
        throw LayoutError("density matrix dimension does not match layout " + layout_.describe());
    }
}

Amp DensityMatrix::trace() const {
    Amp t{};
    for (std::size_t i = 0; i < dim(); ++i) {
        t += matrix_(i, i);
    }
    return t;
}

double DensityMatrix::hermiticity_error() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim(); ++r) {
        for (std::size_t c = 0; c < dim(); ++c) {
            worst = std::max(worst, std::abs(matrix_(r, c) - std::conj(matrix_(c, r))));
        }
    }
    return worst;
}

namespace {

Eigen::VectorXd hermitian_eigenvalues(const SquareMatrix &m) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXcd e(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            // symmetrize so round-off asymmetry does not leak into the solver
            e(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

} // namespace

double DensityMatrix::min_eigenvalue() const { return hermitian_eigenvalues(matrix_).minCoeff(); }

int DensityMatrix::rank(double tolerance) const {
    const Eigen::VectorXd ev = hermitian_eigenvalues(matrix_);
    return static_cast<int>((ev.array() > tolerance).count());
}

std::vector<double> DensityMatrix::diagonal() const {
    std::vector<double> d(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        d[i] = matrix_(i, i).real();
    }
    return d;
}

// ---------------------------------------------------------------------------
// Operations

StateVector basis_state(const RegisterLayout &layout, const BasisLabel &label) {
    if (label.size() != static_cast<std::size_t>(layout.total_qubits())) {
        throw LayoutError("label '" + label.bits() + "' has " + std::to_string(label.size()) +
                          " bits, layout " + layout.describe() + " has " +
                          std::to_string(layout.total_qubits()));
    }
    std::vector<Amp> amps(layout.dimension());
    amps[label.index()] = 1.0;
    return StateVector(layout, std::move(amps));
}

StateVector superpose(const RegisterLayout &layout,
                      std::span<const std::pair<Amp, BasisLabel>> terms) {
    std::vector<Amp> amps(layout.dimension());
    for (const auto &[weight, label] : terms) {
        if (label.size() != static_cast<std::size_t>(layout.total_qubits())) {
            throw LayoutError("label '" + label.bits() + "' does not match layout " +
                              layout.describe());
        }
        if (!std::isfinite(weight.real()) || !std::isfinite(weight.imag())) {
            throw DegenerateStateError("superposition weight is not finite");
        }
        amps[label.index()] += weight;
    }
    const double n = std::sqrt(kernels::squared_norm_serial(amps));
    if (n == 0.0) {
        throw DegenerateStateError("superposition has zero norm");
    }
    if (n != 1.0) {
        for (Amp &a : amps) {
            a /= n;
        }
    }
    return StateVector(layout, std::move(amps));
}

StateVector superpose(const RegisterLayout &layout,
                      std::initializer_list<std::pair<Amp, BasisLabel>> terms) {
    return superpose(layout, std::span<const std::pair<Amp, BasisLabel>>(terms.begin(), terms.size()));
}

StateVector apply_unitary(const StateVector &state, const Unitary &u, std::span<const int> targets) {
    const int n = state.layout().total_qubits();
    if (targets.empty()) {
        throw LayoutError("apply_unitary needs at least one target");
    }
    if (u.dim() != (std::size_t{1} << targets.size())) {
        throw LayoutError("unitary of dimension " + std::to_string(u.dim()) + " cannot act on " +
                          std::to_string(targets.size()) + " targets");
    }
    std::set<int> seen;
    for (int t : targets) {
        if (t < 0 || t >= n) {
            throw LayoutError("target qubit " + std::to_string(t) + " outside 0.." +
                              std::to_string(n - 1));
        }
        if (!seen.insert(t).second) {
            throw LayoutError("target qubit " + std::to_string(t) + " repeated");
        }
    }
    std::vector<Amp> amps(state.amplitudes().begin(), state.amplitudes().end());
    kernels::apply_gate(amps, n, u.matrix().entries(), targets);
    return StateVector(state.layout(), std::move(amps));
}

StateVector apply_unitary(const StateVector &state, const Unitary &u, std::initializer_list<int> targets) {
    return apply_unitary(state, u, std::span<const int>(targets.begin(), targets.size()));
}

StateVector apply(const StateVector &state, const GateStep &step) {
    return apply_unitary(state, step.unitary, step.targets);
}

StateVector run_circuit(const StateVector &state, const Circuit &circuit) {
    StateVector current = state;
    for (const auto &step : circuit) {
        current = apply(current, step);
    }
    return current;
}

Circuit inverse(const Circuit &circuit) {
    Circuit out;
    out.reserve(circuit.size());
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
        out.push_back({it->unitary.adjoint(), it->targets, it->label + "^dagger"});
    }
    return out;
}

Amp inner_product(const StateVector &s1, const StateVector &s2) {
    if (!(s1.layout() == s2.layout())) {
        throw LayoutError("inner product of states with layouts " + s1.layout().describe() +
                          " and " + s2.layout().describe());
    }
    Amp acc{};
    for (std::size_t i = 0; i < s1.dimension(); ++i) {
        acc += std::conj(s1[i]) * s2[i];
    }
    return acc;
}

DensityMatrix partial_trace(const StateVector &state, std::string_view keep) {
    const auto &layout = state.layout();
    const Register &reg = layout.find(keep);
    const std::vector<int> qubits = layout.qubits(keep);
    const std::size_t block = std::size_t{1} << reg.width;
    std::vector<Amp> rho(block * block);
    kernels::reduced_density(state.amplitudes(), layout.total_qubits(), qubits, rho);
    return DensityMatrix(RegisterLayout({reg}), SquareMatrix(block, std::move(rho)));
}

} // namespace oraclesim
