#include "oraclesim/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oraclesim::kernels {

namespace {

using Index = std::uint64_t;

int bit_shift(int num_qubits, int qubit) { return num_qubits - 1 - qubit; }

// Basis-index offset contributed by the m-bit value `j` spread over `qubits`
// (qubits[0] receives the most significant bit of j).
Index spread(Index j, int num_qubits, std::span<const int> qubits) {
    const auto m = qubits.size();
    Index offset = 0;
    for (std::size_t t = 0; t < m; ++t) {
        if ((j >> (m - 1 - t)) & 1u) {
            offset |= Index{1} << bit_shift(num_qubits, qubits[t]);
        }
    }
    return offset;
}

Index gather(Index index, int num_qubits, std::span<const int> qubits) {
    Index j = 0;
    for (int q : qubits) {
        j = (j << 1) | ((index >> bit_shift(num_qubits, q)) & 1u);
    }
    return j;
}

// Inserts a zero bit at each of the ascending positions in `sorted_shifts`.
Index insert_zero_bits(Index g, std::span<const int> sorted_shifts) {
    for (int s : sorted_shifts) {
        const Index low = g & ((Index{1} << s) - 1);
        g = ((g >> s) << (s + 1)) | low;
    }
    return g;
}

struct GateGeometry {
    std::vector<Index> offsets;
    std::vector<int> sorted_shifts;
    Index groups = 0;
};

GateGeometry make_geometry(int num_qubits, std::span<const int> targets) {
    GateGeometry geo;
    const Index block = Index{1} << targets.size();
    geo.offsets.resize(block);
    for (Index j = 0; j < block; ++j) {
        geo.offsets[j] = spread(j, num_qubits, targets);
    }
    for (int q : targets) {
        geo.sorted_shifts.push_back(bit_shift(num_qubits, q));
    }
    std::sort(geo.sorted_shifts.begin(), geo.sorted_shifts.end());
    geo.groups = Index{1} << (num_qubits - static_cast<int>(targets.size()));
    return geo;
}

inline void apply_group(Amp *amps, Index group, const GateGeometry &geo,
                        std::span<const Amp> matrix, std::vector<Amp> &scratch) {
    const Index base = insert_zero_bits(group, geo.sorted_shifts);
    const std::size_t block = geo.offsets.size();
    for (std::size_t c = 0; c < block; ++c) {
        scratch[c] = amps[base | geo.offsets[c]];
    }
    for (std::size_t r = 0; r < block; ++r) {
        const Amp *row = matrix.data() + r * block;
        Amp acc{0.0, 0.0};
        for (std::size_t c = 0; c < block; ++c) {
            acc += row[c] * scratch[c];
        }
        amps[base | geo.offsets[r]] = acc;
    }
}

} // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void apply_gate(std::span<Amp> amps, int num_qubits, std::span<const Amp> matrix,
                std::span<const int> targets) {
    const GateGeometry geo = make_geometry(num_qubits, targets);
    const auto groups = static_cast<std::int64_t>(geo.groups);
    Amp *data = amps.data();
#pragma omp parallel if (geo.groups >= kMinParallelWork)
    {
        std::vector<Amp> scratch(geo.offsets.size());
#pragma omp for schedule(static)
        for (std::int64_t g = 0; g < groups; ++g) {
            apply_group(data, static_cast<Index>(g), geo, matrix, scratch);
        }
    }
}

void apply_gate_serial(std::span<Amp> amps, int num_qubits, std::span<const Amp> matrix,
                       std::span<const int> targets) {
    const GateGeometry geo = make_geometry(num_qubits, targets);
    std::vector<Amp> scratch(geo.offsets.size());
    for (Index g = 0; g < geo.groups; ++g) {
        apply_group(amps.data(), g, geo, matrix, scratch);
    }
}

void marginal_probabilities(std::span<const Amp> amps, int num_qubits,
                            std::span<const int> qubits, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const auto dim = static_cast<std::int64_t>(amps.size());
    const std::size_t outcomes = out.size();
    double *acc = out.data();
    const Amp *data = amps.data();
#pragma omp parallel for reduction(+ : acc[:outcomes]) if (amps.size() >= kMinParallelWork)
    for (std::int64_t i = 0; i < dim; ++i) {
        acc[gather(static_cast<Index>(i), num_qubits, qubits)] += std::norm(data[i]);
    }
}

void marginal_probabilities_serial(std::span<const Amp> amps, int num_qubits,
                                   std::span<const int> qubits, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (Index i = 0; i < amps.size(); ++i) {
        out[gather(i, num_qubits, qubits)] += std::norm(amps[i]);
    }
}

namespace {

struct TraceGeometry {
    std::vector<Index> keep_offsets;
    std::vector<int> keep_shifts;
    Index rest = 0;
};

TraceGeometry make_trace_geometry(int num_qubits, std::span<const int> keep) {
    TraceGeometry geo;
    const Index block = Index{1} << keep.size();
    geo.keep_offsets.resize(block);
    for (Index j = 0; j < block; ++j) {
        geo.keep_offsets[j] = spread(j, num_qubits, keep);
    }
    for (int q : keep) {
        geo.keep_shifts.push_back(bit_shift(num_qubits, q));
    }
    std::sort(geo.keep_shifts.begin(), geo.keep_shifts.end());
    geo.rest = Index{1} << (num_qubits - static_cast<int>(keep.size()));
    return geo;
}

Amp trace_entry(const Amp *amps, const TraceGeometry &geo, Index r, Index c) {
    Amp acc{0.0, 0.0};
    for (Index g = 0; g < geo.rest; ++g) {
        const Index base = insert_zero_bits(g, geo.keep_shifts);
        acc += amps[base | geo.keep_offsets[r]] * std::conj(amps[base | geo.keep_offsets[c]]);
    }
    return acc;
}

} // namespace

void reduced_density(std::span<const Amp> amps, int num_qubits, std::span<const int> keep,
                     std::span<Amp> out) {
    const TraceGeometry geo = make_trace_geometry(num_qubits, keep);
    const auto block = static_cast<std::int64_t>(geo.keep_offsets.size());
    const Amp *data = amps.data();
#pragma omp parallel for collapse(2) schedule(static) if (amps.size() >= kMinParallelWork)
    for (std::int64_t r = 0; r < block; ++r) {
        for (std::int64_t c = 0; c < block; ++c) {
            out[r * block + c] = trace_entry(data, geo, static_cast<Index>(r), static_cast<Index>(c));
        }
    }
}

void reduced_density_serial(std::span<const Amp> amps, int num_qubits,
                            std::span<const int> keep, std::span<Amp> out) {
    const TraceGeometry geo = make_trace_geometry(num_qubits, keep);
    const Index block = geo.keep_offsets.size();
    for (Index r = 0; r < block; ++r) {
        for (Index c = 0; c < block; ++c) {
            out[r * block + c] = trace_entry(amps.data(), geo, r, c);
        }
    }
}

double squared_norm(std::span<const Amp> amps) {
    const auto dim = static_cast<std::int64_t>(amps.size());
    const Amp *data = amps.data();
    double total = 0.0;
#pragma omp parallel for reduction(+ : total) if (amps.size() >= kMinParallelWork)
    for (std::int64_t i = 0; i < dim; ++i) {
        total += std::norm(data[i]);
    }
    return total;
}

double squared_norm_serial(std::span<const Amp> amps) {
    double total = 0.0;
    for (const Amp &a : amps) {
        total += std::norm(a);
    }
    return total;
}

} // namespace oraclesim::kernels
