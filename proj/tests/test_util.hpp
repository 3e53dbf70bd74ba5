#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "oraclesim/qcore.hpp"

namespace test_util {

using oraclesim::Amp;

inline std::vector<Amp> random_amps(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Amp> amps(dim);
    double n = 0.0;
    for (auto &a : amps) {
        a = Amp(g(rng), g(rng));
        n += std::norm(a);
    }
    n = std::sqrt(n);
    for (auto &a : amps) {
        a /= n;
    }
    return amps;
}

inline oraclesim::StateVector random_state(const oraclesim::RegisterLayout &layout, std::mt19937_64 &rng) {
    return {layout, random_amps(layout.dimension(), rng)};
}

/// Explicit 2^n x 2^n operator of `u` acting on `targets`: entry (i, j) is
/// u(sub_i, sub_j) when i and j agree off the targets, else 0.
inline std::vector<Amp> embed(const oraclesim::Unitary &u, const std::vector<int> &targets, int n) {
    const std::size_t dim = std::size_t{1} << n;
    auto bit = [n](std::size_t index, int q) { return (index >> (n - 1 - q)) & 1u; };
    std::vector<Amp> full(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            bool agree = true;
            for (int q = 0; q < n && agree; ++q) {
                const bool is_target = std::find(targets.begin(), targets.end(), q) != targets.end();
                agree = is_target || bit(i, q) == bit(j, q);
            }
            if (!agree) {
                continue;
            }
            std::size_t si = 0;
            std::size_t sj = 0;
            for (int t : targets) {
                si = (si << 1) | bit(i, t);
                sj = (sj << 1) | bit(j, t);
            }
            full[i * dim + j] = u(si, sj);
        }
    }
    return full;
}

/// Kronecker product of row-major square matrices.
inline std::vector<Amp> kron(const std::vector<Amp> &a, std::size_t da, const std::vector<Amp> &b,
                             std::size_t db) {
    const std::size_t d = da * db;
    std::vector<Amp> out(d * d);
    for (std::size_t ar = 0; ar < da; ++ar)
        for (std::size_t ac = 0; ac < da; ++ac)
            for (std::size_t br = 0; br < db; ++br)
                for (std::size_t bc = 0; bc < db; ++bc)
                    out[(ar * db + br) * d + ac * db + bc] = a[ar * da + ac] * b[br * db + bc];
    return out;
}

inline std::vector<Amp> matvec(const std::vector<Amp> &m, std::span<const Amp> v) {
    const std::size_t dim = v.size();
    std::vector<Amp> out(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            out[r] += m[r * dim + c] * v[c];
    return out;
}

inline double max_diff(std::span<const Amp> a, std::span<const Amp> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

} // namespace test_util
