#include "oraclesim/gates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oraclesim {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
    int k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

// Permutation matrix sending column j to row perm[j].
Unitary permutation(const std::vector<std::size_t> &perm) {
    const std::size_t dim = perm.size();
    std::vector<Amp> entries(dim * dim);
    for (std::size_t j = 0; j < dim; ++j) {
        entries[perm[j] * dim + j] = 1.0;
    }
    return Unitary(dim, std::move(entries));
}

} // namespace

std::string_view to_string(FunctionClass c) {
    switch (c) {
    case FunctionClass::Constant:
        return "constant";
    case FunctionClass::Balanced:
        return "balanced";
    case FunctionClass::Neither:
        return "neither";
    }
    return "unknown";
}

FunctionTable::FunctionTable(std::map<std::string, FunctionValues> settings)
    : settings_(std::move(settings)) {
    if (settings_.empty()) {
        throw FormatError("function table has no settings");
    }
    std::size_t length = 0;
    for (const auto &[label, values] : settings_) {
        if (label.empty() || label.find_first_not_of("01") != std::string::npos) {
            throw FormatError("setting label '" + label + "' is not a bitstring");
        }
        if (setting_bits_ == 0) {
            setting_bits_ = static_cast<int>(label.size());
        } else if (static_cast<int>(label.size()) != setting_bits_) {
            throw FormatError("setting labels have different widths");
        }
        if (!is_power_of_two(values.size())) {
            throw FormatError("setting '" + label + "' has " + std::to_string(values.size()) +
                              " values; the length must be a power of two");
        }
        if (length == 0) {
            length = values.size();
        } else if (values.size() != length) {
            throw FormatError("settings have value lists of different lengths");
        }
        for (int v : values) {
            if (v != 0 && v != 1) {
                throw FormatError("setting '" + label + "' has non-binary value " + std::to_string(v));
            }
        }
    }
    if (setting_bits_ > 16) {
        throw FormatError("setting labels wider than 16 bits are not supported");
    }
    arg_bits_ = log2_exact(length);
    if (arg_bits_ < 1) {
        throw FormatError("functions need at least one argument bit (two values)");
    }
}

FunctionTable FunctionTable::deutsch() {
    return FunctionTable({{"00", {0, 0}}, {"01", {0, 1}}, {"10", {1, 0}}, {"11", {1, 1}}});
}

const FunctionValues &FunctionTable::values(std::string_view label) const {
    const auto it = settings_.find(std::string(label));
    if (it == settings_.end()) {
        throw DomainError("no function with setting label '" + std::string(label) + "'");
    }
    return it->second;
}

FunctionTable parse_function_table(std::string_view text) {
    std::map<std::string, FunctionValues> settings;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        const auto colon = body.find(':');
        if (colon == std::string::npos) {
            throw FormatError("line " + std::to_string(lineno) + ": expected '<label>: <values>'");
        }
        const std::string label = trim(std::string_view(body).substr(0, colon));
        FunctionValues values;
        std::istringstream fields(body.substr(colon + 1));
        std::string field;
        while (std::getline(fields, field, ',')) {
            const std::string token = trim(field);
            if (token == "0" || token == "1") {
                values.push_back(token == "1");
            } else {
                throw FormatError("line " + std::to_string(lineno) + ": value '" + token +
                                  "' is not 0 or 1");
            }
        }
        if (!settings.emplace(label, std::move(values)).second) {
            throw FormatError("line " + std::to_string(lineno) + ": duplicate label '" + label + "'");
        }
    }
    return FunctionTable(std::move(settings));
}

Unitary hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return Unitary(2, {s, s, s, -s});
}

Unitary oracle_with_setting(const FunctionTable &table) {
    if (!table.complete()) {
        throw IncompleteOracleError("function table covers " + std::to_string(table.settings().size()) +
                                    " of " + std::to_string(1u << table.setting_bits()) +
                                    " setting labels");
    }
    const int n = table.arg_bits();
    const std::size_t args = std::size_t{1} << n;
    const std::size_t dim = (std::size_t{1} << table.setting_bits()) * args * 2;
    std::vector<std::size_t> perm(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const std::size_t v = j & 1u;
        const std::size_t a = (j >> 1) & (args - 1);
        const std::size_t b = j >> (n + 1);
        const auto label = BasisLabel::from_index(b, table.setting_bits()).bits();
        const auto f = static_cast<std::size_t>(table.values(label)[a]);
        perm[j] = (j & ~std::size_t{1}) | (v ^ f);
    }
    return permutation(perm);
}

Unitary oracle_fixed(std::span<const int> f) {
    if (!is_power_of_two(f.size()) || f.size() < 2) {
        throw DomainError("function needs 2^n values with n >= 1, got " + std::to_string(f.size()));
    }
    for (int v : f) {
        if (v != 0 && v != 1) {
            throw DomainError("function value " + std::to_string(v) + " is not 0 or 1");
        }
    }
    const std::size_t dim = f.size() * 2;
    std::vector<std::size_t> perm(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const auto fa = static_cast<std::size_t>(f[j >> 1]);
        perm[j] = j ^ fa;
    }
    return permutation(perm);
}

FunctionClass classify_function(std::span<const int> values) {
    if (!is_power_of_two(values.size())) {
        throw DomainError("function needs 2^n values, got " + std::to_string(values.size()));
    }
    const auto ones = static_cast<std::size_t>(std::count(values.begin(), values.end(), 1));
    if (ones == 0 || ones == values.size()) {
        return FunctionClass::Constant;
    }
    if (2 * ones == values.size()) {
        return FunctionClass::Balanced;
    }
    return FunctionClass::Neither;
}

Unitary random_unitary(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    // columns of a Gaussian matrix, orthonormalized by modified Gram-Schmidt
    std::vector<std::vector<Amp>> cols(dim, std::vector<Amp>(dim));
    for (auto &col : cols) {
        for (auto &z : col) {
            z = Amp(gauss(rng), gauss(rng));
        }
    }
    for (std::size_t k = 0; k < dim; ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < k; ++j) {
                Amp proj{};
                for (std::size_t i = 0; i < dim; ++i) {
                    proj += std::conj(cols[j][i]) * cols[k][i];
                }
                for (std::size_t i = 0; i < dim; ++i) {
                    cols[k][i] -= proj * cols[j][i];
                }
            }
        }
        double n = 0.0;
        for (const auto &z : cols[k]) {
            n += std::norm(z);
        }
        n = std::sqrt(n);
        for (auto &z : cols[k]) {
            z /= n;
        }
    }
    std::vector<Amp> entries(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            entries[r * dim + c] = cols[c][r];
        }
    }
    return Unitary(dim, std::move(entries));
}

Unitary block_diagonal(std::span<const Unitary> blocks) {
    if (blocks.empty() || !is_power_of_two(blocks.size())) {
        throw DomainError("block_diagonal needs 2^k blocks");
    }
    const std::size_t bdim = blocks.front().dim();
    for (const auto &b : blocks) {
        if (b.dim() != bdim) {
            throw DomainError("block_diagonal blocks differ in dimension");
        }
    }
    const std::size_t dim = bdim * blocks.size();
    std::vector<Amp> entries(dim * dim);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        for (std::size_t r = 0; r < bdim; ++r) {
            for (std::size_t c = 0; c < bdim; ++c) {
                entries[(k * bdim + r) * dim + k * bdim + c] = blocks[k](r, c);
            }
        }
    }
    return Unitary(dim, std::move(entries));
}

} // namespace oraclesim
