#include "oraclesim/dump.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace oraclesim {

namespace {

struct Symbol {
    double value;
    const char *text;
};

const std::array<Symbol, 5> kSymbols = {{
    {1.0, "1"},
    {1.0 / std::sqrt(2.0), "1/√2"},
    {0.5, "1/2"},
    {1.0 / (2.0 * std::sqrt(2.0)), "1/(2√2)"},
    {0.25, "1/4"},
}};

std::string decimal(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%+.15g", v);
    return buf;
}

std::string symbolic_real(double v) {
    for (const auto &s : kSymbols) {
        if (std::abs(std::abs(v) - s.value) <= kAmpTolerance) {
            return std::string(v < 0 ? "-" : "+") + s.text;
        }
    }
    return decimal(v);
}

} // namespace

std::string tool_version() {
#ifdef ORACLESIM_VERSION
    return ORACLESIM_VERSION;
#else
    return "unknown";
#endif
}

double round_significant(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) {
        return value;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return std::strtod(buf, nullptr);
}

StateDump make_dump(const StateVector &state, std::string stage, nlohmann::json meta) {
    StateDump dump{state.layout(), std::move(stage), {}, std::move(meta)};
    const int n = state.layout().total_qubits();
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        const Amp a = state[i];
        if (std::abs(a) <= kAmpTolerance) {
            continue;
        }
        dump.entries.push_back({BasisLabel::from_index(i, n).bits(), round_significant(a.real()),
                                round_significant(a.imag())});
    }
    return dump;
}

nlohmann::json to_json(const StateDump &dump) {
    nlohmann::json layout = nlohmann::json::array();
    for (const auto &reg : dump.layout.registers()) {
        layout.push_back({reg.name, reg.width});
    }
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &e : dump.entries) {
        entries.push_back({{"basis", e.basis}, {"re", e.re}, {"im", e.im}});
    }
    return {{"layout", layout}, {"stage", dump.stage}, {"entries", entries}, {"meta", dump.meta}};
}

StateDump dump_from_json(const nlohmann::json &j) {
    try {
        std::vector<Register> regs;
        for (const auto &r : j.at("layout")) {
            if (!r.is_array() || r.size() != 2) {
                throw FormatError("layout items must be [name, width] pairs");
            }
            regs.push_back({r.at(0).get<std::string>(), r.at(1).get<int>()});
        }
        StateDump dump{RegisterLayout(std::move(regs)), j.at("stage").get<std::string>(), {},
                       j.value("meta", nlohmann::json::object())};
        for (const auto &e : j.at("entries")) {
            dump.entries.push_back(
                {e.at("basis").get<std::string>(), e.at("re").get<double>(), e.at("im").get<double>()});
        }
        return dump;
    } catch (const nlohmann::json::exception &ex) {
        throw FormatError(std::string("malformed state dump: ") + ex.what());
    } catch (const LayoutError &ex) {
        throw FormatError(std::string("malformed state dump: ") + ex.what());
    }
}

StateVector state_from_dump(const StateDump &dump) {
    std::vector<Amp> amps(dump.layout.dimension());
    std::uint64_t previous = 0;
    bool first = true;
    double total = 0.0;
    for (const auto &e : dump.entries) {
        std::uint64_t index = 0;
        try {
            const BasisLabel label(e.basis);
            if (label.size() != static_cast<std::size_t>(dump.layout.total_qubits())) {
                throw FormatError("basis '" + e.basis + "' does not match the layout");
            }
            index = label.index();
        } catch (const LayoutError &ex) {
            throw FormatError(ex.what());
        }
        if (!first && index <= previous) {
            throw FormatError("dump entries must be sorted by ascending basis index without repeats");
        }
        first = false;
        previous = index;
        amps[index] = Amp(e.re, e.im);
        total += std::norm(amps[index]);
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw FormatError("dump amplitudes have squared norm " + std::to_string(total));
    }
    const double scale = 1.0 / std::sqrt(total);
    for (Amp &a : amps) {
        a *= scale;
    }
    return StateVector(dump.layout, std::move(amps));
}

std::string symbolic_amplitude(Amp a) {
    const bool real_zero = std::abs(a.imag()) <= kAmpTolerance;
    const bool imag_zero = std::abs(a.real()) <= kAmpTolerance;
    if (real_zero) {
        return symbolic_real(a.real());
    }
    if (imag_zero) {
        return symbolic_real(a.imag()) + "i";
    }
    return "(" + decimal(a.real()) + decimal(a.imag()) + "i)";
}

std::string format_basis(const RegisterLayout &layout, std::size_t index) {
    const std::string bits = BasisLabel::from_index(index, layout.total_qubits()).bits();
    std::string out;
    std::size_t pos = 0;
    for (const auto &reg : layout.registers()) {
        out += "|" + bits.substr(pos, static_cast<std::size_t>(reg.width)) + "⟩_" + reg.name;
        pos += static_cast<std::size_t>(reg.width);
    }
    return out;
}

std::vector<std::string> format_state(const StateVector &state) {
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if (std::abs(state[i]) > kAmpTolerance) {
            lines.push_back(symbolic_amplitude(state[i]) + " " + format_basis(state.layout(), i));
        }
    }
    return lines;
}

} // namespace oraclesim
