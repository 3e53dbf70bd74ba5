#pragma once

// Text and JSON renderings of states.
//
// JSON dump schema:
//   {"layout": [["B",2],["A",1],["V",1]], "stage": "...",
//    "entries": [{"basis": "0110", "re": 0.707106781186547, "im": 0}, ...],
//    "meta": {...}}
// Entries are the nonzero amplitudes in ascending basis-index order, each
// component rounded to 15 significant digits.

#include <string>
#include <vector>

#include "json.hpp"
#include "oraclesim/qcore.hpp"

namespace oraclesim {

struct DumpEntry {
    std::string basis;
    double re = 0.0;
    double im = 0.0;
};

struct StateDump {
    RegisterLayout layout;
    std::string stage;
    std::vector<DumpEntry> entries;
    nlohmann::json meta = nlohmann::json::object();
};

std::string tool_version();

/// Rounds to `digits` significant decimal digits.
double round_significant(double value, int digits = 15);

StateDump make_dump(const StateVector &state, std::string stage,
                    nlohmann::json meta = nlohmann::json::object());
nlohmann::json to_json(const StateDump &dump);
/// Throws FormatError on schema violations.
StateDump dump_from_json(const nlohmann::json &j);
/// Throws FormatError when the entries do not describe a normalized state
/// (squared magnitudes must sum to 1 within 1e-9).
StateVector state_from_dump(const StateDump &dump);

/// Exact form such as "+1/2", "-1/(2√2)" or "+1/√2" when the value matches one
/// within 1e-12, otherwise a decimal rendering.
std::string symbolic_amplitude(Amp a);

/// Ket notation per register, e.g. "|01⟩_B|1⟩_A|0⟩_V".
std::string format_basis(const RegisterLayout &layout, std::size_t index);

/// One "<amplitude> <ket>" line per nonzero amplitude.
std::vector<std::string> format_state(const StateVector &state);

} // namespace oraclesim
