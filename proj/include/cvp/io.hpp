#pragma once

#include "cvp/pipeline.hpp"
#include "cvp/waveform.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cvp::io {

struct PolarEntry {
    double mag = 0.0;
    double angle_deg = 0.0;
};

/// Version-1 input document.
///
/// {
///   "schema_version": 1,
///   "label": "example1",
///   "frequency_hz": 50,
///   "unit_system": "per_unit" | "si",
///   "voltages": [{"mag": 1, "angle_deg": 0}, ...3 entries],
///   "currents": [...3 entries],
///   "neutral": {"mode": "four_wire", "rho": 1} | {"mode": "three_wire"}
/// }
struct InputDocument {
    int schema_version = 1;
    std::string label;
    double frequency_hz = 50.0;
    UnitSystem unit_system = UnitSystem::si;
    std::array<PolarEntry, 3> voltages{};
    std::array<PolarEntry, 3> currents{};
    NeutralConfig neutral;

    AnalysisRequest to_request() const;
};

/// Throws ParseError naming the offending field.
InputDocument parse_input(std::string_view text);

/// Reads and parses a file; an unreadable path raises InvalidInput.
InputDocument load_input(const std::filesystem::path& path);

std::string to_json(const InputDocument& doc);

/// Fixed-width text table.
std::string render_table(const AnalysisReport& report);

/// JSON with round-trip precision for every number.
std::string render_json(const AnalysisReport& report);

/// Inverse of render_json.
AnalysisReport report_from_json(std::string_view text);

/// Header `t,v1,v2,v3,i1,i2,i3,p,d1,d2,d3`, 17 significant digits.
void write_waveform_csv(std::ostream& os, const WaveformSet& w);

WaveformSet read_waveform_csv(std::istream& is);

} // namespace cvp::io
