#pragma once

#include "cvp/four_wire.hpp"
#include "cvp/phasor.hpp"
#include "cvp/power.hpp"
#include "cvp/sequence.hpp"
#include "cvp/waveform.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace cvp {

enum class UnitSystem { per_unit, si };

std::string_view to_string(UnitSystem u) noexcept;

/// Measured line-to-neutral voltages and line currents at the point of common coupling.
struct AnalysisRequest {
    PhasorTriple voltages{{}, {}, {}, Unit::volt};
    PhasorTriple currents{{}, {}, {}, Unit::ampere};
    NeutralConfig neutral;
    double frequency_hz = 50.0;
    UnitSystem unit_system = UnitSystem::si;
    std::string label;

    void validate() const;
};

/// Positive-sequence apparent power and the unbalance power sqrt(S_e^2 - S_+^2).
struct Ieee1459Comparison {
    double s_plus = 0.0;
    double s_u = 0.0;
};

struct InstantaneousSummary {
    int samples_per_cycle = 0;
    int cycles = 0;
    double mean_p = 0.0;
    std::array<double, 3> sigma{};
    double sigma_d = 0.0;
};

struct AnalysisReport {
    AnalysisRequest request;
    FourWireEquivalents equivalents;

    double v_e_norm = 0.0;
    double i_e_norm = 0.0;
    double p = 0.0;
    double q = 0.0;
    PhasorTriple d_e;
    double d_e_norm = 0.0;
    SequenceTriple d_pm_e;
    double d_pm_e_norm = 0.0;
    double s_e_norm = 0.0;
    std::optional<double> pf;

    std::optional<Ieee1459Comparison> ieee1459;
    std::optional<InstantaneousSummary> instantaneous;
};

struct AnalysisOptions {
    EquivalentOptions equivalents;
    /// Relative tolerance for every internal cross-check; beyond it analyze() throws IntegrityError.
    double integrity_tolerance = 1e-9;
    bool instantaneous = true;
    int samples_per_cycle = 256;
    int cycles = 2;
    bool ieee1459 = false;
};

/// Equivalent coordinates, CVP in both coordinate systems, optional instantaneous summary and IEEE-1459 figures.
AnalysisReport analyze(const AnalysisRequest& req, const AnalysisOptions& opt = {});

/// Everything analyze() does after the equivalent coordinates are known. Trusts `eq` as given.
AnalysisReport assemble_report(const AnalysisRequest& req, const FourWireEquivalents& eq,
                               const AnalysisOptions& opt = {});

Ieee1459Comparison ieee1459_compare(const AnalysisReport& report);

} // namespace cvp
