#pragma once

#include "cvp/phasor.hpp"
#include "cvp/sequence.hpp"

#include <optional>

namespace cvp {

/// Neutral-conductor description. `rho` = R_N / R_S; three-wire stands for rho -> infinity.
struct NeutralConfig {
    enum class Mode { four_wire, three_wire };

    Mode mode = Mode::four_wire;
    double rho = 1.0;

    static NeutralConfig four_wire(double rho) { return {Mode::four_wire, rho}; }
    static NeutralConfig three_wire() { return {Mode::three_wire, 0.0}; }

    bool is_three_wire() const noexcept { return mode == Mode::three_wire; }
    void validate() const;

    friend bool operator==(const NeutralConfig&, const NeutralConfig&) = default;
};

/// Artificial-neutral reference and equivalent coordinates for one measurement.
struct FourWireEquivalents {
    NeutralConfig neutral;
    Phasor v_no{};                    // shift N -> O
    Phasor i_n{};                     // I_1 + I_2 + I_3
    double k = 0.0;                   // k(rho); 0 in three-wire mode
    std::optional<double> correction; // sqrt(1 + 3 rho); absent in three-wire mode
    std::optional<double> rho_k;      // rho k(rho), the neutral-current gain on I_e
    PhasorTriple v_o;
    PhasorTriple v_e;
    PhasorTriple i_e;
    SequenceTriple v_pm_e;
    SequenceTriple i_pm_e;
    /// Relative disagreement between the phase-domain and sequence-domain constructions.
    double path_mismatch = 0.0;
};

struct EquivalentOptions {
    double kcl_tolerance = 1e-9;  // three-wire: |I_N| <= tol * |I|
    double path_tolerance = 1e-9; // max allowed path_mismatch before IntegrityError
};

/// V_NO = -(V_1 + V_2 + V_3) / (3 + 1/rho), evaluated as -rho * sum / (1 + 3 rho) so that rho = 0 gives 0.
Phasor artificial_neutral_shift(const PhasorTriple& v, double rho);

/// (sqrt(1+3 rho) - 1) / (3 rho), evaluated as 1 / (sqrt(1+3 rho) + 1).
double k_factor(double rho);

/// sqrt(1 + 3 rho).
double homopolar_correction(double rho);

/// Phase-domain route: V_e = V_O - k V_NO 1, I_e = I + rho k I_N 1, with k supplied by the caller.
/// Fills everything except the sequence triples and path_mismatch.
FourWireEquivalents equivalent_phase_route(const PhasorTriple& v, const PhasorTriple& i, double rho, double k);

/// Sequence-domain route: A V_O and A I with the homopolar entries scaled by `correction`.
std::pair<SequenceTriple, SequenceTriple> equivalent_sequence_route(const PhasorTriple& v_o, const PhasorTriple& i,
                                                                    double correction);

/// Both routes, cross-checked; throws IntegrityError if they disagree beyond `opt.path_tolerance`.
FourWireEquivalents equivalent_coordinates(const PhasorTriple& v, const PhasorTriple& i, const NeutralConfig& cfg,
                                           const EquivalentOptions& opt = {});

/// Relative distance |a - b| / max(|a|, |b|), 0 when both vanish.
double relative_distance(const PhasorTriple& a, const PhasorTriple& b);

} // namespace cvp
