#include "cvp/four_wire.hpp"

#include "cvp/errors.hpp"

#include <algorithm>
#include <string>

namespace cvp {

namespace {

void require_rho(double rho) {
    if (!std::isfinite(rho) || rho < 0.0) {
        throw InvalidConfig("rho must be finite and >= 0, got " + std::to_string(rho));
    }
}

} // namespace

void NeutralConfig::validate() const {
    if (mode == Mode::four_wire) require_rho(rho);
}

Phasor artificial_neutral_shift(const PhasorTriple& v, double rho) {
    require_rho(rho);
    require_finite(v, "voltage");
    if (rho == 0.0) return {0.0, 0.0};
    return -(rho / (1.0 + 3.0 * rho)) * v.sum();
}

double k_factor(double rho) {
    require_rho(rho);
    return 1.0 / (std::sqrt(1.0 + 3.0 * rho) + 1.0);
}

double homopolar_correction(double rho) {
    require_rho(rho);
    return std::sqrt(1.0 + 3.0 * rho);
}

double relative_distance(const PhasorTriple& a, const PhasorTriple& b) {
    const double scale = std::max(norm(a), norm(b));
    if (scale == 0.0) return 0.0;
    return norm(a - b) / scale;
}

FourWireEquivalents equivalent_phase_route(const PhasorTriple& v, const PhasorTriple& i, double rho, double k) {
    require_finite(v, "voltage");
    require_finite(i, "current");
    FourWireEquivalents eq;
    eq.neutral = NeutralConfig::four_wire(rho);
    eq.v_no = artificial_neutral_shift(v, rho);
    eq.i_n = i.sum();
    eq.k = k;
    eq.correction = homopolar_correction(rho);
    eq.rho_k = rho * k;
    eq.v_o = shifted(v, eq.v_no);
    eq.v_e = shifted(eq.v_o, -k * eq.v_no);
    eq.i_e = shifted(i, rho * k * eq.i_n);
    eq.v_o.unit = eq.v_e.unit = Unit::volt;
    eq.i_e.unit = Unit::ampere;
    return eq;
}

std::pair<SequenceTriple, SequenceTriple> equivalent_sequence_route(const PhasorTriple& v_o, const PhasorTriple& i,
                                                                    double correction) {
    SequenceTriple vs = to_sequence(v_o);
    SequenceTriple is = to_sequence(i);
    vs.homopolar *= correction;
    is.homopolar *= correction;
    vs.unit = Unit::volt;
    is.unit = Unit::ampere;
    return {vs, is};
}

FourWireEquivalents equivalent_coordinates(const PhasorTriple& v, const PhasorTriple& i, const NeutralConfig& cfg,
                                           const EquivalentOptions& opt) {
    cfg.validate();
    require_finite(v, "voltage");
    require_finite(i, "current");

    FourWireEquivalents eq;
    double correction = 1.0;
    if (cfg.is_three_wire()) {
        eq.neutral = cfg;
        eq.i_n = i.sum();
        if (std::abs(eq.i_n) > opt.kcl_tolerance * norm(i)) {
            throw KclViolation("three-wire mode requires I1 + I2 + I3 = 0, got |I_N| = " +
                               std::to_string(std::abs(eq.i_n)));
        }
        eq.v_no = -v.sum() / 3.0;
        eq.k = 0.0;
        eq.v_o = shifted(v, eq.v_no);
        eq.v_o.unit = Unit::volt;
        eq.v_e = eq.v_o;
        eq.i_e = i;
        eq.i_e.unit = Unit::ampere;
    } else {
        eq = equivalent_phase_route(v, i, cfg.rho, k_factor(cfg.rho));
        correction = *eq.correction;
    }

    std::tie(eq.v_pm_e, eq.i_pm_e) = equivalent_sequence_route(eq.v_o, i, correction);
    eq.path_mismatch = std::max(relative_distance(from_sequence(eq.v_pm_e), eq.v_e),
                                relative_distance(from_sequence(eq.i_pm_e), eq.i_e));
    if (!(eq.path_mismatch <= opt.path_tolerance)) {
        throw IntegrityError("equivalent coordinates: phase-domain and sequence-domain routes disagree (relative " +
                             std::to_string(eq.path_mismatch) + ")");
    }
    return eq;
}

} // namespace cvp
