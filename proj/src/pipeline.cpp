#include "cvp/pipeline.hpp"

#include "cvp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cvp {

namespace {

void integrity(bool ok, std::string_view what, double observed, double expected) {
    if (ok) return;
    std::ostringstream os;
    os.precision(17);
    os << "integrity check failed: " << what << " (observed " << observed << ", expected " << expected << ")";
    throw IntegrityError(os.str());
}

bool close(double a, double b, double tol, double scale) { return std::abs(a - b) <= tol * scale; }

} // namespace

std::string_view to_string(UnitSystem u) noexcept { return u == UnitSystem::per_unit ? "per_unit" : "si"; }

void AnalysisRequest::validate() const {
    if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0) throw InvalidInput("frequency must be finite and > 0");
    require_finite(voltages, "voltages");
    require_finite(currents, "currents");
    neutral.validate();
}

AnalysisReport analyze(const AnalysisRequest& req, const AnalysisOptions& opt) {
    req.validate();
    EquivalentOptions eo = opt.equivalents;
    eo.path_tolerance = std::min(eo.path_tolerance, opt.integrity_tolerance);
    return assemble_report(req, equivalent_coordinates(req.voltages, req.currents, req.neutral, eo), opt);
}

AnalysisReport assemble_report(const AnalysisRequest& req, const FourWireEquivalents& eq, const AnalysisOptions& opt) {
    const double tol = opt.integrity_tolerance;
    AnalysisReport r;
    r.request = req;
    r.equivalents = eq;

    const CvpResult phase = cvp(eq.v_e, eq.i_e);
    const CvpResult seq = cvp(eq.v_pm_e.as_triple(), eq.i_pm_e.as_triple());

    r.v_e_norm = norm(eq.v_e);
    r.i_e_norm = norm(eq.i_e);
    r.p = phase.p;
    r.q = phase.q;
    r.d_e = phase.d;
    r.d_e_norm = phase.d_norm();
    r.d_pm_e = SequenceTriple::from_triple(seq.d);
    r.d_pm_e_norm = seq.d_norm();
    r.s_e_norm = phase.s_norm;
    r.pf = phase.pf;

    const double scale = std::max(r.s_e_norm, std::numeric_limits<double>::min());
    integrity(close(r.s_e_norm, r.v_e_norm * r.i_e_norm, tol, scale), "|S_e| = |V_e| |I_e|", r.s_e_norm,
              r.v_e_norm * r.i_e_norm);
    integrity(close(seq.p, r.p, tol, scale), "P in sequence coordinates", seq.p, r.p);
    integrity(close(seq.q, r.q, tol, scale), "Q in sequence coordinates", seq.q, r.q);
    integrity(close(r.d_pm_e_norm, r.d_e_norm, tol, scale), "|D_pm_e| = |D_e|", r.d_pm_e_norm, r.d_e_norm);
    integrity(close(seq.s_norm, r.s_e_norm, tol, scale), "|S_pm_e| = |S_e|", seq.s_norm, r.s_e_norm);
    const PhasorTriple law = FortescueMatrix::determinant() * multiply(FortescueMatrix::conjugate(), r.d_e);
    const double law_gap = norm(law - seq.d);
    integrity(law_gap <= tol * scale, "D_pm_e = det(A) A* D_e", law_gap, 0.0);

    if (opt.instantaneous) {
        const WaveformGrid grid{req.frequency_hz, opt.samples_per_cycle, opt.cycles};
        const WaveformSet w = synthesize(eq.v_e, eq.i_e, grid);
        const CrossTermDecomposition dec = decompose_cross_term(w, grid);
        InstantaneousSummary s;
        s.samples_per_cycle = grid.samples_per_cycle;
        s.cycles = grid.cycles;
        s.mean_p = time_average(w.p);
        s.sigma = dec.sigma;
        s.sigma_d = dec.sigma_d;
        integrity(close(s.mean_p, r.p, tol, scale), "<p(t)> = P", s.mean_p, r.p);
        integrity(close(s.sigma_d, r.d_e_norm / std::numbers::sqrt2, tol, scale), "sigma_d = |D_e| / sqrt2",
                  s.sigma_d, r.d_e_norm / std::numbers::sqrt2);
        r.instantaneous = s;
    }

    if (opt.ieee1459) r.ieee1459 = ieee1459_compare(r);
    return r;
}

Ieee1459Comparison ieee1459_compare(const AnalysisReport& report) {
    Ieee1459Comparison c;
    const SequenceTriple& v = report.equivalents.v_pm_e;
    const SequenceTriple& i = report.equivalents.i_pm_e;
    const double vp = std::norm(v.plus), ip = std::norm(i.plus);
    const double vu = std::norm(v.minus) + std::norm(v.homopolar);
    const double iu = std::norm(i.minus) + std::norm(i.homopolar);
    c.s_plus = std::sqrt(vp * ip);
    const double s = report.s_e_norm;
    if (c.s_plus > s * (1.0 + 1e-9)) {
        integrity(false, "S_+ <= |S_e|", c.s_plus, s);
    }
    // S_e^2 - S_+^2 expanded over the non-positive-sequence parts; no cancellation near balance
    c.s_u = std::sqrt(vp * iu + vu * ip + vu * iu);
    return c;
}

} // namespace cvp
