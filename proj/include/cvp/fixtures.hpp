#pragma once

#include "cvp/pipeline.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace cvp {

enum class ToleranceKind { relative, absolute, angle_deg };

/// One expected field of a reference case.
struct FixtureCheck {
    std::string quantity;
    double expected = 0.0;
    double tolerance = 0.0;
    ToleranceKind kind = ToleranceKind::relative;
    std::function<double(const AnalysisReport&)> observe;
};

struct Fixture {
    AnalysisRequest request;
    std::vector<FixtureCheck> checks;
};

struct CheckOutcome {
    std::string label;
    const FixtureCheck* check = nullptr;
    double observed = 0.0;
    double error = 0.0; // |observed - expected| (relative for ToleranceKind::relative, shortest arc for angles)
    bool pass = false;
};

/// The two reference cases: "example1" (per-unit, purely reactive star load, rho = 1) and
/// "example2" (60 Hz feeder measurements, rho = 2.4).
const std::vector<Fixture>& builtin_fixtures();

/// Options every fixture is analyzed with (IEEE-1459 comparison enabled).
AnalysisOptions fixture_options();

std::vector<CheckOutcome> evaluate_fixture(const Fixture& f, const AnalysisReport& report);

using Analyzer = std::function<AnalysisReport(const AnalysisRequest&)>;

struct SelftestSummary {
    int passed = 0;
    int failed = 0;
    bool ok() const noexcept { return failed == 0 && passed > 0; }
};

/// Runs every builtin fixture through `analyzer`, printing one PASS/FAIL line per expected field.
/// An exception from the analyzer counts as one failure for that fixture.
SelftestSummary run_selftest(std::ostream& os, const Analyzer& analyzer = {});

std::string describe_tolerance(const FixtureCheck& c);

} // namespace cvp
