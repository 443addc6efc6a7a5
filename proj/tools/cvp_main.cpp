// cvp: complex-vector power analysis of three-phase phasor measurements.
#include "cvp/errors.hpp"
#include "cvp/fixtures.hpp"
#include "cvp/io.hpp"
#include "cvp/kernels.hpp"
#include "cvp/pipeline.hpp"
#include "cvp/waveform.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_selftest_failed = 1;
constexpr int exit_validation = 2;
constexpr int exit_integrity = 3;

const char* const exit_code_help = "Exit codes:\n"
                                   "  0  success\n"
                                   "  1  selftest: at least one reference check failed\n"
                                   "  2  validation error (unreadable or malformed input, bad option value,\n"
                                   "     invalid neutral configuration, KCL violation in three-wire mode)\n"
                                   "  3  computation-integrity error (internal cross-checks disagree)\n";

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cvp::InvalidInput("cannot write output file '" + path + "'");
    out << text;
}

struct AnalyzeArgs {
    std::string input;
    std::string format = "table";
    bool ieee1459 = false;
    std::string out;
};

struct WaveformArgs {
    std::string input;
    int cycles = 2;
    int samples_per_cycle = 256;
    std::string coords = "equivalent";
    std::string out;
};

int run_analyze(const AnalyzeArgs& a) {
    const cvp::io::InputDocument doc = cvp::io::load_input(a.input);
    cvp::AnalysisOptions opt;
    opt.ieee1459 = a.ieee1459;
    const cvp::AnalysisReport report = cvp::analyze(doc.to_request(), opt);
    emit(a.out, a.format == "json" ? cvp::io::render_json(report) : cvp::io::render_table(report));
    return exit_ok;
}

int run_waveform(const WaveformArgs& a) {
    const cvp::io::InputDocument doc = cvp::io::load_input(a.input);
    const cvp::AnalysisRequest req = doc.to_request();
    const cvp::WaveformGrid grid{req.frequency_hz, a.samples_per_cycle, a.cycles};
    grid.validate();

    cvp::PhasorTriple v = req.voltages, i = req.currents;
    if (a.coords == "equivalent") {
        const auto eq = cvp::equivalent_coordinates(req.voltages, req.currents, req.neutral);
        v = eq.v_e;
        i = eq.i_e;
    }
    std::ostringstream csv;
    cvp::io::write_waveform_csv(csv, cvp::synthesize(v, i, grid));
    emit(a.out, csv.str());
    return exit_ok;
}

int run_selftest() {
    const cvp::SelftestSummary s = cvp::run_selftest(std::cout);
    return s.ok() ? exit_ok : exit_selftest_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complex-vector power (P + jQ and cross-phase unbalance D) of three-phase phasor sets"};
    app.footer(exit_code_help);
    app.require_subcommand(1);
    app.set_version_flag("--version", "cvp 1.0.0");
    std::string simd;
    app.add_option("--simd", simd, "Force kernel backend (scalar|avx2)")->check(CLI::IsMember({"scalar", "avx2"}));

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "Analyze one input document");
    analyze->add_option("--input", aa.input, "Input JSON document")->required();
    analyze->add_option("--format", aa.format, "Output format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
    analyze->add_flag("--ieee1459", aa.ieee1459, "Include the IEEE-1459 S_+ / S_u comparison");
    analyze->add_option("--out", aa.out, "Output path (default: standard output)");

    WaveformArgs wa;
    auto* waveform = app.add_subcommand("waveform", "Export sampled v(t), i(t), p(t), d(t) as CSV");
    waveform->add_option("--input", wa.input, "Input JSON document")->required();
    waveform->add_option("--cycles", wa.cycles, "Number of fundamental cycles")->capture_default_str();
    waveform->add_option("--samples-per-cycle", wa.samples_per_cycle, "Samples per cycle (>= 16)")
        ->capture_default_str();
    waveform->add_option("--coords", wa.coords, "Phasors to synthesize: equivalent (V_e, I_e) or phase (V, I)")
        ->check(CLI::IsMember({"equivalent", "phase"}))
        ->capture_default_str();
    waveform->add_option("--out", wa.out, "CSV output path (default: standard output)");

    auto* selftest = app.add_subcommand("selftest", "Check the built-in reference cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_validation;
    }

    try {
        if (simd == "scalar") cvp::simd::set_backend(cvp::simd::Backend::scalar);
        else if (simd == "avx2") cvp::simd::set_backend(cvp::simd::Backend::avx2);

        if (*analyze) return run_analyze(aa);
        if (*waveform) return run_waveform(wa);
        if (*selftest) return run_selftest();
    } catch (const cvp::IntegrityError& e) {
        std::cerr << "cvp: integrity error: " << e.what() << '\n';
        return exit_integrity;
    } catch (const cvp::Error& e) {
        std::cerr << "cvp: error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "cvp: unexpected error: " << e.what() << '\n';
        return exit_integrity;
    }
    return exit_validation;
}
