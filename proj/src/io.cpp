#include "cvp/io.hpp"

#include "cvp/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cvp::io {

using nlohmann::json;

namespace {

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
    return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double number_at(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) throw ParseError(join(path, key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ParseError(join(path, key), "must be finite");
    return d;
}

std::string string_at(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) throw ParseError(join(path, key), "expected a string");
    return v.get<std::string>();
}

std::array<PolarEntry, 3> phasors_at(const json& doc, const std::string& key) {
    const json& arr = require(doc, key, "");
    if (!arr.is_array()) throw ParseError(key, "expected an array of 3 phasors");
    if (arr.size() != 3) {
        throw ParseError(key, "expected exactly 3 entries, got " + std::to_string(arr.size()));
    }
    std::array<PolarEntry, 3> out{};
    for (std::size_t k = 0; k < 3; ++k) {
        const std::string path = key + "[" + std::to_string(k) + "]";
        out[k].mag = number_at(arr[k], "mag", path);
        out[k].angle_deg = number_at(arr[k], "angle_deg", path);
        if (out[k].mag < 0.0) throw ParseError(path + ".mag", "magnitude must be >= 0");
    }
    return out;
}

json phasor_json(Phasor p) {
    return {{"re", p.real()}, {"im", p.imag()}, {"mag", std::abs(p)}, {"angle_deg", angle_deg(p)}};
}

Phasor phasor_from(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

json triple_json(const PhasorTriple& t) { return json::array({phasor_json(t[0]), phasor_json(t[1]), phasor_json(t[2])}); }

PhasorTriple triple_from(const json& j, Unit u) {
    return {phasor_from(j.at(0)), phasor_from(j.at(1)), phasor_from(j.at(2)), u};
}

json seq_json(const SequenceTriple& s) {
    return {{"plus", phasor_json(s.plus)}, {"minus", phasor_json(s.minus)}, {"homopolar", phasor_json(s.homopolar)}};
}

SequenceTriple seq_from(const json& j, Unit u) {
    return {phasor_from(j.at("plus")), phasor_from(j.at("minus")), phasor_from(j.at("homopolar")), u};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

json neutral_json(const NeutralConfig& n) {
    if (n.is_three_wire()) return {{"mode", "three_wire"}};
    return {{"mode", "four_wire"}, {"rho", n.rho}};
}

NeutralConfig neutral_from(const json& j, const std::string& path) {
    const std::string mode = string_at(j, "mode", path);
    if (mode == "three_wire") return NeutralConfig::three_wire();
    if (mode == "four_wire") {
        const double rho = number_at(j, "rho", path);
        if (rho < 0.0) throw ParseError(path + ".rho", "rho must be >= 0");
        return NeutralConfig::four_wire(rho);
    }
    throw ParseError(path + ".mode", "unknown mode '" + mode + "' (expected four_wire or three_wire)");
}

UnitSystem unit_system_from(const std::string& s, const std::string& path) {
    if (s == "per_unit") return UnitSystem::per_unit;
    if (s == "si") return UnitSystem::si;
    throw ParseError(path, "unknown unit system '" + s + "' (expected per_unit or si)");
}

std::string fmt_num(double x, int prec = 6) {
    std::ostringstream os;
    os << std::setprecision(prec) << x;
    return os.str();
}

// magnitudes below 1e-10 of the row scale are round-off; printed as zero with no angle
constexpr double display_floor = 1e-10;

std::string fmt_polar(Phasor p, double scale) {
    std::ostringstream os;
    if (std::abs(p) <= display_floor * scale) {
        os << std::fixed << std::setprecision(5) << std::setw(10) << 0.0 << " ∠       n/a";
        return os.str();
    }
    os << std::fixed << std::setprecision(5) << std::setw(10) << std::abs(p) << " ∠ " << std::setw(9)
       << std::setprecision(3) << angle_deg(p) << "°";
    return os.str();
}

std::string fmt_value(double x, double scale, int prec = 8) {
    return std::abs(x) <= display_floor * scale ? std::string("0") : fmt_num(x, prec);
}

// padding that counts UTF-8 code points rather than bytes
std::string pad(const std::string& s, std::size_t width) {
    std::size_t cps = 0;
    for (unsigned char ch : s) cps += (ch & 0xC0) != 0x80;
    return cps >= width ? s + " " : s + std::string(width - cps, ' ');
}

} // namespace

AnalysisRequest InputDocument::to_request() const {
    AnalysisRequest r;
    r.label = label;
    r.frequency_hz = frequency_hz;
    r.unit_system = unit_system;
    r.neutral = neutral;
    for (std::size_t k = 0; k < 3; ++k) {
        r.voltages[k] = from_polar_deg(voltages[k].mag, voltages[k].angle_deg);
        r.currents[k] = from_polar_deg(currents[k].mag, currents[k].angle_deg);
    }
    return r;
}

InputDocument parse_input(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("$", std::string("malformed JSON at byte ") + std::to_string(e.byte));
    }
    if (!doc.is_object()) throw ParseError("$", "expected a JSON object");

    InputDocument d;
    const json& ver = require(doc, "schema_version", "");
    if (!ver.is_number_integer() || ver.get<int>() != 1) {
        throw ParseError("schema_version", "unsupported schema_version (expected 1)");
    }
    d.schema_version = 1;
    d.label = string_at(doc, "label", "");
    d.frequency_hz = number_at(doc, "frequency_hz", "");
    if (d.frequency_hz <= 0.0) throw ParseError("frequency_hz", "must be > 0");
    d.unit_system = unit_system_from(string_at(doc, "unit_system", ""), "unit_system");
    d.voltages = phasors_at(doc, "voltages");
    d.currents = phasors_at(doc, "currents");
    d.neutral = neutral_from(require(doc, "neutral", ""), "neutral");
    return d;
}

InputDocument load_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open input file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_input(ss.str());
}

std::string to_json(const InputDocument& doc) {
    auto arr = [](const std::array<PolarEntry, 3>& a) {
        json j = json::array();
        for (const auto& e : a) j.push_back({{"mag", e.mag}, {"angle_deg", e.angle_deg}});
        return j;
    };
    json j{{"schema_version", doc.schema_version},
           {"label", doc.label},
           {"frequency_hz", doc.frequency_hz},
           {"unit_system", std::string(to_string(doc.unit_system))},
           {"voltages", arr(doc.voltages)},
           {"currents", arr(doc.currents)},
           {"neutral", neutral_json(doc.neutral)}};
    return j.dump(2) + "\n";
}

std::string render_json(const AnalysisReport& r) {
    const FourWireEquivalents& eq = r.equivalents;
    json j;
    j["label"] = r.request.label;
    j["unit_system"] = std::string(to_string(r.request.unit_system));
    j["frequency_hz"] = r.request.frequency_hz;
    j["neutral"] = neutral_json(r.request.neutral);
    j["inputs"] = {{"voltages", triple_json(r.request.voltages)}, {"currents", triple_json(r.request.currents)}};
    j["V_NO"] = phasor_json(eq.v_no);
    j["I_N"] = phasor_json(eq.i_n);
    j["k"] = eq.k;
    j["rho_k"] = optional_json(eq.rho_k);
    j["homopolar_correction"] = optional_json(eq.correction);
    j["path_mismatch"] = eq.path_mismatch;
    j["V_O"] = triple_json(eq.v_o);
    j["V_e"] = triple_json(eq.v_e);
    j["I_e"] = triple_json(eq.i_e);
    j["V_pm_e"] = seq_json(eq.v_pm_e);
    j["I_pm_e"] = seq_json(eq.i_pm_e);
    j["V_e_norm"] = r.v_e_norm;
    j["I_e_norm"] = r.i_e_norm;
    j["P"] = r.p;
    j["Q"] = r.q;
    j["D_e"] = triple_json(r.d_e);
    j["D_e_norm"] = r.d_e_norm;
    j["D_pm_e"] = seq_json(r.d_pm_e);
    j["D_pm_e_norm"] = r.d_pm_e_norm;
    j["S_e_norm"] = r.s_e_norm;
    j["PF"] = optional_json(r.pf);
    if (r.ieee1459) {
        j["ieee1459"] = {{"s_plus", r.ieee1459->s_plus},
                         {"s_u", r.ieee1459->s_u},
                         {"note", "derived: S_+ = |V_+e||I_+e|, S_u = sqrt(S_e^2 - S_+^2)"}};
    }
    if (r.instantaneous) {
        const auto& s = *r.instantaneous;
        j["instantaneous"] = {{"samples_per_cycle", s.samples_per_cycle},
                              {"cycles", s.cycles},
                              {"mean_p", s.mean_p},
                              {"sigma", s.sigma},
                              {"sigma_d", s.sigma_d}};
    }
    return j.dump(2) + "\n";
}

AnalysisReport report_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("$", std::string("malformed JSON at byte ") + std::to_string(e.byte));
    }
    try {
        AnalysisReport r;
        r.request.label = j.at("label").get<std::string>();
        r.request.unit_system = unit_system_from(j.at("unit_system").get<std::string>(), "unit_system");
        r.request.frequency_hz = j.at("frequency_hz").get<double>();
        r.request.neutral = neutral_from(j.at("neutral"), "neutral");
        r.request.voltages = triple_from(j.at("inputs").at("voltages"), Unit::volt);
        r.request.currents = triple_from(j.at("inputs").at("currents"), Unit::ampere);

        FourWireEquivalents& eq = r.equivalents;
        eq.neutral = r.request.neutral;
        eq.v_no = phasor_from(j.at("V_NO"));
        eq.i_n = phasor_from(j.at("I_N"));
        eq.k = j.at("k").get<double>();
        eq.rho_k = optional_from(j.at("rho_k"));
        eq.correction = optional_from(j.at("homopolar_correction"));
        eq.path_mismatch = j.at("path_mismatch").get<double>();
        eq.v_o = triple_from(j.at("V_O"), Unit::volt);
        eq.v_e = triple_from(j.at("V_e"), Unit::volt);
        eq.i_e = triple_from(j.at("I_e"), Unit::ampere);
        eq.v_pm_e = seq_from(j.at("V_pm_e"), Unit::volt);
        eq.i_pm_e = seq_from(j.at("I_pm_e"), Unit::ampere);

        r.v_e_norm = j.at("V_e_norm").get<double>();
        r.i_e_norm = j.at("I_e_norm").get<double>();
        r.p = j.at("P").get<double>();
        r.q = j.at("Q").get<double>();
        r.d_e = triple_from(j.at("D_e"), Unit::volt_ampere);
        r.d_e_norm = j.at("D_e_norm").get<double>();
        r.d_pm_e = seq_from(j.at("D_pm_e"), Unit::volt_ampere);
        r.d_pm_e_norm = j.at("D_pm_e_norm").get<double>();
        r.s_e_norm = j.at("S_e_norm").get<double>();
        r.pf = optional_from(j.at("PF"));
        if (j.contains("ieee1459")) {
            r.ieee1459 = Ieee1459Comparison{j["ieee1459"].at("s_plus").get<double>(),
                                            j["ieee1459"].at("s_u").get<double>()};
        }
        if (j.contains("instantaneous")) {
            const json& s = j["instantaneous"];
            InstantaneousSummary sum;
            sum.samples_per_cycle = s.at("samples_per_cycle").get<int>();
            sum.cycles = s.at("cycles").get<int>();
            sum.mean_p = s.at("mean_p").get<double>();
            sum.sigma = s.at("sigma").get<std::array<double, 3>>();
            sum.sigma_d = s.at("sigma_d").get<double>();
            r.instantaneous = sum;
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError("$", std::string("report: ") + e.what());
    }
}

std::string render_table(const AnalysisReport& r) {
    const FourWireEquivalents& eq = r.equivalents;
    const bool pu = r.request.unit_system == UnitSystem::per_unit;
    const std::string uv = pu ? " pu" : " V", ua = pu ? " pu" : " A", us = pu ? " pu" : " VA";
    const std::string up = pu ? " pu" : " W", uq = pu ? " pu" : " var";
    constexpr std::size_t w0 = 18, w1 = 26;

    const double sv = std::max(norm(r.request.voltages), r.v_e_norm);
    const double si = std::max(norm(r.request.currents), r.i_e_norm);
    const double ss = r.s_e_norm;

    std::ostringstream os;
    auto row3 = [&](const std::string& name, const std::array<Phasor, 3>& c, double scale) {
        os << pad(name, w0);
        for (const Phasor& p : c) os << pad(fmt_polar(p, scale), w1);
        os << '\n';
    };
    auto row = [&](const std::string& name, const std::string& value) { os << pad(name, w0) << value << '\n'; };
    auto seq = [](const SequenceTriple& s) { return std::array<Phasor, 3>{s.plus, s.minus, s.homopolar}; };
    const auto tag = [](const std::string& u) { return " [" + u.substr(1) + "]"; };

    os << "CVP analysis: " << (r.request.label.empty() ? "(unlabelled)" : r.request.label) << "  ["
       << (pu ? "per-unit" : "SI") << ", " << fmt_num(r.request.frequency_hz) << " Hz, ";
    if (r.request.neutral.is_three_wire()) os << "three-wire";
    else os << "four-wire, rho = " << fmt_num(r.request.neutral.rho);
    os << "]\n\n";

    os << pad("Quantity", w0) << pad("phase 1 / +", w1) << pad("phase 2 / -", w1) << pad("phase 3 / h", w1) << '\n';
    os << std::string(w0 + 3 * w1, '-') << '\n';
    row3("V" + tag(uv), r.request.voltages.c, sv);
    row("V_NO", fmt_polar(eq.v_no, sv) + uv);
    row3("V_O", eq.v_o.c, sv);
    row("k(rho)", fmt_num(eq.k));
    if (eq.rho_k) row("rho k(rho)", fmt_num(*eq.rho_k));
    if (eq.correction) row("sqrt(1+3 rho)", fmt_num(*eq.correction));
    row3("V_e", eq.v_e.c, sv);
    row3("V_±e", seq(eq.v_pm_e), sv);
    row("‖V_e‖ = ‖V_±e‖", fmt_num(r.v_e_norm, 8) + uv);
    row3("I" + tag(ua), r.request.currents.c, si);
    row("I_N", fmt_polar(eq.i_n, si) + ua);
    row3("I_e", eq.i_e.c, si);
    row3("I_±e", seq(eq.i_pm_e), si);
    row("‖I_e‖ = ‖I_±e‖", fmt_num(r.i_e_norm, 8) + ua);
    os << std::string(w0 + 3 * w1, '-') << '\n';
    row("P", fmt_value(r.p, ss) + up);
    row("Q", fmt_value(r.q, ss) + uq);
    row3("D_e" + tag(us), r.d_e.c, ss);
    row3("D_±e", seq(r.d_pm_e), ss);
    const double small = 1e-9 * std::max(r.s_e_norm, 1e-300);
    if (std::abs(r.p) <= small && std::abs(r.q) <= small) {
        row("‖D_e‖ = ‖S_e‖", fmt_value(r.d_e_norm, ss) + us);
    } else {
        row("‖D_e‖ = ‖D_±e‖", fmt_value(r.d_e_norm, ss) + us);
        row("‖S_e‖", fmt_num(r.s_e_norm, 8) + us);
    }
    row("PF", r.pf ? fmt_value(*r.pf, 1.0, 6) : std::string("undefined (‖S_e‖ = 0)"));
    if (r.instantaneous) {
        row("sigma_d", fmt_value(r.instantaneous->sigma_d, ss) + us + "  (rms of 2w cross term)");
    }
    if (r.ieee1459) {
        os << std::string(w0 + 3 * w1, '-') << '\n';
        os << "IEEE 1459 comparison (derived by this tool)\n";
        row("S_+", fmt_num(r.ieee1459->s_plus, 8) + us);
        row("S_u", fmt_num(r.ieee1459->s_u, 8) + us);
    }
    return os.str();
}

void write_waveform_csv(std::ostream& os, const WaveformSet& w) {
    os << "t,v1,v2,v3,i1,i2,i3,p,d1,d2,d3\n";
    char buf[32];
    for (std::size_t k = 0; k < w.size(); ++k) {
        const double row[11] = {w.t[k],    w.v[0][k], w.v[1][k], w.v[2][k], w.i[0][k], w.i[1][k],
                                w.i[2][k], w.p[k],    w.d[0][k], w.d[1][k], w.d[2][k]};
        for (int c = 0; c < 11; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", row[c]);
            os << buf << (c == 10 ? '\n' : ',');
        }
    }
}

WaveformSet read_waveform_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "t,v1,v2,v3,i1,i2,i3,p,d1,d2,d3") {
        throw InvalidInput("waveform CSV: unexpected header");
    }
    WaveformSet w;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        double v[11];
        for (int c = 0; c < 11; ++c) {
            if (!std::getline(ss, cell, ',')) {
                throw InvalidInput("waveform CSV line " + std::to_string(lineno) + ": expected 11 columns");
            }
            try {
                v[c] = std::stod(cell);
            } catch (const std::exception&) {
                throw InvalidInput("waveform CSV line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        w.t.push_back(v[0]);
        for (int k = 0; k < 3; ++k) {
            w.v[k].push_back(v[1 + k]);
            w.i[k].push_back(v[4 + k]);
            w.d[k].push_back(v[8 + k]);
        }
        w.p.push_back(v[7]);
    }
    return w;
}

} // namespace cvp::io
