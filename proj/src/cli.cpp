#include "mspiral/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mspiral/characterize.hpp"
#include "mspiral/curve_io.hpp"
#include "mspiral/errors.hpp"
#include "mspiral/estimate.hpp"
#include "mspiral/frenet.hpp"
#include "mspiral/planar.hpp"
#include "mspiral/profile.hpp"

namespace mspiral::cli {

namespace {

inline constexpr double kCheckTolerance = 1e-3;

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

std::string read_input(const std::string& path, Io& io) {
    std::ostringstream buf;
    if (path == "-") {
        buf << io.in.rdbuf();
        return buf.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open '" + path + "'");
    buf << f.rdbuf();
    return buf.str();
}

// Writes through a temporary sibling so readers never observe a partial file.
void write_output(const std::string& path, const std::string& content, Io& io) {
    if (path == "-") {
        io.out << content;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw FormatError("cannot write '" + path + "'");
        f << content;
        if (!f) throw FormatError("write failed for '" + path + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw FormatError("cannot move output into place at '" + path + "'");
    }
}

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* flag) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw FormatError(std::string(flag) + ": malformed number '" + item + "'");
        }
    }
    if (v.size() != expected) {
        throw FormatError(std::string(flag) + " expects " + std::to_string(expected) + " comma-separated numbers");
    }
    return v;
}

ProfileExpr parse_flag_profile(const std::string& text, const char* flag) {
    try {
        return ProfileExpr::parse(text);
    } catch (const ParseError& e) {
        throw ParseError(std::string(flag) + ": " + e.reason(), e.offset());
    }
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string mode;
    std::string curve_case = "timelike";
    std::string kappa;
    std::string tau = "0";
    double s0 = 0.0;
    double s1 = 1.0;
    double step = 1e-3;
    double phi0 = 0.0;
    std::string out = "-";
    std::string format = "json";
};

int cmd_generate(const GenerateArgs& a, Io& io) {
    const ProfileExpr kappa = parse_flag_profile(a.kappa, "--kappa");
    SampledCurve curve;
    if (a.mode == "frenet") {
        const ProfileExpr tau = parse_flag_profile(a.tau, "--tau");
        const CurveCase c = parse_curve_case(a.curve_case);
        curve = integrate(c, kappa, tau, LVec3{}, default_initial_frame(c), a.s0, a.s1, a.step);
    } else {
        PlanarSpiralSpec spec;
        spec.kappa = kappa;
        spec.s0 = a.s0;
        spec.s1 = a.s1;
        spec.n = grid_intervals(a.s0, a.s1, a.step) + 1;
        spec.kind = a.mode == "planar-timelike" ? PlanarKind::TimelikePlanar : PlanarKind::SpacelikePlanar;
        spec.phi0 = a.phi0;
        curve = generate_planar(spec);
    }
    write_output(a.out, a.format == "csv" ? write_curve_csv(curve) : write_curve_json(curve), io);
    return kSuccess;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
    std::string in;
    double tolerance = kDefaultFitTolerance;
    bool json = false;
    bool estimate = false;
};

nlohmann::ordered_json verdict_json(const FamilyVerdict& v) {
    nlohmann::ordered_json j;
    j["holds"] = v.holds;
    j["residual"] = v.residual;
    j["coefficients"] = v.coefficients;
    return j;
}

std::string coefficients_text(const std::vector<double>& c) {
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ", ";
        out += format_double(c[i]);
    }
    return out + ")";
}

void print_verdict(std::ostream& os, const char* name, const FamilyVerdict& v, const char* labels) {
    os << name << ": " << (v.holds ? "true" : "false") << "  residual " << format_double(v.residual);
    if (v.holds && !v.coefficients.empty()) os << "  " << labels << " = " << coefficients_text(v.coefficients);
    os << '\n';
}

int cmd_classify(const ClassifyArgs& a, Io& io) {
    SampledCurve curve = read_curve(read_input(a.in, io));
    if (a.estimate) {
        const auto pts = points_of(curve);
        curve = to_sampled_curve(pts, estimate(pts));
    }
    ClassifyOptions opts;
    opts.fit_tolerance = a.tolerance;
    const auto rep = classify(curve, opts);

    if (a.json) {
        nlohmann::ordered_json j;
        j["samples"] = rep.sample_count;
        j["case"] = std::string(to_string(rep.curve_case));
        j["tolerance"] = rep.tolerance;
        j["planar_cornu"] = verdict_json(rep.planar_cornu);
        j["euler"] = verdict_json(rep.euler);
        j["logarithmic"] = verdict_json(rep.logarithmic);
        j["generalized_euler"] = verdict_json(rep.generalized_euler);
        j["generalized_euler"]["witness"] = rep.generalized_euler_witness;
        j["helix"] = verdict_json(rep.helix);
        j["rectifying"] = verdict_json(rep.rectifying);
        if (rep.bertrand) {
            j["bertrand"] = {{"A", rep.bertrand->a}, {"B", rep.bertrand->b}};
        } else {
            j["bertrand"] = {{"note", rep.bertrand_note}};
        }
        io.out << j.dump(2) << '\n';
        return kSuccess;
    }

    auto& os = io.out;
    os << "samples: " << rep.sample_count << '\n' << "case: " << to_string(rep.curve_case) << '\n'
       << "tolerance: " << format_double(rep.tolerance) << '\n';
    print_verdict(os, "planar_cornu", rep.planar_cornu, "kappa (a, b)");
    print_verdict(os, "euler", rep.euler, "(c1, c2, d1, d2)");
    print_verdict(os, "logarithmic", rep.logarithmic, "1/kappa, 1/tau (a, b, c, d)");
    print_verdict(os, "generalized_euler", rep.generalized_euler, "kappa/tau (a, b, c, d)");
    if (rep.generalized_euler.holds) os << "  witness: " << rep.generalized_euler_witness << '\n';
    print_verdict(os, "helix", rep.helix, "lambda");
    print_verdict(os, "rectifying", rep.rectifying, "(lambda1, lambda2)");
    if (rep.bertrand) {
        os << "bertrand: A = " << format_double(rep.bertrand->a) << ", B = " << format_double(rep.bertrand->b) << '\n';
    } else {
        os << "bertrand: none (" << rep.bertrand_note << ")\n";
    }
    return kSuccess;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string check;
    std::string in;
    std::string abcd;
    double lambda = 0.0;
    double r = std::numeric_limits<double>::quiet_NaN();
    double tolerance = kCheckTolerance;
};

int report(Io& io, const std::string& check, const std::vector<std::pair<std::string, double>>& values,
           double residual, double tolerance) {
    io.out << "check: " << check << '\n';
    for (const auto& [k, v] : values) io.out << k << ": " << format_double(v) << '\n';
    io.out << "residual: " << format_double(residual) << '\n' << "tolerance: " << format_double(tolerance) << '\n';
    const bool pass = residual <= tolerance;
    io.out << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kSuccess : kVerificationFailed;
}

int fail_with(Io& io, const std::string& check, const std::string& why) {
    io.out << "check: " << check << '\n' << "FAIL: " << why << '\n';
    return kVerificationFailed;
}

int cmd_verify(const VerifyArgs& a, Io& io) {
    const SampledCurve curve = read_curve(read_input(a.in, io));
    if (a.check == "bertrand") {
        std::vector<Sample2> ks;
        std::vector<Sample2> ts;
        for (const auto& s : curve.samples) {
            ks.push_back({s.s, s.kappa});
            ts.push_back({s.s, s.tau});
        }
        const auto kf = fit_linear(ks);
        const auto tf = fit_linear(ts);
        if (!kf.ok || !tf.ok) return fail_with(io, a.check, "curvature and torsion are not both linear");
        BertrandCoefficients bc;
        try {
            bc = bertrand_coefficients({kf.coefficients[0], kf.coefficients[1]},
                                       {tf.coefficients[0], tf.coefficients[1]});
        } catch (const NumericError& e) {
            return fail_with(io, a.check, e.what());
        }
        const double r = std::isnan(a.r) ? bertrand_offset(curve.curve_case, bc) : a.r;
        const auto mate = bertrand_mate(curve, r);
        const double angle = normal_line_deviation(curve, mate);
        return report(io, a.check, {{"A", bc.a}, {"B", bc.b}, {"r", r}}, angle, a.tolerance);
    }
    if (a.check == "darboux") {
        return report(io, a.check, {}, parallel_to_normal_residual(darboux_curve(curve), curve), a.tolerance);
    }
    if (a.check == "ucurve") {
        return report(io, a.check, {}, parallel_to_normal_residual(u_curve(curve), curve), a.tolerance);
    }
    if (a.abcd.empty()) throw FormatError("--check " + a.check + " requires --abcd a,b,c,d");
    const auto k = parse_list(a.abcd, 4, "--abcd");
    if (a.check == "involute") {
        const InvoluteCoefficients ic{k[0], k[1], k[2], k[3], a.lambda};
        const auto res = check_involute(curve, ic);
        return report(io, a.check, {{"identity_deviation", res.max_identity_deviation}}, res.max_normal_component,
                      a.tolerance);
    }
    // developable
    const RuledSurfaceSpec spec{curve, k[0], k[1], k[2], k[3]};
    return report(io, a.check, {}, developability_residual(spec), a.tolerance);
}

// ---------------------------------------------------------------- export-svg

struct SvgArgs {
    std::string in;
    std::string plane = "yz";
    std::string out = "-";
    double width = 800.0;
    double height = 600.0;
};

int cmd_export_svg(const SvgArgs& a, Io& io) {
    const SampledCurve curve = read_curve(read_input(a.in, io));
    write_output(a.out, render_svg(curve, parse_plane(a.plane), a.width, a.height), io);
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Io io{in, out, err};
    CLI::App app{"Euler, logarithmic and generalized Euler spirals in Minkowski 3-space", "mspiral"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate a sampled curve");
    generate->add_option("--mode", gen.mode, "Generator")
        ->required()
        ->check(CLI::IsMember({"planar-timelike", "planar-spacelike", "frenet"}));
    generate->add_option("--case", gen.curve_case, "Curve case (frenet mode)");
    generate->add_option("--kappa", gen.kappa, "Curvature profile in s")->required();
    generate->add_option("--tau", gen.tau, "Torsion profile in s (frenet mode)");
    generate->add_option("--s0", gen.s0, "Start of the arc-length interval");
    generate->add_option("--s1", gen.s1, "End of the arc-length interval");
    generate->add_option("--step", gen.step, "Arc-length step");
    generate->add_option("--phi0", gen.phi0, "Initial turning angle (planar modes)");
    generate->add_option("--out", gen.out, "Output path, '-' for stdout");
    generate->add_option("--format", gen.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    ClassifyArgs cls;
    auto* classify_cmd = app.add_subcommand("classify", "Classify a curve into spiral families");
    classify_cmd->add_option("--in", cls.in, "Curve file, '-' for stdin")->required();
    classify_cmd->add_option("--tolerance", cls.tolerance, "Fit tolerance (max absolute residual)");
    classify_cmd->add_flag("--json", cls.json, "Emit the report as JSON");
    classify_cmd->add_flag("--estimate", cls.estimate, "Re-estimate curvature and torsion from the points");

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "Run a characterization check");
    verify->add_option("--check", ver.check, "Check to run")
        ->required()
        ->check(CLI::IsMember({"bertrand", "darboux", "involute", "developable", "ucurve"}));
    verify->add_option("--in", ver.in, "Curve file, '-' for stdin")->required();
    verify->add_option("--abcd", ver.abcd, "Coefficients a,b,c,d (involute, developable)");
    verify->add_option("--lambda", ver.lambda, "Normal offset (involute)");
    verify->add_option("--r", ver.r, "Bertrand offset override");
    verify->add_option("--tolerance", ver.tolerance, "Residual tolerance");

    SvgArgs svg;
    auto* export_svg = app.add_subcommand("export-svg", "Project a curve on a coordinate plane as SVG");
    export_svg->add_option("--in", svg.in, "Curve file, '-' for stdin")->required();
    export_svg->add_option("--plane", svg.plane, "Projection plane")->check(CLI::IsMember({"yz", "xz", "xy"}));
    export_svg->add_option("--out", svg.out, "Output path, '-' for stdout");
    export_svg->add_option("--width", svg.width, "Width in pixels");
    export_svg->add_option("--height", svg.height, "Height in pixels");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (generate->parsed()) return cmd_generate(gen, io);
        if (classify_cmd->parsed()) return cmd_classify(cls, io);
        if (verify->parsed()) return cmd_verify(ver, io);
        return cmd_export_svg(svg, io);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kNumericError;
    }
}

}  // namespace mspiral::cli
