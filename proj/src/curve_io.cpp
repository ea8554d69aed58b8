#include "mspiral/curve_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "mspiral/errors.hpp"

namespace mspiral {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

namespace {

ordered_json vec_json(const LVec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

LVec3 vec_from(const ordered_json& j, const char* field, std::size_t row) {
    if (!j.is_array() || j.size() != 3) {
        throw FormatError("sample " + std::to_string(row) + ": '" + field + "' must be an array of 3 numbers");
    }
    std::array<double, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!j[i].is_number()) throw FormatError("sample " + std::to_string(row) + ": '" + field + "' has a non-number");
        v[i] = j[i].get<double>();
    }
    return {v[0], v[1], v[2]};
}

double number_from(const ordered_json& obj, const char* field, std::size_t row) {
    auto it = obj.find(field);
    if (it == obj.end() || !it->is_number()) {
        throw FormatError("sample " + std::to_string(row) + ": missing number '" + field + "'");
    }
    return it->get<double>();
}

const ordered_json& member(const ordered_json& obj, const char* field, std::size_t row) {
    auto it = obj.find(field);
    if (it == obj.end()) throw FormatError("sample " + std::to_string(row) + ": missing '" + field + "'");
    return *it;
}

void check_ascending(const SampledCurve& c) {
    if (c.samples.empty()) throw FormatError("curve has no samples");
    for (std::size_t i = 1; i < c.samples.size(); ++i) {
        if (!(c.samples[i].s > c.samples[i - 1].s)) {
            throw FormatError("samples must have strictly ascending s (row " + std::to_string(i) + ")");
        }
    }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

std::string_view trim(std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t' || v.front() == '\r')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
    return v;
}

CurveCase infer_case(const FrenetFrame& f) {
    try {
        const auto tc = causal_character(f.t, 1e-6);
        const auto nc = causal_character(f.n, 1e-6);
        if (tc == CausalCharacter::Timelike && nc == CausalCharacter::Spacelike) return CurveCase::Timelike;
        if (tc == CausalCharacter::Spacelike && nc == CausalCharacter::Spacelike) {
            return CurveCase::SpacelikeSpacelikeNormal;
        }
        if (tc == CausalCharacter::Spacelike && nc == CausalCharacter::Timelike) {
            return CurveCase::SpacelikeTimelikeNormal;
        }
    } catch (const NumericError&) {
    }
    throw FormatError("cannot infer the curve case from the first frame");
}

}  // namespace

std::string write_curve_json(const SampledCurve& curve) {
    ordered_json doc;
    doc["version"] = 1;
    doc["signature"] = "++-";
    doc["case"] = std::string(to_string(curve.curve_case));
    doc["step"] = curve.step;
    ordered_json samples = ordered_json::array();
    for (const auto& s : curve.samples) {
        ordered_json row;
        row["s"] = s.s;
        row["point"] = vec_json(s.point);
        row["T"] = vec_json(s.frame.t);
        row["N"] = vec_json(s.frame.n);
        row["B"] = vec_json(s.frame.b);
        row["kappa"] = s.kappa;
        row["tau"] = s.tau;
        samples.push_back(std::move(row));
    }
    doc["samples"] = std::move(samples);
    return doc.dump() + "\n";
}

SampledCurve read_curve_json(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("curve file must be a JSON object");
    auto version = doc.find("version");
    if (version == doc.end()) throw FormatError("curve file is missing 'version'");
    if (!version->is_number_integer() || version->get<int>() != 1) throw FormatError("unsupported curve file version");
    auto signature = doc.find("signature");
    if (signature == doc.end() || !signature->is_string() || signature->get<std::string>() != "++-") {
        throw FormatError("curve file must declare signature \"++-\"");
    }
    auto cs = doc.find("case");
    if (cs == doc.end() || !cs->is_string()) throw FormatError("curve file is missing 'case'");
    auto step = doc.find("step");
    if (step == doc.end() || !step->is_number()) throw FormatError("curve file is missing 'step'");
    auto samples = doc.find("samples");
    if (samples == doc.end() || !samples->is_array()) throw FormatError("curve file is missing 'samples'");

    SampledCurve curve;
    curve.curve_case = parse_curve_case(cs->get<std::string>());
    curve.step = step->get<double>();
    curve.samples.reserve(samples->size());
    std::size_t row = 0;
    for (const auto& j : *samples) {
        if (!j.is_object()) throw FormatError("sample " + std::to_string(row) + " is not an object");
        CurveSample s;
        s.s = number_from(j, "s", row);
        s.point = vec_from(member(j, "point", row), "point", row);
        s.frame.t = vec_from(member(j, "T", row), "T", row);
        s.frame.n = vec_from(member(j, "N", row), "N", row);
        s.frame.b = vec_from(member(j, "B", row), "B", row);
        s.frame.curve_case = curve.curve_case;
        s.kappa = number_from(j, "kappa", row);
        s.tau = number_from(j, "tau", row);
        curve.samples.push_back(s);
        ++row;
    }
    check_ascending(curve);
    return curve;
}

std::string write_curve_csv(const SampledCurve& curve) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& s : curve.samples) {
        const double row[] = {s.s,         s.point.x,   s.point.y,   s.point.z,   s.frame.t.x,
                              s.frame.t.y, s.frame.t.z, s.frame.n.x, s.frame.n.y, s.frame.n.z,
                              s.frame.b.x, s.frame.b.y, s.frame.b.z, s.kappa,     s.tau};
        for (std::size_t i = 0; i < std::size(row); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

SampledCurve read_curve_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    for (auto l : split(text, '\n')) {
        l = trim(l);
        if (!l.empty()) lines.push_back(l);
    }
    if (lines.empty() || lines.front() != kCsvHeader) throw FormatError("CSV must start with the header " + std::string(kCsvHeader));
    SampledCurve curve;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split(lines[r], ',');
        if (cells.size() != 15) throw FormatError("CSV row " + std::to_string(r) + " must have 15 fields");
        std::array<double, 15> v{};
        for (std::size_t i = 0; i < 15; ++i) {
            const auto cell = trim(cells[i]);
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v[i]);
            if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
                throw FormatError("CSV row " + std::to_string(r) + ": malformed number '" + std::string(cell) + "'");
            }
        }
        CurveSample s;
        s.s = v[0];
        s.point = {v[1], v[2], v[3]};
        s.frame.t = {v[4], v[5], v[6]};
        s.frame.n = {v[7], v[8], v[9]};
        s.frame.b = {v[10], v[11], v[12]};
        s.kappa = v[13];
        s.tau = v[14];
        curve.samples.push_back(s);
    }
    check_ascending(curve);
    curve.curve_case = infer_case(curve.samples.front().frame);
    for (auto& s : curve.samples) s.frame.curve_case = curve.curve_case;
    const auto n = curve.samples.size();
    curve.step = n > 1 ? (curve.samples.back().s - curve.samples.front().s) / static_cast<double>(n - 1) : 0.0;
    return curve;
}

SampledCurve read_curve(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw FormatError("empty curve file");
    return text[first] == '{' ? read_curve_json(text) : read_curve_csv(text);
}

Plane parse_plane(std::string_view name) {
    if (name == "yz") return Plane::YZ;
    if (name == "xz") return Plane::XZ;
    if (name == "xy") return Plane::XY;
    throw FormatError("unknown plane '" + std::string(name) + "' (expected yz, xz or xy)");
}

std::string render_svg(const SampledCurve& curve, Plane plane, double width, double height) {
    if (curve.samples.empty()) throw FormatError("curve has no samples");
    if (!(width > 0.0) || !(height > 0.0)) throw FormatError("SVG width and height must be positive");

    std::vector<std::pair<double, double>> pts;
    pts.reserve(curve.samples.size());
    for (const auto& s : curve.samples) {
        const auto& p = s.point;
        double u = 0.0;
        double v = 0.0;
        switch (plane) {
        case Plane::YZ: u = p.y; v = p.z; break;
        case Plane::XZ: u = p.x; v = p.z; break;
        case Plane::XY: u = p.x; v = p.y; break;
        }
        // SVG's y axis points down.
        pts.emplace_back(u, -v);
    }
    double umin = pts[0].first, umax = umin, vmin = pts[0].second, vmax = vmin;
    for (const auto& [u, v] : pts) {
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    double w = umax - umin;
    double h = vmax - vmin;
    const double extent = std::max({w, h, 1e-12});
    // A flat bounding box still needs a visible view box.
    if (w < 1e-9 * extent) { umin -= 0.5 * extent; w = extent; }
    if (h < 1e-9 * extent) { vmin -= 0.5 * extent; h = extent; }
    const double mu = 0.05 * w;
    const double mv = 0.05 * h;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << format_double(width)
        << "\" height=\"" << format_double(height) << "\" viewBox=\"" << format_double(umin - mu) << ' '
        << format_double(vmin - mv) << ' ' << format_double(w + 2 * mu) << ' ' << format_double(h + 2 * mv)
        << "\" preserveAspectRatio=\"xMidYMid meet\">\n"
        << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"" << format_double(0.005 * std::max(w, h))
        << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) svg << ' ';
        svg << format_double(pts[i].first) << ',' << format_double(pts[i].second);
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

}  // namespace mspiral
