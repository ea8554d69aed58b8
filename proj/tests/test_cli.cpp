#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mspiral/cli.hpp"
#include "mspiral/curve_io.hpp"
#include "mspiral/errors.hpp"
#include "mspiral/planar.hpp"

using namespace mspiral;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string generate(const std::string& mode, const std::string& kappa, const std::string& tau = "0",
                     const std::string& extra_case = "timelike", const std::string& s1 = "1",
                     const std::string& step = "0.001") {
    auto r = run({"generate", "--mode", mode, "--case", extra_case, "--kappa", kappa, "--tau", tau, "--s0", "0",
                  "--s1", s1, "--step", step});
    REQUIRE(r.code == 0);
    return r.out;
}

std::size_t count(const std::string& text, const std::string& what) {
    std::size_t n = 0;
    for (auto p = text.find(what); p != std::string::npos; p = text.find(what, p + 1)) ++n;
    return n;
}

SampledCurve sample_curve() {
    return integrate(CurveCase::SpacelikeSpacelikeNormal, ProfileExpr::parse("2*s+1"), ProfileExpr::parse("s/3"), {},
                     default_initial_frame(CurveCase::SpacelikeSpacelikeNormal), 0.0, 1.0, 0.05);
}

}  // namespace

TEST_CASE("json round trip is byte identical") {
    const auto text = write_curve_json(sample_curve());
    const auto again = write_curve_json(read_curve_json(text));
    CHECK(text == again);
    const auto back = read_curve(text);
    CHECK(back.curve_case == CurveCase::SpacelikeSpacelikeNormal);
    CHECK(back.samples.size() == 21);
}

TEST_CASE("csv and json agree") {
    const auto curve = sample_curve();
    const auto from_csv = read_curve(write_curve_csv(curve));
    const auto from_json = read_curve(write_curve_json(curve));
    CHECK(write_curve_csv(curve).rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(from_csv.curve_case == from_json.curve_case);
    REQUIRE(from_csv.samples.size() == from_json.samples.size());
    for (std::size_t i = 0; i < from_csv.samples.size(); ++i) {
        const auto& a = from_csv.samples[i];
        const auto& b = from_json.samples[i];
        CHECK(a.s == b.s);
        CHECK(a.point == b.point);
        CHECK(a.frame.t == b.frame.t);
        CHECK(a.frame.n == b.frame.n);
        CHECK(a.frame.b == b.frame.b);
        CHECK(a.kappa == b.kappa);
        CHECK(a.tau == b.tau);
    }
}

TEST_CASE("curve file validation") {
    CHECK_THROWS_AS(read_curve_json("{\"signature\":\"++-\"}"), FormatError);
    CHECK_THROWS_AS(read_curve_json("{\"version\":2,\"signature\":\"++-\",\"case\":\"timelike\",\"step\":1,\"samples\":[]}"),
                    FormatError);
    CHECK_THROWS_AS(read_curve_json("{\"version\":1,\"signature\":\"++-\",\"case\":\"timelike\",\"step\":1,\"samples\":[]}"),
                    FormatError);
    CHECK_THROWS_AS(read_curve_json("{\"version\":1,\"signature\":\"+++\",\"case\":\"timelike\",\"step\":1,\"samples\":[]}"),
                    FormatError);
    CHECK_THROWS_AS(read_curve_json("{\"version\":1,\"signature\":\"++-\",\"case\":\"timelike\",\"step\":1,\"samples\":"
                                    "[{\"s\":0,\"point\":[0,0],\"T\":[0,0,1],\"N\":[1,0,0],\"B\":[0,1,0],\"kappa\":1,"
                                    "\"tau\":0}]}"),
                    FormatError);
    CHECK_THROWS_AS(read_curve_json("{not json"), FormatError);
    CHECK_THROWS_AS(read_curve_csv("s,x\n0,1\n"), FormatError);
    CHECK_THROWS_AS(read_curve(""), FormatError);
}

TEST_CASE("svg export") {
    PlanarSpiralSpec p;
    p.kappa = ProfileExpr::parse("s");
    p.s1 = 2.0;
    p.n = 101;
    const auto svg = render_svg(generate_planar(p), Plane::YZ, 800, 600);
    CHECK(svg.find("<svg") != std::string::npos);
    const auto pts = svg.substr(svg.find("points=\""));
    CHECK(count(pts.substr(0, pts.find("\"/>")), ",") == 101);
    CHECK_THROWS_AS(parse_plane("zz"), FormatError);
}

TEST_CASE("cli generate") {
    auto r = run({"generate", "--mode", "planar-timelike", "--kappa", "s", "--s0", "0", "--s1", "2", "--step", "0.001"});
    REQUIRE(r.code == 0);
    CHECK(read_curve(r.out).samples.size() == 2001);

    r = run({"generate", "--mode", "planar-spacelike", "--kappa", "1/s", "--s0", "0", "--s1", "1"});
    CHECK(r.code == 3);
    CHECK(r.err.find("s=0") != std::string::npos);

    r = run({"generate", "--mode", "frenet", "--case", "timelike", "--kappa", "2**s", "--tau", "s"});
    CHECK(r.code == 2);
    CHECK(r.err.find("offset 2") != std::string::npos);

    CHECK(run({"generate", "--mode", "frenet", "--case", "spacelike-null-normal", "--kappa", "1"}).code != 0);
    CHECK(run({"generate", "--mode", "sideways", "--kappa", "1"}).code == 2);
    CHECK(run({"generate", "--kappa", "1", "--s0", "1", "--s1", "0"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);

    r = run({"generate", "--mode", "frenet", "--case", "timelike", "--kappa", "1", "--tau", "1", "--format", "csv",
             "--step", "0.1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind(std::string(kCsvHeader), 0) == 0);
}

TEST_CASE("cli files are written whole") {
    const auto dir = std::filesystem::temp_directory_path() / "mspiral_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "curve.json").string();
    auto r = run({"generate", "--mode", "frenet", "--case", "timelike", "--kappa", "2*s+1", "--tau", "s", "--out", path});
    REQUIRE(r.code == 0);
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    r = run({"classify", "--in", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("euler: true") != std::string::npos);
    const auto svg_path = (dir / "curve.svg").string();
    CHECK(run({"export-svg", "--in", path, "--plane", "xz", "--out", svg_path}).code == 0);
    CHECK(std::filesystem::file_size(svg_path) > 100);
    CHECK(run({"classify", "--in", (dir / "missing.json").string()}).code == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("cli classify") {
    auto r = run({"classify", "--in", "-"}, generate("frenet", "2*s+1", "s+3"));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("euler: true") != std::string::npos);
    CHECK(r.out.find("bertrand: A = -0.2") != std::string::npos);

    r = run({"classify", "--in", "-", "--json"}, generate("frenet", "2", "1"));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"helix\"") != std::string::npos);
    CHECK(r.out.find("0.5") != std::string::npos);

    r = run({"classify", "--in", "-", "--estimate", "--tolerance", "1e-3"},
            generate("frenet", "2*s+1", "s", "timelike", "1", "0.001"));
    CHECK(r.out.find("euler: true") != std::string::npos);

    r = run({"classify", "--in", "-"}, generate("frenet", "0", "0", "timelike", "1", "0.1"));
    CHECK(r.code == 3);
    CHECK(r.err.find("torsion undefined on straight segments") != std::string::npos);

    CHECK(run({"classify", "--in", "-"}, "{\"version\":1}").code == 2);
    CHECK(run({"classify", "--in", "-"},
              "{\"version\":1,\"signature\":\"++-\",\"case\":\"timelike\",\"step\":1,\"samples\":[]}")
              .code == 2);
}

TEST_CASE("cli verify") {
    const auto euler = generate("frenet", "2*s+0.5", "-s+1", "timelike", "2");
    auto r = run({"verify", "--check", "darboux", "--in", "-"}, euler);
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);

    r = run({"verify", "--check", "darboux", "--in", "-"}, generate("frenet", "s*s", "s", "timelike", "2"));
    CHECK(r.code == 1);

    const auto gen = generate("frenet", "(s+2)/(2*s+1)", "1");
    CHECK(run({"verify", "--check", "developable", "--abcd", "2,1,1,2", "--in", "-"}, gen).code == 0);
    CHECK(run({"verify", "--check", "developable", "--abcd", "1,0,0,1", "--in", "-"}, gen).code == 1);
    CHECK(run({"verify", "--check", "involute", "--abcd", "2,1,1,2", "--lambda", "0.3", "--in", "-"}, gen).code == 0);
    CHECK(run({"verify", "--check", "involute", "--in", "-"}, gen).code == 2);
    CHECK(run({"verify", "--check", "involute", "--abcd", "1,2", "--in", "-"}, gen).code == 2);

    r = run({"verify", "--check", "bertrand", "--in", "-"}, generate("frenet", "2", "1"));
    CHECK(r.code == 1);
    CHECK(r.out.find("profiles proportional") != std::string::npos);

    r = run({"verify", "--check", "bertrand", "--in", "-"},
            generate("frenet", "2*s+1", "s+3", "spacelike-timelike-normal", "1"));
    CHECK(r.code == 0);
    CHECK(r.out.find("r: 0.2") != std::string::npos);

    CHECK(run({"verify", "--check", "ucurve", "--in", "-"}, generate("frenet", "1/(s+1)", "1/(2*s+5)")).code == 0);
    CHECK(run({"verify", "--check", "ucurve", "--in", "-"}, generate("frenet", "s-0.5", "1", "timelike", "1", "0.01"))
              .code == 3);
}

TEST_CASE("cli export-svg") {
    auto r = run({"export-svg", "--in", "-", "--plane", "yz"},
                 generate("planar-timelike", "s", "0", "timelike", "1", "0.01"));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("<polyline") != std::string::npos);

    r = run({"export-svg", "--in", "-", "--plane", "xz"}, generate("planar-spacelike", "1", "0", "timelike", "1", "0.01"));
    CHECK(r.code == 0);

    CHECK(run({"export-svg", "--in", "-"},
              "{\"version\":1,\"signature\":\"++-\",\"case\":\"timelike\",\"step\":1,\"samples\":[]}")
              .code == 2);
    CHECK(run({"export-svg", "--in", "-", "--plane", "ab"}, "").code == 2);
}
