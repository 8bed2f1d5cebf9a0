#include "doctest.h"

#include "hyperlevy/cli.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using hyperlevy::run_cli;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream o, e;
    int c = run_cli(args, o, e);
    return {c, o.str(), e.str()};
}

const std::vector<std::string> ehg = {"--beta", "1.2", "--gamma", "0.5", "--betah", "-0.2", "--gammah", "0.5"};

std::vector<std::string> with(std::vector<std::string> a, const std::vector<std::string>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

TEST_CASE("classify")
{
    Run r = run({"classify", "--beta", "1", "--gamma", "0.75", "--betah", "-0.25", "--gammah", "0.75"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["command"] == "classify");
    CHECK(j["classes"] == json::array({"EHG"}));
    CHECK(j["regime"] == "drifts_minus");

    Run bad = run({"classify", "--beta", "3", "--gamma", "0.5", "--betah", "0.5", "--gammah", "0.5"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("InadmissibleParameters") != std::string::npos);
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"psi", "--beta", "1.2"}).code == 2);
    CHECK(run(with({"--format", "text", "psi", "--z", "0.1"}, ehg)).code == 2);
    CHECK(run(with({"--format", "xml", "psi", "--z", "0.1"}, ehg)).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("psi as CSV")
{
    Run r = run(with({"--format", "csv", "psi", "--z", "0.1"}, ehg));
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string head, row;
    std::getline(in, head);
    std::getline(in, row);
    CHECK(head == "z_re,z_im,psi_re,psi_im");
    double v = std::stod(row.substr(row.find(',', row.find(',') + 1) + 1));
    CHECK(v == doctest::Approx(-0.2202350831294837).epsilon(1e-13));
}

TEST_CASE("whf check grid")
{
    Run r = run(with({"whf", "--check-grid", "200"}, ehg));
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["summary"]["max_residual"].get<double>() < 1e-10);
    CHECK(j["summary"]["killing_rate"].get<double>() == doctest::Approx(0.2641074655911756));
}

TEST_CASE("density, mellin and stable subcommands")
{
    Run d = run(with({"--format", "csv", "density", "--x", "1"}, ehg));
    CHECK(d.code == 0);
    CHECK(d.out.find("0.285218552149") != std::string::npos);
    Run m = run({"--format", "csv", "stable", "mellin", "--which", "t0", "--alpha", "1.5", "--s", "0.5"});
    CHECK(m.code == 0);
    CHECK(m.out.find("0.687385562404") != std::string::npos);
    Run out = run({"mellin", "--radial", "1.5", "--s", "1.5"});
    CHECK(out.code == 1);
    CHECK(out.err.find("OutOfStrip") != std::string::npos);
}

TEST_CASE("output file")
{
    std::string path = "test_cli_output.csv";
    Run r = run(with({"--format", "csv", "--output", path, "psi", "--theta-grid", "0", "5", "6"}, ehg));
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["artifacts"][0] == path);
    std::ifstream f(path);
    std::string line;
    int n = 0;
    while (std::getline(f, line)) ++n;
    CHECK(n == 7);
    std::remove(path.c_str());
}

TEST_CASE("simulations are reproducible")
{
    std::vector<std::string> a = {"--format", "csv", "--seed", "5", "simulate", "--what", "exit-law",
                                  "--alpha", "1.5", "--x", "0.5", "--n-paths", "500"};
    Run r1 = run(a), r2 = run(a);
    REQUIRE(r1.code == 0);
    CHECK(r1.out == r2.out);
    std::vector<std::string> b = a;
    b[3] = "6";
    CHECK(run(b).out != r1.out);

    setenv("LEVY_HG_SEED", "6", 1);
    Run r3 = run(a);
    unsetenv("LEVY_HG_SEED");
    CHECK(r3.out == run(b).out);

    Run e = run({"--format", "csv", "simulate", "--what", "endpoints", "--alpha", "1.5", "--t", "1", "--dt",
                 "0.1", "--n-paths", "100"});
    CHECK(e.code == 0);
    CHECK(e.out.rfind("estimate,std_error", 0) == 0);
}

TEST_CASE("verify runs a single criterion")
{
    Run r = run({"verify", "--quick", "--only", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
}
