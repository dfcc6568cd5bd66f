#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;

    std::vector<json> lines() const {
        std::vector<json> v;
        std::istringstream in(out);
        for (std::string line; std::getline(in, line);) {
            if (!line.empty()) v.push_back(json::parse(line));
        }
        return v;
    }
    std::vector<std::string> rows() const {
        std::vector<std::string> v;
        std::istringstream in(out);
        for (std::string line; std::getline(in, line);) v.push_back(line);
        return v;
    }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = zetalab::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace

TEST_CASE("verify-fe example passes") {
    const Run r = run({"verify-fe", "--handle", "fchi", "--q", "5", "--chi-label", "2", "--points", "100", "--seed", "7"});
    CHECK(r.code == zetalab::cli::kExitOk);
    const auto lines = r.lines();
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].at("max_residual").get<double>() < 1e-8);
    CHECK(lines[0].at("points") == 100);
    CHECK(lines[0].at("tol") == 1e-8);
}

TEST_CASE("eval example records the route") {
    const Run r = run({"eval", "--handle", "dh", "--s", "2+0i"});
    CHECK(r.code == 0);
    const auto lines = r.lines();
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].at("route") == "hurwitz:euler-maclaurin");
    CHECK(lines[0].contains("tolerance"));
    CHECK(lines[0].at("value").at("re").get<double>() == doctest::Approx(1.0000683378097825).epsilon(1e-12));
}

TEST_CASE("zeros-count example") {
    const Run r = run({"zeros-count", "--handle", "rawzeta", "--rect", "0.4,0.6,14.0,14.3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"count\":1,") != std::string::npos);
}

TEST_CASE("usage errors name the flag and the rule") {
    Run r = run({"eval", "--handle", "z", "--a", "0.2", "--s", "2"});
    CHECK(r.code == zetalab::cli::kExitUsage);
    CHECK(r.err.find("--a") != std::string::npos);
    CHECK(r.err.find("r/q") != std::string::npos);

    r = run({"eval", "--handle", "z", "--a", "3/5", "--s", "2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("0 < a <= 1/2") != std::string::npos);

    r = run({"eval", "--handle", "fchi", "--q", "6", "--chi-label", "1", "--s", "2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--chi-label") != std::string::npos);
    CHECK(r.err.find("primitive") != std::string::npos);

    r = run({"eval", "--handle", "dh", "--a", "1/3", "--s", "2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--a") != std::string::npos);

    r = run({"eval", "--handle", "nope", "--s", "2"});
    CHECK(r.code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"eval", "--handle", "rawzeta", "--s", "1"}).code == 1);
    CHECK(run({"scan-real", "--handle", "rawzeta", "--sigma-lo", "0.5", "--sigma-hi", "1.5"}).code == 1);
    CHECK(run({"density", "--handle", "fchi", "--q", "5", "--chi-label", "1", "--T", "10", "--locate", "--output", "csv"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("tolerance failures exit 2 with the worst offender") {
    const Run r = run({"verify-fe", "--handle", "rawzeta", "--points", "5", "--tol", "1e-20"});
    CHECK(r.code == zetalab::cli::kExitTolerance);
    CHECK(r.err.find("worst residual") != std::string::npos);
    CHECK(r.lines().at(0).at("pass") == false);

    const Run rel = run({"relations", "--q", "5", "--tol", "1e-30"});
    CHECK(rel.code == 2);
}

TEST_CASE("output is byte-identical across runs") {
    const std::vector<std::string> args{"verify-fe", "--handle", "z", "--a", "2/7", "--points", "30", "--seed", "3", "--per-point"};
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.lines().size() == 31);
    CHECK(run({"verify-fe", "--handle", "z", "--a", "2/7", "--points", "30", "--seed", "4"}).out != run({"verify-fe", "--handle", "z", "--a", "2/7", "--points", "30", "--seed", "3"}).out);
}

TEST_CASE("CSV output") {
    const Run r = run({"eval", "--handle", "z", "--a", "1/3", "--s", "2+1i", "--s", "0.5+3i", "--output", "csv"});
    CHECK(r.code == 0);
    const auto rows = r.rows();
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "sigma,t,re,im,abs,route,tolerance\r");
    CHECK(rows[1].rfind("2,1,7.0655104392407297,", 0) == 0);
    CHECK(rows[1].find(";") == std::string::npos);

    const Run q = run({"eval", "--handle", "q", "--a", "1/3", "--s", "0.5+3i", "--output", "csv"});
    const auto qrows = q.rows();
    REQUIRE(qrows.size() == 2);
    // The joined route contains no comma, so it is not quoted.
    CHECK(qrows[1].find("hurwitz:euler-maclaurin;periodic:functional-equation") != std::string::npos);
}

TEST_CASE("handle JSON matches the shorthand") {
    const Run a = run({"eval", "--handle", "z", "--a", "1/3", "--s", "2+1i"});
    const Run b = run({"eval", "--handle-json", R"({"kind":"z","a":"1/3"})", "--s", "2+1i"});
    CHECK(a.out == b.out);
    CHECK(run({"eval", "--handle-json", "{not json", "--s", "2"}).code == 1);
}

TEST_CASE("zd reports the N in use") {
    const Run r = run({"eval", "--handle", "zd", "--l", "1,1,0,0,0,0", "--s", "2"});
    CHECK(r.code == 0);
    CHECK(r.lines().at(0).at("handle").contains("N"));
    const Run n = run({"eval", "--handle", "zd", "--l", "1,1,0,0,0,0", "--N", "7", "--s", "2"});
    CHECK(n.lines().at(0).at("handle").at("N") == 7.0);
    CHECK(run({"eval", "--handle", "zd", "--l", "0,0,0,0,0,0", "--s", "2"}).code == 1);
}

TEST_CASE("relations output") {
    const Run r = run({"relations", "--q", "7"});
    CHECK(r.code == 0);
    const auto lines = r.lines();
    CHECK(lines.size() == 16);  // eight relations at two default points
    for (const auto& l : lines) {
        CHECK(l.at("applicable") == true);
        CHECK(l.at("max_mismatch").get<double>() < 1e-10);
    }
}

TEST_CASE("selberg output") {
    const Run r = run({"selberg", "--handle", "zsev", "--a", "1/5"});
    CHECK(r.code == 0);
    const json j = r.lines().at(0);
    CHECK(j.at("degree").get<double>() == doctest::Approx(2.0));
    CHECK(j.at("conductor").get<double>() == doctest::Approx(25.0));
    CHECK(j.at("gamma_factors").size() == 2);
    CHECK(run({"selberg", "--handle", "z", "--a", "1/3"}).code == 1);
}

TEST_CASE("scan-real output") {
    const Run r = run({"scan-real", "--handle", "fchi", "--q", "5", "--chi-label", "2"});
    CHECK(r.code == 0);
    const json j = r.lines().back();
    CHECK(j.at("certified_nonvanishing") == true);
    const Run csv = run({"scan-real", "--handle", "fchi", "--q", "5", "--chi-label", "2", "--output", "csv"});
    CHECK(csv.rows().size() == 202);
}

TEST_CASE("density output") {
    const Run r = run({"density", "--handle", "fchi", "--q", "5", "--chi-label", "1", "--T", "20,40", "--output", "csv"});
    CHECK(r.code == 0);
    const auto rows = r.rows();
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "T,count,ratio,winding_integral,integrality_tol\r");
}

TEST_CASE("zeros-locate output") {
    const Run r = run({"zeros-locate", "--handle", "fchi", "--q", "5", "--chi-label", "2", "--rect", "0.3,0.7,0,6"});
    CHECK(r.code == 0);
    const auto lines = r.lines();
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].at("sigma").get<double>() == doctest::Approx(0.5));
    CHECK(lines[0].at("residual").get<double>() < 1e-9);
    CHECK(lines[2].at("located") == 2);
    CHECK(lines[2].at("failures").empty());
    const Run csv = run({"zeros-locate", "--handle", "fchi", "--q", "5", "--chi-label", "2", "--rect", "0.3,0.7,0,6", "--output", "csv"});
    CHECK(csv.rows().at(0) == "sigma,t,residual,multiplicity,newton_tol\r");
}
