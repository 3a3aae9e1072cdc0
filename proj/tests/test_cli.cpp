#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_data.hpp"
#include "sphinv/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::vector<const char*> argv;
  argv.push_back("sphinv");
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = sphinv::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  RunResult r = run(args);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("inverse Y 0 1 -1 prints the Dottie number") {
  RunResult r = run({"inverse", "Y", "0", "1", "-1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.73908513321516") != std::string::npos);
}

TEST_CASE("eval json fields") {
  json j = run_json({"eval", "Y", "0", "2.0"});
  CHECK(j["family"] == "y");
  CHECK(j["n"] == 0);
  CHECK(j["x"] == 2.0);
  CHECK(j["derivative"] == 0);
  CHECK(j["value"].get<double>() == doctest::Approx(0.2080734182735712).epsilon(1e-15));

  // Nonfinite values (overflow of i_0 here) serialize as null.
  json p = run_json({"eval", "I", "0", "1000"});
  CHECK(p["value"].is_null());

  // Derivative orders ride the --deriv flag.
  json d = run_json({"eval", "J", "1", "0", "--deriv", "1"});
  CHECK(d["derivative"] == 1);
  CHECK(d["value"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-15));
}

TEST_CASE("eval constant-expression abscissas") {
  json j = run_json({"eval", "J", "0", "pi"});
  // j_0(pi) = sin(pi)/pi = 0 to double rounding.
  CHECK(std::fabs(j["value"].get<double>()) < 1e-16);
}

TEST_CASE("table json lists exact coefficient strings") {
  json j = run_json({"table", "K", "2"});
  CHECK(j["p"] == json::array({"1", "3", "3"}));
  CHECK(j["q"] == json::array());
  CHECK(j["rendered"] == "(1/x + 3/x^2 + 3/x^3)exp(-x)");
  CHECK(j["dlmf_scale"].get<double>() == doctest::Approx(1.5707963267948966));
  json y3 = run_json({"table", "Y", "3"});
  CHECK(y3["p"] == json::array({"0", "6", "0", "-15"}));
  CHECK(y3["q"] == json::array({"1", "0", "-15"}));
  CHECK(!y3.contains("dlmf_scale"));
}

TEST_CASE("extrema json carries pole limits as signed strings") {
  json j = run_json({"extrema", "Y", "0", "0"});
  CHECK(j["kind"] == "pole");
  CHECK(j["ordinate"].is_null());
  CHECK(j["limit_from_above"] == "-inf");
  CHECK(j["limit_from_below"] == "+inf");
  json m1 = run_json({"extrema", "Y", "0", "1"});
  CHECK(m1["kind"] == "stationary");
  CHECK(m1["abscissa"].get<double>() == doctest::Approx(2.798386045783887));
  CHECK(m1["ordinate"].get<double>() ==
        doctest::Approx(static_cast<double>(oracle::kY0Max1Ordinate)));
}

TEST_CASE("solve json: worked example sin(x) = x/2") {
  json j = run_json({"solve", "sin(x) = x/2"});
  CHECK(j["normal_form"]["family"] == "j");
  CHECK(j["normal_form"]["n"] == 0);
  CHECK(j["normal_form"]["c0"] == "1/2");
  CHECK(j["normal_form"]["power_shift"] == 1);
  CHECK(j["normal_form"]["annihilated_x0"] == true);
  REQUIRE(j["solutions"].size() == 2);
  CHECK(j["solutions"][0]["x"].get<double>() ==
        doctest::Approx(-1.8954942670339809).epsilon(1e-14));
  CHECK(j["solutions"][1]["x"].get<double>() ==
        doctest::Approx(1.8954942670339809).epsilon(1e-14));
  CHECK(j["solutions"][1]["closed_form"] == "inverse_1(j_0)(1/2)");
  CHECK(j["x0_caveat"] == true);
  CHECK(j["note"].get<std::string>().find("also admits x = 0") !=
        std::string::npos);
}

TEST_CASE("recognize json: Dottie digits") {
  json j = run_json({"recognize", "0.739085133215160642"});
  CHECK(j["precision"] == 18);
  REQUIRE(!j["candidates"].empty());
  CHECK(j["candidates"][0]["closed_form"] == "inverse_1(y_0)(-1)");
  CHECK(j["candidates"][0]["agreement"].get<double>() >= 17.5);
  CHECK(j["candidates"][0]["margin"].get<double>() >= 12.0);
}

TEST_CASE("lambert human output reports the residual") {
  RunResult r = run({"lambert", "0", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.56714329040978") != std::string::npos);
}

TEST_CASE("sample csv") {
  RunResult r = run({"sample", "J", "0", "0", "1", "3", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("x,f", 0) == 0);  // header line first
  // 3 points + header = 4 lines.
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 4);
  CHECK(r.out.find("0,1\n") != std::string::npos);        // j_0(0) = 1
  CHECK(r.out.find("1,0.84147098480789") != std::string::npos);
}

TEST_CASE("exit codes") {
  // Domain problem: evaluating at a pole without directional limits.
  CHECK(run({"eval", "Y", "0", "0"}).code == 2);
  // Unknown branch.
  CHECK(run({"inverse", "I", "0", "2", "1.5"}).code == 2);
  // Syntax problem, offset included on stderr.
  RunResult r = run({"solve", "co s(x) = 1"});
  CHECK(r.code == 3);
  CHECK(r.err.find("(at offset 2)") != std::string::npos);
  // Not transformable: exit 3 with the substitution hint in stderr.
  r = run({"solve", "exp(x) = 2*x"});
  CHECK(r.code == 3);
  CHECK(r.err.find("substitute") != std::string::npos);
  // Usage problems.
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"eval", "Y"}).code == 64);
  CHECK(run({"eval", "Y", "0", "1.0", "--format", "csv"}).code == 64);
  CHECK(run({}).code == 64);
  // Help is success.
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"solve", "--help"}).code == 0);
}

TEST_CASE("degree-mode worked example end to end") {
  // cos(x degrees) = x  ==  cos(pi x / 180) = x; substituting u = pi x / 180
  // turns it into y_0(u) = -180/pi, i.e. u = inverse_1(y_0)(-180/pi).
  json j = run_json({"inverse", "Y", "0", "1", "(-180/pi)"});
  double u = j["x"].get<double>();
  CHECK(u == doctest::Approx(static_cast<double>(oracle::kDegreeModeU)).epsilon(1e-15));
  double x = u * 180.0 / M_PI;
  CHECK(x == doctest::Approx(static_cast<double>(oracle::kDegreeModeX)).epsilon(1e-14));
  CHECK(j["closed_form"] == "inverse_1(y_0)(-180/pi)");
}
