#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fpdense/cli.hpp"

namespace fs = std::filesystem;
using fpdense::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fpdense_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("lift prints the worked witness") {
  const auto r = invoke({"lift", "--chain", "1,2,3,5", "--min-p", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("p=29") != std::string::npos);
  CHECK(r.out.find("(17,20,18)") != std::string::npos);

  const auto wrong = invoke({"lift", "--chain", "1,2,3,5", "--p", "31"});
  CHECK(wrong.code == 3);
}

TEST_CASE("enumerate emits CSV") {
  const auto r = invoke({"enumerate", "--p", "5", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "x1,x2\n1,1\n2,3\n3,2\n4,4\n");

  const auto path = scratch("points.csv");
  CHECK(invoke({"enumerate", "--p", "5", "--n", "2", "--csv", path.string()}).code == 0);
  CHECK(slurp(path) == r.out);
}

TEST_CASE("approx then verify") {
  const auto path = scratch("cert.json");
  const auto r = invoke({"approx", "--target", "1/2,2/3,3/5", "--eps", "1/5", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(invoke({"verify", "--cert", path.string()}).code == 0);

  // Same input, same bytes.
  const std::string first = slurp(path);
  REQUIRE(invoke({"approx", "--target", "1/2,2/3,3/5", "--eps", "1/5", "--out", path.string()}).code == 0);
  CHECK(slurp(path) == first);

  const auto structured = invoke({"approx", "--target", "0.5,0.25", "--eps", "0.1", "--format", "structured"});
  CHECK(structured.code == 0);
  CHECK(structured.out.find("\"format\"") != std::string::npos);
}

TEST_CASE("poly certificates verify through the same command") {
  const auto path = scratch("poly.json");
  REQUIRE(invoke({"poly", "--degree", "2", "--coeffs", "1,0", "--target", "1/2,1/2,1/2", "--eps", "1/10", "--out",
                  path.string()})
              .code == 0);
  CHECK(invoke({"verify", "--cert", path.string()}).code == 0);
  std::string text = slurp(path);
  const auto at = text.find("\"values\": [\n    \"");
  REQUIRE(at != std::string::npos);
  text.insert(at + 17, "9");
  std::ofstream(path, std::ios::binary) << text;
  CHECK(invoke({"verify", "--cert", path.string()}).code == 1);
}

TEST_CASE("verify rejects tampered and malformed certificates") {
  const auto path = scratch("tampered.json");
  REQUIRE(invoke({"approx", "--target", "1/2,2/3,3/5", "--eps", "1/5", "--out", path.string()}).code == 0);
  std::string text = slurp(path);
  const auto at = text.find("\"max_error\": \"");
  REQUIRE(at != std::string::npos);
  text.insert(at + 14, "1");  // prefix a digit onto the numerator
  std::ofstream(path, std::ios::binary) << text;
  CHECK(invoke({"verify", "--cert", path.string()}).code == 1);

  std::ofstream(path, std::ios::binary) << "{ not json";
  CHECK(invoke({"verify", "--cert", path.string()}).code == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"approx", "--target", "1/2"}).code == 2);
  CHECK(invoke({"approx", "--target", "1/2", "--eps", "1/5"}).code == 2);
  CHECK(invoke({"approx", "--target", "1/2,3/2", "--eps", "1/5"}).code == 2);
  CHECK(invoke({"approx", "--target", "1/2,1/2", "--eps", "abc"}).code == 2);
  CHECK(invoke({"lift", "--chain", "1,2,3,5", "--p", "29", "--min-p", "2"}).code == 2);
  CHECK(invoke({"enumerate", "--p", "6", "--n", "2"}).code == 2);
}

TEST_CASE("search exhaustion exits 3") {
  setenv("FPDENSE_PRIME_SEARCH_STEPS", "1", 1);
  const auto r = invoke({"approx", "--target", "1/2,2/3,3/5", "--eps", "1/100"});
  unsetenv("FPDENSE_PRIME_SEARCH_STEPS");
  CHECK(r.code == 3);
  CHECK(r.err.find("SearchExhausted") != std::string::npos);
}

TEST_CASE("other subcommands") {
  const auto j = invoke({"jacobsthal", "--b", "30"});
  CHECK(j.code == 0);
  CHECK(j.out == "g(30) = 6\n");

  CHECK(invoke({"chain", "--target", "1/2,2/3,3/5", "--eps", "1/10"}).code == 0);
  CHECK(invoke({"poly", "--degree", "2", "--coeffs", "1,0", "--target", "1/2,1/2", "--eps", "1/10"}).code == 0);
  CHECK(invoke({"nearest", "--p", "5", "--target", "0,0"}).out.find("1/5") != std::string::npos);

  const auto d = invoke({"discrepancy", "--p-list", "101,1009", "--n", "2", "--k", "4"});
  CHECK(d.code == 0);
  CHECK(d.out.find("p=101") != std::string::npos);
  CHECK(d.out.find("p=1009") != std::string::npos);
  CHECK(invoke({"discrepancy", "--n", "2", "--k", "4"}).code == 2);
}
