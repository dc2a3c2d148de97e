#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "projkit/error.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = projkit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kAllParabolic =
    R"({"surface":"pants","boundaries":[{"kind":"parabolic"},{"kind":"parabolic"},)"
    R"({"kind":"parabolic"}],"s":2,"t":1})";

// Inscribed-triangle flags at alpha = 1/4: T = (1 - alpha)/alpha = 3.
const std::string kInscribedFlags =
    R"([{"point":[0,0.5,1],"line":[[0,0,1],[0,1,1]]},)"
    R"({"point":[0.5,0.5,1],"line":[[0,1,1],[1,0,1]]},)"
    R"({"point":[0.25,0,1],"line":[[0,0,1],[1,0,1]]}])";

}  // namespace

TEST_CASE("convert all-parabolic record") {
  const Result r = run({"convert", "--input", kAllParabolic});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"tplus\": 1.0986") != std::string::npos);
  CHECK(r.out.find("\"tminus\": -1.0986") != std::string::npos);
  CHECK(r.out.find("\"sigma1_b1\": 0.69314718055994") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("convert torus record") {
  const Result r = run({"convert", "--format", "csv", "--input",
                        R"({"surface":"torus","boundaries":[{"kind":"parabolic"},)"
                        R"({"lambda":0.2,"tau":5,"kind":"hyperbolic"}],"s":2,"t":1,"u":1,"v":0.5})"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("sigma_c1,sigma_c2") != std::string::npos);
  CHECK(r.out.find(",-0.5,2.5\n") != std::string::npos);
}

TEST_CASE("classify the unipotent Jordan block") {
  const Result r = run({"classify", "--input", "[1,1,0,0,1,1,0,0,1]"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("parabolic") != std::string::npos);
  const Result h = run({"classify", "--format", "json", "--input", "[4,0,0,0,1,0,0,0,0.25]"});
  REQUIRE(h.code == 0);
  CHECK(h.out.find("\"kind\": \"hyperbolic\"") != std::string::npos);
  CHECK(h.out.find("\"lambda1\": 4") != std::string::npos);
}

TEST_CASE("invariants of inscribed-triangle flags") {
  const Result r = run({"invariants", "--format", "csv", "--input", kInscribedFlags});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("T,log_T\n", 0) == 0);
  CHECK(r.out.find("\n3,1.0986122886681") != std::string::npos);
}

TEST_CASE("distance and bulge") {
  const Result d = run({"distance", "--format", "json", "--input",
                        R"({"domain":{"conic":[1,0,1,0,0,-1]},"x":[0,0],"y":[0.5,0]})"});
  REQUIRE(d.code == 0);
  CHECK(d.out.find("\"distance\": 0.54930614433405478") != std::string::npos);
  const Result b = run({"bulge", "--format", "csv", "--v", "0.5", "--input",
                        R"({"sigma1":1,"sigma2":2})"});
  REQUIRE(b.code == 0);
  CHECK(b.out.find("0.5,1,2,-0.5,3.5,3\n") != std::string::npos);
}

TEST_CASE("sweep logs its config and reaches the parabolic limit") {
  const std::string input =
      R"({"surface":"pants","boundaries":[{"lambda":0.2,"tau":5,"kind":"hyperbolic"},)"
      R"({"kind":"parabolic"},{"kind":"parabolic"}],"s":1,"t":1})";
  const Result r = run({"sweep", "--steps", "4", "--input", input});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# config: subcommand=sweep", 0) == 0);
  CHECK(r.out.find("step,fraction,lambda,tau,kind,sigma1_b1") != std::string::npos);
  CHECK(r.out.find("4,1,1,2,parabolic,") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"convert", "--input", "{\"surface\":"}).code == 2);
  CHECK(run({"convert", "--input", R"({"surface":"pants"})"}).code == 2);
  CHECK(run({"classify", "--input", "[1,2,3]"}).code == 2);
  CHECK(run({"classify", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"classify", "--input", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"sweep", "--steps", "0", "--input", kAllParabolic}).code == 2);
  CHECK(run({"classify", "--tol", "-1", "--input", "[1,0,0,0,1,0,0,0,1]"}).code == 2);

  const Result det = run({"classify", "--input", "[2,0,0,0,1,0,0,0,1]"});
  CHECK(det.code == 1);
  CHECK(det.err.rfind("NotUnimodular", 0) == 0);
  const Result generic = run({"invariants", "--input",
                              R"([{"point":[1,0,0],"line":[[1,0,0],[0,1,0]]},)"
                              R"({"point":[1,0,0],"line":[[1,0,0],[0,0,1]]},)"
                              R"({"point":[0,0,1],"line":[[0,0,1],[0,1,0]]}])"});
  CHECK(generic.code == 1);
  CHECK(generic.err.rfind("NonGenericFlags", 0) == 0);
  const Result complex = run({"convert", "--input",
                              R"({"surface":"pants","boundaries":[{"lambda":0.25,"tau":3},)"
                              R"({"kind":"parabolic"},{"kind":"parabolic"}],"s":1,"t":1})"});
  CHECK(complex.code == 1);
  CHECK(complex.err.rfind("ComplexEigenvalues", 0) == 0);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("PROJKIT_TOL sets the default tolerance") {
  // diag(1+1e-4, 1, 1/(1+1e-4)) is hyperbolic at the default tolerance and
  // parabolic-like under a coarse one.
  const std::string m = "[1.0001,0,0,0,1,0,0,0,0.99990000999900009999]";
  CHECK(run({"classify", "--input", m}).out.find("hyperbolic") != std::string::npos);
  ::setenv("PROJKIT_TOL", "1e-2", 1);
  const Result coarse = run({"classify", "--input", m});
  CHECK(coarse.out.find("hyperbolic") == std::string::npos);
  CHECK(run({"classify", "--tol", "1e-9", "--input", m}).out.find("hyperbolic") !=
        std::string::npos);
  ::setenv("PROJKIT_TOL", "abc", 1);
  CHECK(run({"classify", "--input", m}).code == 2);
  ::unsetenv("PROJKIT_TOL");
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> area{"area", "--alpha", "0.5", "--alpha", "0.25",
                                      "--cellsize", "0.02", "--truncation", "2"};
  const Result a = run(area), b = run(area);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::vector<std::string> par = area;
  par.push_back("--parallel");
  const Result p = run(par);
  // Same numbers; only the config comment differs.
  CHECK(a.out.substr(a.out.find('\n')) == p.out.substr(p.out.find('\n')));
  CHECK(run({"convert", "--input", kAllParabolic}).out ==
        run({"convert", "--input", kAllParabolic}).out);
}

TEST_CASE("error names are distinct") {
  using projkit::ErrorCode;
  std::set<std::string> names;
  const ErrorCode all[] = {
      ErrorCode::DegenerateVector,   ErrorCode::DependentSpan,      ErrorCode::NonIncidentFlag,
      ErrorCode::NonGenericFlags,    ErrorCode::NonPositiveRatio,   ErrorCode::NotUnimodular,
      ErrorCode::WrongClass,         ErrorCode::InvalidDomain,      ErrorCode::PointOutsideDomain,
      ErrorCode::CoincidentPoints,   ErrorCode::RegionNotContained, ErrorCode::ComplexEigenvalues,
      ErrorCode::NonPositiveParameter, ErrorCode::InconsistentStratum, ErrorCode::InvalidArgument};
  for (ErrorCode c : all) names.insert(std::string(projkit::error_name(c)));
  CHECK(names.size() == std::size(all));
  CHECK(names.count("InvalidInput") == 0);
  CHECK(names.count("UsageError") == 0);
}
