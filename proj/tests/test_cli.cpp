#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "sepcmc/cli.hpp"
#include "sepcmc/mesh.hpp"

using namespace sepcmc;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sepcmc_test_" + name)).string();
}

}  // namespace

TEST_CASE("classify prints the class and waist radii") {
  const Run r = run({"classify", "--H", "-1", "--c", "0.1875"});
  CHECK(r.code == 0);
  CHECK(r.out == "Unduloid r_min=0.25 r_max=0.75\n");
  CHECK(run({"classify", "--H", "-1", "--c", "0"}).out.rfind("Sphere", 0) == 0);
  CHECK(run({"classify", "--H", "-1", "--c", "-0.1"}).out.rfind("Nodoid", 0) == 0);
}

TEST_CASE("usage errors exit with 2 and write to the diagnostic stream") {
  const Run unknown = run({"classify", "--H", "-1", "--c", "0.1", "--bogus"});
  CHECK(unknown.code == 2);
  CHECK(unknown.out.empty());
  CHECK_FALSE(unknown.err.empty());
  CHECK(run({}).code == 2);
  CHECK(run({"nosuch"}).code == 2);
  CHECK(run({"classify", "--H", "x", "--c", "0"}).code == 2);
}

TEST_CASE("gallery list and verify") {
  const Run list = run({"gallery", "list"});
  CHECK(list.code == 0);
  CHECK(list.out.rfind("name,expected_H,tolerance,separable\n", 0) == 0);
  const Run v = run({"gallery", "verify", "sphere"});
  CHECK(v.code == 0);
  const auto j = nlohmann::json::parse(v.out);
  CHECK(j["pass"] == true);
  CHECK(j["sup_residual"].get<double>() <= 1e-10);
}

TEST_CASE("verify a surface spec file") {
  const std::string path = temp_path("sphere.json");
  write_text_file(path, R"({"f":{"name":"quadratic","params":[1,0,0],"domain":[-1.2,1.2]},)"
                        R"("g":{"name":"quadratic","params":[1,0,0],"domain":[-1.2,1.2]},)"
                        R"("h":{"name":"quadratic","params":[1,0,-1],"domain":[-1.2,1.2]}})");
  const Run good = run({"verify", "--spec", path, "--H", "-1"});
  CHECK(good.code == 0);
  const Run bad = run({"verify", "--spec", path, "--H", "0"});
  CHECK(bad.code == 1);
  CHECK(nlohmann::json::parse(bad.out)["sup_residual"].get<double>() == doctest::Approx(16.0).epsilon(1e-9));
  CHECK(run({"verify", "--spec", temp_path("missing.json"), "--H", "0"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("generate then mesh") {
  const std::string csv = temp_path("profile.csv"), obj = temp_path("mesh.obj");
  const Run g = run({"generate", "--H", "-1", "--c", "0.1875", "--zmax", "0.5", "--out", csv});
  CHECK(g.code == 0);
  const ProfileCurve p = profile_from_csv(read_text_file(csv));
  CHECK(p.size() > 10);
  const Run m = run({"mesh", "--from", csv, "--angular", "16", "--out", obj});
  CHECK(m.code == 0);
  const TriangleMesh mesh = parse_obj(read_text_file(obj));
  CHECK(mesh.vertices.size() == p.size() * 16);
  CHECK(check_manifold(mesh).ok());
  std::filesystem::remove(csv);
  std::filesystem::remove(obj);
}

TEST_CASE("identities subcommand prints one CSV row per check") {
  const Run r = run({"identities", "--seed", "2", "--trials", "20"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("pz_square_witness,exact_rational,1,0.000e+00,PASS") != std::string::npos);
}

TEST_CASE("search reports a JSON summary") {
  const Run r = run({"search", "--H", "-1", "--knots", "12", "--grid", "20", "--start", "sphere", "--perturb", "1e-3",
                     "--seed", "3"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["converged"] == true);
}

TEST_CASE("identical arguments give identical output") {
  const std::vector<std::string> args{"search", "--H", "-1", "--knots", "10", "--grid", "15", "--seed", "5",
                                      "--max-iter", "20"};
  CHECK(run(args).out == run(args).out);
  CHECK(run({"gallery", "verify", "nodoid", "--seed", "4"}).out == run({"gallery", "verify", "nodoid", "--seed", "4"}).out);
}
