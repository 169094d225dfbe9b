#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "latkit/version.hpp"

namespace fs = std::filesystem;
using latkit::cli::run;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / "latkit_cli_test") {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

const char* kE7 = R"({"name":"E7","gram":[[2,-1,0,0,0,0,0],[-1,2,-1,0,0,0,0],[0,-1,2,-1,0,0,-1],
[0,0,-1,2,-1,0,0],[0,0,0,-1,2,-1,0],[0,0,0,0,-1,2,0],[0,0,-1,0,0,0,2]]})";
const char* kUU = R"({"name":"U+U","gram":[[0,1,0,0],[1,0,0,0],[0,0,0,1],[0,0,1,0]]})";

}  // namespace

TEST_CASE("hodge") {
  const auto r = call({"hodge", "3", "3", "--json"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"hodge\":[0,5,5,0],\"rank\":10}\n");
  const auto k3 = Json::parse(call({"hodge", "2", "4"}).out);
  CHECK(k3["hodge"] == Json::parse("[1,19,1]"));
  CHECK(k3["signature"] == Json::parse("[3,19]"));
  const auto four = Json::parse(call({"--json", "hodge", "4", "3"}).out);
  CHECK(four["rank"] == 23);
  CHECK(four["primitive_signature"] == Json::parse("[20,2]"));
  CHECK(call({"hodge", "3", "2"}).code == 2);
}

TEST_CASE("lattice commands") {
  TempDir dir;
  const auto e7 = dir.write("e7.json", kE7);
  const auto aut = call({"lattice", "aut", e7, "--json"});
  CHECK(aut.code == 0);
  CHECK(Json::parse(aut.out)["order"] == 2903040);
  const auto info = Json::parse(call({"lattice", "info", e7}).out);
  CHECK(info["rank"] == 7);
  CHECK(info["det"] == 2);
  CHECK(info["parity"] == "even");
  CHECK(info["discriminant"]["q"] == Json::parse(R"(["3/2"])"));
  CHECK(call({"disc", e7}).code == 0);

  const auto uu = dir.write("uu.json", kUU);
  CHECK(call({"lattice", "aut", uu}).code == 2);
  CHECK(call({"lattice", "info", uu}).code == 0);
}

TEST_CASE("input errors") {
  TempDir dir;
  CHECK(call({"lattice", "info", dir.write("bad.json", "{\"gram\": [[1,2]")}).code == 2);
  CHECK(call({"lattice", "info", dir.write("asym.json", R"({"gram":[[1,2],[3,4]]})")}).code == 2);
  CHECK(call({"lattice", "info", dir.file("missing.json")}).code == 2);
  CHECK(call({"verify", "no-such-scenario"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
}

TEST_CASE("resource limits") {
  TempDir dir;
  const auto e7 = dir.write("e7.json", kE7);
  const auto r = call({"--limit-fqm", "1", "disc", e7});
  CHECK(r.code == 3);
  CHECK(r.out.empty());
  CHECK(call({"verify", "genus3", "--limit-fqm", "4", "--quiet"}).code == 3);
}

TEST_CASE("glue and extend") {
  TempDir dir;
  const auto uu = dir.write("uu.json", kUU);
  const auto basis = dir.write("m.json", R"({"basis":[[1,0,1,0],[0,1,0,2]]})");
  const auto g = call({"glue", uu, basis});
  CHECK(g.code == 0);
  const auto gj = Json::parse(g.out);
  CHECK(gj["glue_order"] == 9);
  CHECK(gj["a_m"]["invariant_factors"] == Json::parse("[3,3]"));

  const auto id = dir.write("id.json", R"({"matrix":[[1,0],[0,1]]})");
  const auto minus = dir.write("minus.json", R"({"matrix":[[-1,0],[0,-1]]})");
  const auto e = call({"extend", uu, basis, minus, minus});
  CHECK(e.code == 0);
  CHECK(Json::parse(e.out)["matrix"] == Json::parse("[[-1,0,0,0],[0,-1,0,0],[0,0,-1,0],[0,0,0,-1]]"));
  CHECK(call({"extend", uu, basis, id, minus}).code == 1);
  const auto bad = dir.write("bad.json", R"({"matrix":[[1,1],[0,1]]})");
  CHECK(call({"extend", uu, basis, bad, id}).code == 2);
  CHECK(call({"glue", dir.write("a2.json", R"({"gram":[[2,-1],[-1,2]]})"), dir.write("r.json", R"({"basis":[[1,0]]})")})
            .code == 2);
}

TEST_CASE("residues") {
  TempDir dir;
  const auto poly = dir.write("f.json", R"({"variables":5,"terms":[
    {"exponents":[3,0,0,0,0],"coefficient":1},{"exponents":[0,3,0,0,0],"coefficient":1},
    {"exponents":[0,0,3,0,0],"coefficient":1},{"exponents":[0,0,0,3,0],"coefficient":1},
    {"exponents":[1,0,0,0,2],"coefficient":1}]})");
  const auto act = dir.write("a.json", R"({"order":2,"exponents":[0,0,0,0,1]})");
  const auto r = call({"residues", poly, act, "2"});
  CHECK(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["degree"] == 1);
  CHECK(j["basis"].size() == 5);
  int minus = 0;
  for (const auto& e : j["eigenvalues"]) minus += e["exponent"] == 1;
  CHECK(minus == 4);
}

TEST_CASE("verify, output file and flags") {
  TempDir dir;
  const auto out = dir.file("report.json");
  const auto r = call({"verify", "genus4", "--no-timing", "-o", out});
  CHECK(r.code == 0);
  std::ifstream in(out);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == r.out);
  CHECK_FALSE(fs::exists(out + ".tmp"));
  const auto j = Json::parse(written);
  CHECK(j["scenario"] == "genus4");
  CHECK_FALSE(j.contains("elapsed_ms"));
  CHECK(call({"verify", "genus4", "--no-timing"}).out == r.out);

  const auto q = call({"--quiet", "hodge", "3", "3"});
  CHECK(q.code == 0);
  CHECK(q.out.empty());
  const auto v = call({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(latkit::kVersion) != std::string::npos);
}
