#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fockde/cli.hpp"
#include "fockde/io.hpp"

using namespace fockde;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return std::string(FOCKDE_DATA_DIR) + "/" + name; }

fs::path scratch() {
  const char* env = std::getenv("FOCKDE_SCRATCH");
  fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "fockde_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

std::string slurp(const std::string& path) { return read_text_file(path); }

// Last non-comment CSV row split on commas.
std::vector<std::string> last_row(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') last = line;
  std::vector<std::string> cells;
  std::istringstream row(last);
  for (std::string c; std::getline(row, c, ',');) cells.push_back(c);
  return cells;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("norm of z in the classical space is sqrt(pi)") {
  const Run r = run({"norm", "--function", data("z.json")});
  REQUIRE(r.code == cli::ok);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["result"]["value"].get<double>() - std::sqrt(std::numbers::pi)) <= 1e-10);
  CHECK(j["verdict"] == "in space");
  CHECK(j["manifest"]["command"] == "norm");
  CHECK(j["manifest"]["inputs"]["function"]["path"] == data("z.json"));
  CHECK(j.contains("grid_hash"));
}

TEST_CASE("divergence is a verdict, not a failure") {
  const std::string weight = write_file("power1.json", R"({"kind":"power","alpha":1})");
  const std::string f = write_file("exp2z.json", R"({"type":"named","name":"exp_scaled","c":2})");
  const Run r = run({"norm", "--function", f, "--weight", weight, "--p", "inf"});
  REQUIRE(r.code == cli::ok);
  const json j = json::parse(r.out);
  CHECK(j["verdict"] == "diverging");
  CHECK(j["in_space"] == false);
  CHECK(j["space"]["p"] == "inf");
}

TEST_CASE("radial bound theorem end to end") {
  const Run r = run({"check", "--theorem", "T1.3", "--problem", data("radial_bound.json"), "--weight",
                     data("power4.json"), "--p", "2", "--q", "1"});
  REQUIRE(r.code == cli::ok);
  const json j = json::parse(r.out);
  CHECK(j["hypothesis_satisfied"] == true);
  CHECK(j["consistent"] == true);
  REQUIRE(j["report"]["probes"].size() == 3);
  for (const auto& p : j["report"]["probes"]) CHECK(p["in_space"] == true);
  CHECK(j["report"]["verdicts_relative_to"] == "configured constants");
}

TEST_CASE("solve f'' + f = 0 up to pi") {
  const std::string out = (scratch() / "cosine.csv").string();
  const double pi = std::numbers::pi;
  const Run r = run({"--out", out, "solve", "--problem", data("cosine.json"), "--theta", "0", "--r-max",
                     format_double(pi)});
  REQUIRE(r.code == cli::ok);
  CHECK(r.out == "wrote " + out + "\n");
  const std::string csv = slurp(out);
  CHECK(csv.rfind("# manifest {", 0) == 0);
  CHECK(csv.find("# grid_hash ") != std::string::npos);
  CHECK(csv.find("theta,r,re_f,im_f,abs_f,envelope,weighted_abs_f\n") != std::string::npos);
  const auto row = last_row(csv);
  REQUIRE(row.size() == 7);
  CHECK(std::stod(row[1]) == pi);
  CHECK(std::abs(std::stod(row[4]) - 1.0) <= 1e-8);
  const json series = json::parse(slurp(out + ".series.json"));
  CHECK(series["function"]["type"] == "series");
  CHECK(series["function"]["coeffs"].size() == 201);
}

TEST_CASE("solve requires an output path") {
  const Run r = run({"solve", "--problem", data("cosine.json")});
  CHECK(r.code == cli::input_error);
}

TEST_CASE("schema errors exit 1 with the JSON path") {
  const Run r = run({"check", "--theorem", "T1.1", "--problem", data("bad_coefficient.json")});
  CHECK(r.code == cli::input_error);
  CHECK(r.err.find("$.coefficients[1].coeffs") != std::string::npos);
  CHECK(r.err.find("bad_coefficient.json") != std::string::npos);
}

TEST_CASE("input errors exit 1") {
  CHECK(run({"norm", "--function", "/nonexistent.json"}).code == cli::input_error);
  CHECK(run({"norm"}).code == cli::input_error);
  CHECK(run({"frobnicate"}).code == cli::input_error);
  CHECK(run({"norm", "--function", data("z.json"), "--p", "zero"}).code == cli::input_error);
  CHECK(run({"check", "--theorem", "T9.9", "--problem", data("cosine.json")}).code == cli::input_error);
  CHECK(run({"check", "--theorem", "T1.3", "--problem", data("cosine.json")}).code == cli::input_error);
  CHECK(run({"battery", "--case", "no.such_case"}).code == cli::input_error);
  CHECK(run({"--grid-scale", "-1", "norm", "--function", data("z.json")}).code == cli::input_error);
  const std::string bad = write_file("broken.json", "{\"kind\": ");
  const Run r = run({"weights", "check", "--weight", bad});
  CHECK(r.code == cli::input_error);
  CHECK(r.err.find("invalid JSON") != std::string::npos);
}

TEST_CASE("numerical failures exit 2") {
  const std::string p = write_file(
      "overflow.json", R"({"order":2,"initial":[1,0],"coefficients":[{"type":"named","name":"constant","c":-1e300},{"type":"zero"}]})");
  const Run r = run({"--out", (scratch() / "overflow.csv").string(), "solve", "--problem", p, "--r-max", "0.001",
                     "--samples", "1", "--order", "60"});
  CHECK(r.code == cli::numerical_failure);
  CHECK(r.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const Run r = run({"--help"});
  CHECK(r.code == cli::ok);
  CHECK(r.out.find("battery") != std::string::npos);
}

TEST_CASE("weights check") {
  const Run r = run({"weights", "check", "--weight", data("power3.json")});
  REQUIRE(r.code == cli::ok);
  const json j = json::parse(r.out);
  CHECK(j["diagnostics"]["class_I"] == true);
  CHECK(j["diagnostics"]["sample_grid"].size() == 64);
  CHECK(j["derivative_norm_flags"]["all"] == true);
}

TEST_CASE("kernel table matches pi n!") {
  const Run r = run({"kernel", "table", "--weight", data("classical.json"), "--degree", "12"});
  REQUIRE(r.code == cli::ok);
  const auto row = last_row(r.out);
  REQUIRE(row.size() == 3);
  CHECK(row[0] == "12");
  CHECK(std::stod(row[2]) == doctest::Approx(std::numbers::pi * std::tgamma(13.0)).epsilon(1e-9));
}

TEST_CASE("kernel reproduce") {
  const Run r = run({"kernel", "reproduce", "--weight", data("classical.json"), "--function", data("z_squared.json"),
                     "--at", "1,1"});
  REQUIRE(r.code == cli::ok);
  const json j = json::parse(r.out);
  CHECK(j["rel_err"].get<double>() <= 1e-6);
  CHECK(j["reference"][1].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("envelope has no violations for the Airy-type equation") {
  const Run r = run({"envelope", "--problem", data("airy.json")});
  REQUIRE(r.code == cli::ok);
  CHECK(r.out.find(" violations 0\n") != std::string::npos);
  CHECK(r.out.find("theta,r,abs_f,envelope,dominated\n") != std::string::npos);
}

TEST_CASE("quadrature config file and grid scale enter the manifest") {
  const Run a = run({"--config", data("quadrature_coarse.json"), "--grid-scale", "2", "norm", "--function", data("z.json")});
  REQUIRE(a.code == cli::ok);
  const json j = json::parse(a.out);
  CHECK(j["manifest"]["quadrature"]["n_radial"] == 256);
  CHECK(j["manifest"]["grid_scale"] == 2.0);
  const Run b = run({"norm", "--function", data("z.json")});
  CHECK(json::parse(b.out)["grid_hash"] != j["grid_hash"]);
}

TEST_CASE("single battery case") {
  const Run r = run({"--seed", "5", "battery", "--case", "ode.linearity", "--case", "kernel.classical_closed_form"});
  REQUIRE(r.code == cli::ok);
  const json j = json::parse(r.out);
  CHECK(j["all_passed"] == true);
  CHECK(j["cases"].size() == 2);
  CHECK(j["manifest"]["seed"] == 5);
}

TEST_CASE("candidate embedded in the problem file") {
  const std::string p = write_file(
      "forcing.json",
      R"({"order":2,"initial":[0,1],"coefficients":[{"type":"named","name":"constant","c":1},{"type":"zero"}],"candidate":{"type":"poly","coeffs":[0,1]}})");
  const Run r = run({"check", "--theorem", "T1.4", "--problem", p});
  REQUIRE(r.code == cli::ok);
  const json j = json::parse(r.out);
  CHECK(j["candidate"]["type"] == "poly");
  CHECK(j["hypothesis_satisfied"] == true);
  CHECK(j["consistent"] == true);
}

TEST_CASE("reruns are byte-identical") {
  const std::string a = (scratch() / "table_a.csv").string(), b = (scratch() / "table_b.csv").string();
  REQUIRE(run({"--out", a, "kernel", "table", "--weight", data("power3.json")}).code == cli::ok);
  REQUIRE(run({"--out", b, "kernel", "table", "--weight", data("power3.json")}).code == cli::ok);
  // the manifest records the output path, so compare after it
  const std::string x = slurp(a), y = slurp(b);
  CHECK(x.substr(x.find('\n')) == y.substr(y.find('\n')));
  REQUIRE(run({"--out", a, "kernel", "table", "--weight", data("power3.json")}).code == cli::ok);
  CHECK(slurp(a) == x);

  const Run n1 = run({"norm", "--function", data("z.json"), "--weight", data("power3.json")});
  const Run n2 = run({"norm", "--function", data("z.json"), "--weight", data("power3.json")});
  CHECK(n1.out == n2.out);
  const Run c1 = run({"check", "--theorem", "T1.1", "--problem", data("cosine.json")});
  const Run c2 = run({"check", "--theorem", "T1.1", "--problem", data("cosine.json")});
  CHECK(c1.out == c2.out);
}

}  // TEST_SUITE
