// End-to-end checks of the CLI surface: exit codes, CSV/JSON schemas,
// determinism, config-file precedence.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef QCORR_CLI_PATH
#error "QCORR_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(QCORR_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.out.append(buf.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

constexpr const char* kHeader =
    "family,gamma,c,s,phi,theta,J,B,t,concurrence,discord,linear_entropy,"
    "purity,horodecki_m,bell_violated,min_eig,physical";

}  // namespace

TEST_CASE("info: maximally mixed werner") {
  const RunResult r = run("info --family werner --gamma 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("linear_entropy: 1") != std::string::npos);
  CHECK(r.out.find("concurrence:    0") != std::string::npos);
  CHECK(r.out.find("horodecki_m:    0") != std::string::npos);
}

TEST_CASE("info: violating two-parameter state") {
  const RunResult r =
      run("info --family rho-m --c 0.5 --s 0.125 --phi 0.6");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("concurrence:    0.5") != std::string::npos);
  CHECK(r.out.find("linear_entropy: 0.125") != std::string::npos);
  CHECK(r.out.find("bell_violated:  yes") != std::string::npos);
}

TEST_CASE("info: unphysical phi exits 2 and names the invariant") {
  const RunResult r =
      run("info --family rho-m --c 0.5 --s 0.125 --phi 0.3");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("Unphysical: min eigenvalue") != std::string::npos);
}

TEST_CASE("info: missing parameters exit 2") {
  CHECK(run("info --family rho-m --c 0.5").exit_code == 2);
  CHECK(run("info --family nonsense --gamma 0.5").exit_code == 2);
  CHECK(run("info --gamma 0.5").exit_code == 2);
  CHECK(run("info --no-such-flag 1").exit_code == 2);
}

TEST_CASE("evolve: header, row count, death window") {
  const RunResult r = run(
      "evolve --family mems --gamma 0.2 --J 1 --B 0 --samples 41 "
      "--t-max 6.283185307179586");
  CHECK(r.exit_code == 0);
  const std::vector<std::string> lines = split(r.out, '\n');
  REQUIRE(lines.size() >= 42);
  CHECK(lines[0] == kHeader);

  // concurrence column dips to zero inside (0.32175, 1.24905)
  bool died_inside = false;
  for (size_t i = 1; i < 42; ++i) {
    const std::vector<std::string> cols = split(lines[i], ',');
    REQUIRE(cols.size() == 17);
    const double t = std::stod(cols[8]);
    const double conc = std::stod(cols[9]);
    if (t > 0.33 && t < 1.24) {
      if (conc == 0.0) died_inside = true;
    }
    if (t < 0.31 || (t > 1.26 && t < 1.88)) CHECK(conc > 0.0);
  }
  CHECK(died_inside);
}

TEST_CASE("evolve: correlation columns are field independent") {
  const std::string base_args =
      "evolve --family mems --gamma 0.4 --J 1 --samples 9 --t-max 3";
  const RunResult b0 = run(base_args + " --B 0");
  const RunResult b2 = run(base_args + " --B 2");
  REQUIRE(b0.exit_code == 0);
  REQUIRE(b2.exit_code == 0);
  const std::vector<std::string> l0 = split(b0.out, '\n');
  const std::vector<std::string> l2 = split(b2.out, '\n');
  REQUIRE(l0.size() == l2.size());
  for (size_t i = 1; i < l0.size(); ++i) {
    if (l0[i].empty()) continue;
    const std::vector<std::string> c0 = split(l0[i], ',');
    const std::vector<std::string> c2 = split(l2[i], ',');
    for (int col : {9, 10, 11, 12, 13}) {  // concurrence .. horodecki_m
      CHECK(std::abs(std::stod(c0[col]) - std::stod(c2[col])) < 1e-9);
    }
  }
}

TEST_CASE("evolve: paper mode flags unphysical rows and adds divergence") {
  const RunResult r = run(
      "evolve --family rho-m --c 0.5 --s 0.125 --phi 0.6 --mode paper "
      "--samples 17 --t-max 6.283185307179586");
  CHECK(r.exit_code == 0);
  const std::vector<std::string> lines = split(r.out, '\n');
  CHECK(lines[0] == std::string(kHeader) + ",paper_s_divergence");
  bool any_unphysical = false, any_nan_discord = false;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::vector<std::string> cols = split(lines[i], ',');
    REQUIRE(cols.size() == 18);
    if (cols[16] == "0") any_unphysical = true;
    if (cols[10] == "nan") any_nan_discord = true;
  }
  CHECK(any_unphysical);
  CHECK(any_nan_discord);
}

TEST_CASE("evolve: byte-identical across runs") {
  const std::string args =
      "evolve --family rho-n --c 0.5 --theta 0.9 --samples 7 --t-max 2";
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("evolve: json format parses with the same fields") {
  const RunResult r = run(
      "evolve --family werner --gamma 0.8 --samples 3 --t-max 1 "
      "--format json");
  CHECK(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 3);
  CHECK(doc[0]["family"] == "werner");
  CHECK(doc[0]["concurrence"].get<double>() ==
        doctest::Approx(0.7).epsilon(1e-12));
  CHECK(doc[0].contains("physical"));
}

TEST_CASE("windows: schema and quoted endpoints") {
  const RunResult r =
      run("windows --family rho-m --c 0.5 --s 0.125 --resolution 1e-6");
  CHECK(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["c"] == 0.5);
  CHECK(doc["s"] == 0.125);
  CHECK(doc["resolution"] == 1e-6);
  REQUIRE(doc["physical"].size() == 2);
  REQUIRE(doc["violating"].size() == 2);
  const double lo = doc["violating"][0][0].get<double>();
  const double hi = doc["violating"][0][1].get<double>();
  CHECK(std::abs(lo - 0.54657) < 5e-3);
  CHECK(std::abs(hi - 0.65605) < 1e-3);

  // feeding an endpoint +- resolution back into info flips physicality
  CHECK(run("info --family rho-m --c 0.5 --s 0.125 --phi " +
            std::to_string(lo - 1e-4)).exit_code == 2);
  CHECK(run("info --family rho-m --c 0.5 --s 0.125 --phi " +
            std::to_string(lo + 1e-4)).exit_code == 0);

  CHECK(run("windows --family rho-m --c 0.5 --s 0.9").exit_code == 2);
  CHECK(run("windows --family mems --gamma 0.4").exit_code == 2);
}

TEST_CASE("windows: no violation for s = 7/10") {
  const RunResult r = run("windows --family rho-m --c 0.5 --s 0.7");
  CHECK(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["violating"].empty());
  REQUIRE(doc["physical"].size() == 1);
  CHECK(doc["physical"][0][0].get<double>() == 0.0);
  CHECK(doc["physical"][0][1].get<double>() ==
        doctest::Approx(2 * M_PI).epsilon(1e-12));
}

TEST_CASE("reproduce: emits the paired series") {
  const std::string dir = "cli_repro_out";
  std::system(("rm -rf " + dir).c_str());
  const RunResult r = run("reproduce fig2 --samples 5 --out " + dir);
  CHECK(r.exit_code == 0);
  for (const char* name :
       {"fig2_mems_gamma0_physical.csv", "fig2_mems_gamma0.4_paper.csv",
        "fig2_rho2m_phi0.25_physical.csv", "fig2_rho2m_phi1.45_paper.csv"}) {
    std::ifstream f(dir + "/" + name);
    CHECK_MESSAGE(f.good(), name);
    std::string header;
    std::getline(f, header);
    CHECK(header.rfind(kHeader, 0) == 0);
  }
  std::system(("rm -rf " + dir).c_str());
}

TEST_CASE("validate: clean build passes, as-printed fails") {
  const RunResult ok = run("validate");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("[FAIL]") == std::string::npos);

  const RunResult bad = run("validate --as-printed");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("[FAIL] unitary equivalence") != std::string::npos);
}

TEST_CASE("config file with flag override") {
  const std::string path = "cli_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"family": "werner", "gamma": 0.0, "samples": 4, "t_max": 1.0})";
  }
  const RunResult base = run("evolve --config " + path);
  CHECK(base.exit_code == 0);
  CHECK(split(base.out, '\n').size() >= 5);
  CHECK(base.out.find("werner,0,") != std::string::npos);

  // the flag wins over the config value
  const RunResult over = run("evolve --config " + path + " --gamma 1");
  CHECK(over.out.find("werner,1,") != std::string::npos);
  std::remove(path.c_str());
}
