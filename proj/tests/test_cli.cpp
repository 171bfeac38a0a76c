// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sarrfi/config_io.hpp"
#include "sarrfi/matrix_io.hpp"
#include "sarrfi/simulator.hpp"
#include "test_util.hpp"

using namespace sarrfi;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(SAR_RFI_EXE) + " --log-level error " + args + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sar_rfi_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli pipeline on a small scene") {
  const fs::path dir = scratch("pipeline");
  const RadarConfig cfg = testing::small_radar(512, 2048);
  const InterferenceConfig icfg = testing::reference_interference(cfg);
  const Scene scene{{{{1.0, 0.0}, 0.0, cfg.R_ref + 200.0}}};
  save_json(to_json(cfg), dir / "radar.json");
  save_json(to_json(icfg), dir / "interf.json");
  save_json(to_json(scene), dir / "scene.json");
  const std::string d = dir.string() + "/";

  REQUIRE(run("simulate --radar " + d + "radar.json --scene " + d + "scene.json --interf " + d +
              "interf.json --out " + d + "raw.sarc") == 0);
  const ComplexMatrix raw = read_matrix(d + "raw.sarc");
  CHECK(raw.rows() == cfg.N_a);
  CHECK(raw.domain() == DomainTag::raw);

  REQUIRE(run("focus --radar " + d + "radar.json --in " + d + "raw.sarc --out " + d +
              "img.sarc --dump-stage rangedoppler " + d + "rd.sarc") == 0);
  CHECK(read_matrix(d + "img.sarc").domain() == DomainTag::image);
  CHECK(read_matrix(d + "rd.sarc").domain() == DomainTag::range_doppler);

  REQUIRE(run("predict --radar " + d + "radar.json --interf " + d + "interf.json --grid " + d +
              "img.sarc --json " + d + "fp.json") == 0);
  const Json fp = load_json(d + "fp.json");
  CHECK(fp.contains("rates"));
  CHECK(fp["f_etac"].get<double>() == doctest::Approx(0.0));

  CHECK(run("artefact --radar " + d + "radar.json --interf " + d + "interf.json --rank1 --out " + d +
            "rank1.sarc") == 0);
  CHECK(run("artefact --radar " + d + "radar.json --interf " + d + "interf.json --closed-form --out " +
            d + "cf.sarc") == 0);
  CHECK(read_matrix(d + "cf.sarc").rows() == cfg.N_a);

  REQUIRE(run("mitigate --in " + d + "img.sarc --method pca --rank 2 --block 256x1024 --out-image " + d +
              "clean.sarc --out-interf " + d + "j.sarc --report " + d + "report.json") == 0);
  const Json rep = load_json(d + "report.json");
  CHECK(rep["tiles"].size() == 4);
  const ComplexMatrix Y = read_matrix(d + "img.sarc");
  const ComplexMatrix I = read_matrix(d + "clean.sarc");
  const ComplexMatrix J = read_matrix(d + "j.sarc");
  ComplexMatrix sum = I;
  sum += J;
  // Samples are stored as f32, so each component carries one float rounding.
  double peak = 0.0;
  for (std::size_t k = 0; k < Y.size(); ++k) {
    peak = std::max(peak, std::abs(I.data()[k]) + std::abs(J.data()[k]) + std::abs(Y.data()[k]));
  }
  CHECK(testing::max_abs_diff(sum, Y) <= 2.0 * 0x1p-24 * peak);

  CHECK(run("mitigate --in " + d + "img.sarc --method rpca --iters 3 --block 128x128 --out-image " + d +
            "rclean.sarc --out-interf " + d + "rj.sarc") == 0);

  CHECK(run("analyze --in " + d + "img.sarc --singvals 5 " + d + "sv.csv") == 0);
  CHECK(slurp(d + "sv.csv").rfind("k,sigma,error\n", 0) == 0);
  CHECK(run("analyze --in " + d + "img.sarc --stft range " + d + "tfd.sarc --line 256") == 0);
  CHECK(fs::exists(d + "tfd.sarc.csv"));
  CHECK(run("analyze --in " + d + "img.sarc --support 20 " + d + "box.json") == 0);
  CHECK(load_json(d + "box.json")["count"].get<std::size_t>() > 0);
}

TEST_CASE("cli exit codes") {
  const fs::path dir = scratch("codes");
  const std::string d = dir.string() + "/";
  CHECK(run("--help >/dev/null") == 0);
  CHECK(run("") == 2);
  CHECK(run("focus --radar") == 2);

  // Invalid configuration values.
  Json bad = to_json(testing::small_radar(64, 1024));
  bad["prf"] = -1.0;
  save_json(bad, dir / "bad.json");
  save_json(to_json(Scene{}), dir / "scene.json");
  CHECK(run("simulate --radar " + d + "bad.json --scene " + d + "scene.json --out " + d + "x.sarc") == 2);

  // Missing and corrupt inputs.
  save_json(to_json(testing::small_radar(64, 1024)), dir / "radar.json");
  CHECK(run("focus --radar " + d + "radar.json --in " + d + "missing.sarc --out " + d + "y.sarc") == 4);
  {
    std::ofstream junk(dir / "junk.sarc", std::ios::binary);
    junk << "NOTASARCFILE-------------------------------------------------";
  }
  CHECK(run("mitigate --in " + d + "junk.sarc --out-image " + d + "a.sarc --out-interf " + d + "b.sarc") == 4);
}

TEST_CASE("cli repro smoke run") {
  const fs::path dir = scratch("repro");
  const std::string d = dir.string() + "/";
  REQUIRE(run("repro --squints 0 --k-max 5 --out " + d + "r.json") == 0);
  const Json r = load_json(d + "r.json");
  REQUIRE(r["entries"].size() == 1);
  CHECK(r["entries"][0]["rank_k_errors"].size() == 5);
  CHECK(r.contains("environment"));
}
