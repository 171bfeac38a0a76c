// SPDX-License-Identifier: Apache-2.0
// sar-rfi: command-line front end for simulation, focusing, artefact
// prediction, mitigation and analysis.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "sarrfi/analysis.hpp"
#include "sarrfi/artefact_model.hpp"
#include "sarrfi/blockwise.hpp"
#include "sarrfi/config_io.hpp"
#include "sarrfi/focusing.hpp"
#include "sarrfi/log.hpp"
#include "sarrfi/lowrank.hpp"
#include "sarrfi/matrix_io.hpp"
#include "sarrfi/parallel.hpp"
#include "sarrfi/repro.hpp"
#include "sarrfi/simulator.hpp"
#include "sarrfi/svd.hpp"

namespace {

using namespace sarrfi;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

int exit_code(Errc code) {
  switch (code) {
    case Errc::invalid_config:
    case Errc::invalid_argument:
    case Errc::shape_mismatch:
    case Errc::bad_domain:
    case Errc::sinc_mode:
      return kExitConfig;
    case Errc::domain_error:
    case Errc::non_finite:
    case Errc::empty_support:
      return kExitNumeric;
    case Errc::bad_magic:
    case Errc::unsupported_version:
    case Errc::truncated_payload:
    case Errc::dimension_overflow:
    case Errc::io:
      return kExitIo;
  }
  return kExitNumeric;
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out || !(out << text)) throw Error(Errc::io, "cannot write " + path);
}

// Real-valued grid stored as the real part of a SARC matrix.
void write_real_grid(const std::vector<double>& values, std::size_t rows, std::size_t cols,
                     Axis a0, Axis a1, const std::string& path) {
  ComplexMatrix m(rows, cols, a0, a1, DomainTag::image);
  for (std::size_t k = 0; k < values.size(); ++k) m.data()[k] = {values[k], 0.0};
  write_matrix(m, path);
}

struct SimulateArgs {
  std::string radar, scene, interf, out;
};

void run_simulate(const SimulateArgs& a) {
  const RadarConfig cfg = radar_from_json(load_json(a.radar));
  const Scene scene = scene_from_json(load_json(a.scene));
  ComplexMatrix raw = simulate_echo(scene, cfg);
  if (!a.interf.empty()) {
    raw = inject_interference(std::move(raw), cfg, interference_from_json(load_json(a.interf)));
  }
  write_matrix(raw, a.out);
  log::info("simulate", "wrote " + a.out);
}

struct FocusArgs {
  std::string radar, in, out;
  std::vector<std::string> dump;
};

void run_focus(const FocusArgs& a) {
  const RadarConfig cfg = radar_from_json(load_json(a.radar));
  const ComplexMatrix raw = read_matrix(a.in);
  FocusHook hook;
  if (!a.dump.empty()) {
    if (a.dump.size() != 2) throw Error(Errc::invalid_argument, "--dump-stage takes STAGE PATH");
    const std::string stage = a.dump[0];
    const std::string path = a.dump[1];
    FocusStage want;
    if (stage == "wavenumber") {
      want = FocusStage::wavenumber;
    } else if (stage == "rangedoppler") {
      want = FocusStage::range_doppler;
    } else {
      throw Error(Errc::invalid_argument, "unknown stage '" + stage + "'");
    }
    hook = [want, path](FocusStage s, const ComplexMatrix& m) {
      if (s == want) write_matrix(m, path);
    };
  }
  write_matrix(focus_omegak(raw, cfg, hook), a.out);
  log::info("focus", "wrote " + a.out);
}

struct PredictArgs {
  std::string radar, interf, grid, json;
};

void run_predict(const PredictArgs& a) {
  const RadarConfig cfg = radar_from_json(load_json(a.radar));
  const InterferenceConfig icfg = interference_from_json(load_json(a.interf));
  std::optional<Grid> grid = image_grid(cfg);
  if (!a.grid.empty()) grid = read_matrix(a.grid).grid();
  const ArtefactFootprint fp = predict_footprint(cfg, icfg, grid);
  const DerivedRates r = derived_rates(cfg, icfg);
  Json j = to_json(fp);
  j["rates"] = {{"K_a", r.K_a}, {"K_a_ref", r.K_a_ref}, {"K_i_prime", r.K_i_prime}};
  j["f_etac"] = cfg.doppler_centroid();
  save_json(j, a.json);
}

struct ArtefactArgs {
  std::string radar, interf, grid, out;
  bool closed_form = false;
  bool rank1 = false;
};

void run_artefact(const ArtefactArgs& a) {
  const RadarConfig cfg = radar_from_json(load_json(a.radar));
  const InterferenceConfig icfg = interference_from_json(load_json(a.interf));
  const Grid grid = a.grid.empty() ? image_grid(cfg) : read_matrix(a.grid).grid();
  if (a.rank1) {
    write_matrix(outer_product(rank1_model(cfg, icfg, grid), icfg.gamma_i, grid), a.out);
  } else {
    write_matrix(artefact_closed_form(cfg, icfg, grid), a.out);
  }
}

struct MitigateArgs {
  std::string in, method = "pca", block, out_image, out_interf, report;
  std::size_t rank = 1;
  std::optional<double> mu;
  int iters = 40;
  double tol = 1e-7;
};

std::pair<std::size_t, std::size_t> parse_block(const std::string& s, const ComplexMatrix& m) {
  if (s.empty()) return {m.rows(), m.cols()};
  const auto x = s.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    return {std::stoul(s.substr(0, x)), std::stoul(s.substr(x + 1))};
  } catch (const std::exception&) {
    throw Error(Errc::invalid_argument, "--block expects RxC, got '" + s + "'");
  }
}

void run_mitigate(const MitigateArgs& a) {
  const ComplexMatrix Y = read_matrix(a.in);
  auto [br, bc] = parse_block(a.block, Y);
  br = std::max<std::size_t>(2, std::min(br, Y.rows()));
  bc = std::max<std::size_t>(2, std::min(bc, Y.cols()));
  TileMitigator f;
  if (a.method == "pca") {
    f = [k = a.rank](const ComplexMatrix& t) {
      return pca_mitigate(t, std::min(k, std::min(t.rows(), t.cols())));
    };
  } else if (a.method == "rpca") {
    RpcaOptions opts;
    opts.mu = a.mu;
    opts.max_iters = a.iters;
    opts.tol = a.tol;
    opts.validate();
    f = [opts](const ComplexMatrix& t) { return rpca_mitigate(t, opts); };
  } else {
    throw Error(Errc::invalid_argument, "--method must be pca or rpca");
  }
  const BlockwiseResult res = blockwise(Y, br, bc, f);
  write_matrix(res.split.I, a.out_image);
  write_matrix(res.split.J, a.out_interf);

  if (!a.report.empty()) {
    Json tiles = Json::array();
    for (std::size_t k = 0; k < res.tiles.size(); ++k) {
      const Tile& t = res.tiles[k];
      const LowRankSplit& s = res.per_tile[k];
      const ComplexMatrix y = Y.block(t.row0, t.col0, t.rows, t.cols);
      const ComplexMatrix j = res.split.J.block(t.row0, t.col0, t.rows, t.cols);
      const double ey = y.frobenius_norm_sq();
      std::vector<double> head(s.sigma.begin(),
                               s.sigma.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(10, s.sigma.size())));
      tiles.push_back({{"row0", t.row0},
                       {"col0", t.col0},
                       {"rows", t.rows},
                       {"cols", t.cols},
                       {"sigma_head", head},
                       {"iters", s.iters},
                       {"feas", s.feas},
                       {"converged", s.converged},
                       {"energy_removed", ey > 0.0 ? j.frobenius_norm_sq() / ey : 0.0}});
    }
    save_json(Json{{"method", a.method}, {"tiles", tiles}, {"feas", res.split.feas}}, a.report);
  }
}

struct AnalyzeArgs {
  std::string in;
  std::vector<std::string> singvals, stft, support;
  std::size_t line = 0;
  std::size_t window = 0;
  std::size_t hop = 0;
};

void run_analyze(const AnalyzeArgs& a) {
  const ComplexMatrix img = read_matrix(a.in);
  const int modes = !a.singvals.empty() + !a.stft.empty() + !a.support.empty();
  if (modes != 1) {
    throw Error(Errc::invalid_argument, "choose exactly one of --singvals, --stft, --support");
  }
  if (!a.singvals.empty()) {
    const std::size_t k_max = std::stoul(a.singvals[0]);
    const auto curve = rank_error_curve(img, k_max);
    const auto sigma = singular_values(img);
    std::ostringstream csv;
    csv.precision(17);
    csv << "k,sigma,error\n";
    for (const auto& [k, e] : curve) csv << k << ',' << sigma[k - 1] << ',' << e << '\n';
    write_text(csv.str(), a.singvals[1]);
  } else if (!a.stft.empty()) {
    const std::string dir = a.stft[0];
    const std::string out = a.stft[1];
    std::vector<cdouble> sig;
    double rate = 0.0, t0 = 0.0;
    if (dir == "range") {
      if (a.line >= img.rows()) throw Error(Errc::invalid_argument, "--line outside the image rows");
      const auto r = img.row(a.line);
      sig.assign(r.begin(), r.end());
      rate = 1.0 / img.axis_tau().step;
      t0 = img.axis_tau().start;
    } else if (dir == "azimuth") {
      if (a.line >= img.cols()) throw Error(Errc::invalid_argument, "--line outside the image columns");
      sig = img.column(a.line);
      rate = 1.0 / img.axis_eta().step;
      t0 = img.axis_eta().start;
    } else {
      throw Error(Errc::invalid_argument, "--stft expects range or azimuth");
    }
    const std::size_t win = a.window ? a.window : std::max<std::size_t>(2, sig.size() / 32);
    const std::size_t hop = a.hop ? a.hop : std::max<std::size_t>(1, win / 4);
    const Spectrogram s = stft(sig, win, hop, rate, t0);
    write_real_grid(s.values, s.frames, s.bins, s.time_axis, s.freq_axis, out);
    std::ostringstream csv;
    csv.precision(10);
    csv << "time,freq,db\n";
    for (std::size_t t = 0; t < s.frames; ++t) {
      for (std::size_t k = 0; k < s.bins; ++k) {
        csv << s.time_axis.at(static_cast<double>(t)) << ',' << s.freq_axis.at(static_cast<double>(k))
            << ',' << s.at(t, k) << '\n';
      }
    }
    write_text(csv.str(), out + ".csv");
    const RidgeFit fit = ridge_slope(s);
    log::info("analyze", "ridge slope " + std::to_string(fit.slope) + " Hz/s");
  } else {
    const double db = std::stod(a.support[0]);
    const SupportBox b = measure_support(img, db);
    save_json(Json{{"threshold_db", db},
                   {"row_min", b.row_min},
                   {"row_max", b.row_max},
                   {"col_min", b.col_min},
                   {"col_max", b.col_max},
                   {"centroid_row", b.centroid_row},
                   {"centroid_col", b.centroid_col},
                   {"count", b.count}},
              a.support[1]);
  }
}

struct ReproArgs {
  std::uint64_t seed = 7;
  std::string out = "repro_report.json";
  std::string artefacts;
  std::vector<double> squints;
  std::size_t k_max = 100;
};

void run_repro(const ReproArgs& a) {
  ReferenceProfile p;
  if (!a.squints.empty()) p.squints_deg = a.squints;
  ReproOptions opts;
  opts.seed = a.seed;
  opts.k_max = a.k_max;
  if (!a.artefacts.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(a.artefacts, ec);
    if (ec) throw Error(Errc::io, "cannot create " + a.artefacts + ": " + ec.message());
    opts.artefact_dir = a.artefacts;
  }
  save_json(to_json(repro(p, opts)), a.out);
  log::info("repro", "wrote " + a.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAR raw-data simulation, focusing and interference mitigation"};
  app.require_subcommand(1);
  int n_threads = 1;
  std::string log_level = "info";
  app.add_option("--threads", n_threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--log-level", log_level, "debug|info|warn|error")
      ->check(CLI::IsMember({"debug", "info", "warn", "error"}));

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "simulate raw echoes");
  c_sim->add_option("--radar", sim.radar)->required();
  c_sim->add_option("--scene", sim.scene)->required();
  c_sim->add_option("--interf", sim.interf);
  c_sim->add_option("--out", sim.out)->required();

  FocusArgs foc;
  auto* c_foc = app.add_subcommand("focus", "omega-K focusing");
  c_foc->add_option("--radar", foc.radar)->required();
  c_foc->add_option("--in", foc.in)->required();
  c_foc->add_option("--out", foc.out)->required();
  c_foc->add_option("--dump-stage", foc.dump, "STAGE PATH (wavenumber|rangedoppler)")->expected(2);

  PredictArgs pred;
  auto* c_pred = app.add_subcommand("predict", "predict the artefact footprint");
  c_pred->add_option("--radar", pred.radar)->required();
  c_pred->add_option("--interf", pred.interf)->required();
  c_pred->add_option("--grid", pred.grid, "image whose axes define pixel coordinates");
  c_pred->add_option("--json", pred.json)->required();

  ArtefactArgs art;
  auto* c_art = app.add_subcommand("artefact", "synthesize the modelled artefact");
  c_art->add_option("--radar", art.radar)->required();
  c_art->add_option("--interf", art.interf)->required();
  c_art->add_option("--grid", art.grid);
  auto* o_cf = c_art->add_flag("--closed-form", art.closed_form);
  auto* o_r1 = c_art->add_flag("--rank1", art.rank1);
  o_cf->excludes(o_r1);
  c_art->add_option("--out", art.out)->required();

  MitigateArgs mit;
  auto* c_mit = app.add_subcommand("mitigate", "PCA or RPCA interference removal");
  c_mit->add_option("--in", mit.in)->required();
  c_mit->add_option("--method", mit.method)->check(CLI::IsMember({"pca", "rpca"}));
  c_mit->add_option("--rank", mit.rank)->check(CLI::PositiveNumber);
  c_mit->add_option("--mu", mit.mu);
  c_mit->add_option("--iters", mit.iters)->check(CLI::PositiveNumber);
  c_mit->add_option("--tol", mit.tol)->check(CLI::PositiveNumber);
  c_mit->add_option("--block", mit.block, "tile size RxC");
  c_mit->add_option("--out-image", mit.out_image)->required();
  c_mit->add_option("--out-interf", mit.out_interf)->required();
  c_mit->add_option("--report", mit.report);

  AnalyzeArgs ana;
  auto* c_ana = app.add_subcommand("analyze", "singular spectra, STFT, support");
  c_ana->add_option("--in", ana.in)->required();
  c_ana->add_option("--singvals", ana.singvals, "K_MAX OUT.csv")->expected(2);
  c_ana->add_option("--stft", ana.stft, "{range|azimuth} OUT.sarc")->expected(2);
  c_ana->add_option("--line", ana.line, "row (range) or column (azimuth) index");
  c_ana->add_option("--window", ana.window);
  c_ana->add_option("--hop", ana.hop);
  c_ana->add_option("--support", ana.support, "DB OUT.json")->expected(2);

  ReproArgs rep;
  auto* c_rep = app.add_subcommand("repro", "run the three-squint reference experiment");
  c_rep->add_option("--seed", rep.seed);
  c_rep->add_option("--out", rep.out);
  c_rep->add_option("--artefacts", rep.artefacts, "directory for focused images");
  c_rep->add_option("--squints", rep.squints)->delimiter(',');
  c_rep->add_option("--k-max", rep.k_max)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  static const std::map<std::string, log::Level> levels{{"debug", log::Level::debug},
                                                         {"info", log::Level::info},
                                                         {"warn", log::Level::warn},
                                                         {"error", log::Level::error}};
  log::set_level(levels.at(log_level));
  set_threads(n_threads);

  try {
    if (c_sim->parsed()) run_simulate(sim);
    if (c_foc->parsed()) run_focus(foc);
    if (c_pred->parsed()) run_predict(pred);
    if (c_art->parsed()) run_artefact(art);
    if (c_mit->parsed()) run_mitigate(mit);
    if (c_ana->parsed()) run_analyze(ana);
    if (c_rep->parsed()) run_repro(rep);
  } catch (const Error& e) {
    log::error("cli", std::string(to_string(e.code())) + ": " + e.what());
    return exit_code(e.code());
  } catch (const nlohmann::json::exception& e) {
    log::error("cli", std::string("invalid_config: ") + e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    log::error("cli", std::string("invalid_argument: ") + e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    log::error("cli", e.what());
    return kExitNumeric;
  }
  return kExitOk;
}
