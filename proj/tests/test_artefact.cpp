// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "sarrfi/analysis.hpp"
#include "sarrfi/artefact_model.hpp"
#include "sarrfi/focusing.hpp"
#include "sarrfi/simulator.hpp"
#include "test_util.hpp"

using namespace sarrfi;

TEST_CASE("composite range FM rate") {
  CHECK(k_i_prime(5e11, -2.5e11) == doctest::Approx(-1.6666666666666667e11).epsilon(1e-12));
  CHECK(k_i_prime(5e11, 0.0) == 0.0);
  for (double kr : {5e11, -3e11}) {
    for (double ki : {-2.5e11, 1e11, 7e11}) {
      const double kp = k_i_prime(kr, ki);
      CHECK(std::signbit(kp) == std::signbit(ki * kr * (kr - ki)));
    }
  }
  try {
    k_i_prime(5e11, 5e11);
    FAIL("expected sinc-mode error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::sinc_mode);
  }
}

TEST_CASE("footprint at zero squint is the scene centre") {
  const RadarConfig cfg = testing::small_radar(4096, 2048);
  const InterferenceConfig icfg = testing::reference_interference(cfg);
  const ArtefactFootprint fp = predict_footprint(cfg, icfg, image_grid(cfg));
  CHECK(fp.eta_i == doctest::Approx(0.0));
  CHECK(fp.tau_i == doctest::Approx(0.0));
  REQUIRE(fp.px);
  CHECK(fp.px->row_center == doctest::Approx(2048.0));
  CHECK(fp.px->col_center == doctest::Approx(1024.0));
  CHECK(fp.d_tau == doctest::Approx(2.475e-5).epsilon(1e-12));
  CHECK(fp.d_eta > 0.0);
  icfg.validate(cfg);
  InterferenceConfig same = icfg;
  same.K_i = cfg.K_r;
  CHECK_THROWS_AS(predict_footprint(cfg, same), Error);
}

TEST_CASE("footprint at 0.6 degree squint") {
  const RadarConfig cfg = testing::small_radar(4096, 2048, 0.6);
  const InterferenceConfig icfg = testing::reference_interference(cfg);
  CHECK(cfg.doppler_centroid() == doctest::Approx(2678.7).epsilon(2e-4));
  const DerivedRates r = derived_rates(cfg, icfg);
  CHECK(r.K_a_ref == doctest::Approx(2136.5).epsilon(1e-4));
  const ArtefactFootprint fp = predict_footprint(cfg, icfg);
  CHECK(fp.eta_i == doctest::Approx(1.254).epsilon(1e-3));
  CHECK(fp.d_eta == doctest::Approx(fp.d_eta_approx).epsilon(0.01));
}

TEST_CASE("exact and shorthand azimuth extents agree and |eta_i| grows with R_i") {
  for (double squint : {-0.6, -0.3, 0.0, 0.3, 0.6}) {
    const RadarConfig cfg = testing::small_radar(4096, 2048, squint);
    InterferenceConfig icfg = testing::reference_interference(cfg);
    const ArtefactFootprint fp = predict_footprint(cfg, icfg);
    CHECK(fp.d_eta == doctest::Approx(fp.d_eta_approx).epsilon(0.01));
    if (squint == 0.0) continue;
    double prev = 0.0;
    for (double dR : {-3000.0, -1000.0, 0.0, 1000.0, 3000.0}) {
      icfg.R_i = cfg.R_ref + dR;
      const double e = std::abs(predict_footprint(cfg, icfg).eta_i);
      CHECK(e > prev);
      prev = e;
    }
  }
}

TEST_CASE("closed-form artefact support and modulus") {
  const RadarConfig cfg = testing::small_radar(4096, 2048);
  InterferenceConfig icfg = testing::reference_interference(cfg);
  icfg.gamma_i = {0.6, 0.8};
  const Grid grid = image_grid(cfg);
  const ComplexMatrix a = artefact_closed_form(cfg, icfg, grid);
  const ArtefactFootprint fp = predict_footprint(cfg, icfg, grid);

  bool moduli_ok = true;
  for (const auto& v : a.data()) {
    const double m = std::abs(v);
    moduli_ok = moduli_ok && (m == 0.0 || std::abs(m - 1.0) < 1e-12);
  }
  CHECK(moduli_ok);

  const SupportBox box = measure_support(a, 20.0);
  CHECK(std::abs(static_cast<double>(box.row_min) - fp.px->row_start) <= 1.0);
  CHECK(std::abs(static_cast<double>(box.row_max) - fp.px->row_end) <= 1.0);
  CHECK(std::abs(static_cast<double>(box.col_min) - fp.px->col_start) <= 1.0);
  CHECK(std::abs(static_cast<double>(box.col_max) - fp.px->col_end) <= 1.0);
  // Every pixel inside the box carries the chirp.
  CHECK(box.count == (box.row_max - box.row_min + 1) * (box.col_max - box.col_min + 1));

  icfg.gamma_i = {0.0, 0.0};
  CHECK(artefact_closed_form(cfg, icfg, grid).frobenius_norm() == 0.0);
}

TEST_CASE("closed form equals the rank-1 product with frozen K_a and linear gate") {
  for (double dR : {0.0, 2500.0}) {
    const RadarConfig cfg = testing::small_radar(2048, 2048);
    InterferenceConfig icfg = testing::reference_interference(cfg);
    icfg.R_i = cfg.R_ref + dR;
    icfg.gamma_i = {-0.4, 1.1};
    const Grid grid = image_grid(cfg);
    ClosedFormOptions opts;
    opts.K_a = derived_rates(cfg, icfg).K_a_ref;
    opts.exact_gate = false;
    const ComplexMatrix a = artefact_closed_form(cfg, icfg, grid, opts);
    const ComplexMatrix b = outer_product(rank1_model(cfg, icfg, grid), icfg.gamma_i, grid);
    CHECK(a.frobenius_norm() > 0.0);
    // The factors carry constant phases near 4 pi R0 f0 / c ~ 2e8 rad whose
    // rounding (ulp ~ 3e-8) does not cancel when they are applied separately.
    CHECK(testing::max_abs_diff(a, b) < 1e-7);
  }
}

TEST_CASE("rank-1 model factors") {
  const RadarConfig cfg = testing::small_radar(4096, 2048);
  const InterferenceConfig icfg = testing::reference_interference(cfg);
  const Grid grid = image_grid(cfg);
  const Rank1Factors f = rank1_model(cfg, icfg, grid);
  const ArtefactFootprint fp = predict_footprint(cfg, icfg, grid);
  std::size_t nu = 0;
  for (const auto& x : f.u) nu += x != cdouble{} ? 1 : 0;
  CHECK(std::abs(static_cast<double>(nu) - fp.d_eta_approx / grid.eta.step) <= 2.0);

  // Sub-sampled grid so a full SVD is cheap.
  const Grid coarse{256, 128, {grid.eta.start, grid.eta.step * 16}, {grid.tau.start, grid.tau.step * 16}};
  const ComplexMatrix p = outer_product(rank1_model(cfg, icfg, coarse), {1.0, 0.0}, coarse);
  const auto s = singular_values(p);
  REQUIRE(s[0] > 0.0);
  CHECK(s[1] / s[0] <= 1e-10);
}

TEST_CASE("Taylor rank bound") {
  CHECK(taylor_rank_bound(1) == 2);
  CHECK(taylor_rank_bound(3) == 14);
  CHECK(taylor_rank_bound(4) == 30);
  CHECK(taylor_rank_bound(10) == 2046);
  CHECK_THROWS_AS(taylor_rank_bound(0), Error);
}

TEST_CASE("carrier offset shifts the artefact by -f_i0/K_r") {
  const RadarConfig cfg = testing::small_radar(1024, 2048);
  InterferenceConfig base = testing::reference_interference(cfg);
  InterferenceConfig shifted = base;
  shifted.f_i0 = 1e6;
  auto centroid_col = [&](const InterferenceConfig& icfg) {
    ComplexMatrix raw(raw_grid(cfg), DomainTag::raw);
    raw = inject_interference(std::move(raw), cfg, icfg);
    return measure_support(focus_omegak(raw, cfg), 6.0).centroid_col;
  };
  const double c0 = centroid_col(base);
  const double c1 = centroid_col(shifted);
  const ArtefactFootprint p0 = predict_footprint(cfg, base, image_grid(cfg));
  const ArtefactFootprint p1 = predict_footprint(cfg, shifted, image_grid(cfg));
  CHECK((c1 - c0) == doctest::Approx(-shifted.f_i0 / cfg.K_r * cfg.f_s).epsilon(0.05));
  CHECK(std::abs(c1 - p1.px->col_center) <= 2.0);
  CHECK(std::abs(c0 - p0.px->col_center) <= 2.0);
}
