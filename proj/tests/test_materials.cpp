#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "casimir/materials.hpp"
#include "oracles.hpp"

using namespace casimir;
using namespace casimir::materials;
using Catch::Approx;

namespace {

std::vector<std::array<double, 3>> gold_triplets() {
  std::vector<std::array<double, 3>> out;
  for (const auto& o : presets::gold_oscillators()) {
    out.push_back({o.strength, o.resonance, o.relaxation});
  }
  return out;
}

}  // namespace

TEST_CASE("core permittivity", "[materials]") {
  SECTION("empty oscillator list is vacuum") {
    CHECK(eval_core_permittivity({}, 0.0) == 1.0);
    CHECK(eval_core_permittivity({}, 123.4) == 1.0);
  }
  SECTION("single oscillator with f = omega^2 doubles at zero frequency") {
    const double w0 = 3.7;
    CHECK(eval_core_permittivity({{w0 * w0, w0, 0.0}}, 0.0) == Approx(2.0));
  }
  SECTION("gold set against the independent summation oracle") {
    const double xi = 1.0;
    const double value = eval_core_permittivity(presets::gold_oscillators(), xi);
    CHECK(value == Approx(oracles::core_permittivity(gold_triplets(), xi)).epsilon(1e-14));
    CHECK(value == Approx(6.397350935).epsilon(1e-9));
  }
  SECTION("invalid oscillators are rejected") {
    CHECK_THROWS_AS((Oscillator{1.0, 0.0, 0.0}.validate()), domain_error);
    CHECK_THROWS_AS((Oscillator{-1.0, 1.0, 0.0}.validate()), domain_error);
    CHECK_THROWS_AS((Oscillator{1.0, 1.0, -0.5}.validate()), domain_error);
  }
}

TEST_CASE("generalized plasma permittivity", "[materials]") {
  SECTION("free term equals one at xi = omega_p") {
    GeneralizedPlasmaModel bare{9.0, {}};
    CHECK(eval_generalized_plasma(bare, 9.0) == Approx(2.0).epsilon(1e-14));
  }
  SECTION("high-frequency transparency") {
    GeneralizedPlasmaModel au = presets::gold_generalized_plasma();
    CHECK(eval_generalized_plasma(au, 1e4) == Approx(1.0).margin(1e-6));
  }
  SECTION("gold preset matches the oracle at xi = 0.5 eV") {
    GeneralizedPlasmaModel au = presets::gold_generalized_plasma();
    const double xi = 0.5;
    const double expected = oracles::core_permittivity(gold_triplets(), xi) +
                            81.0 / (xi * xi);
    CHECK(eval_generalized_plasma(au, xi) == Approx(expected).epsilon(1e-14));
    CHECK(eval_generalized_plasma(au, xi) == Approx(330.4410961).epsilon(1e-8));
  }
  SECTION("zero frequency is rejected with the analytic-limit signal") {
    GeneralizedPlasmaModel au = presets::gold_generalized_plasma();
    CHECK_THROWS_AS(eval_generalized_plasma(au, 0.0), zero_frequency_error);
  }
}

TEST_CASE("Drude permittivity", "[materials]") {
  SECTION("dissipationless limit approaches the plasma model") {
    DrudeModel nearly{9.0, 1e-8, presets::gold_oscillators()};
    GeneralizedPlasmaModel plasma = presets::gold_generalized_plasma();
    for (double xi : {0.05, 0.3, 2.0, 20.0}) {
      CHECK(eval_drude(nearly, xi) ==
            Approx(eval_generalized_plasma(plasma, xi)).epsilon(1e-6));
    }
  }
  SECTION("oracle value at xi = 0.1 eV") {
    DrudeModel bare{9.0, 0.035, {}};
    const double expected = 1.0 + 81.0 / (0.1 * (0.1 + 0.035));
    CHECK(eval_drude(bare, 0.1) == Approx(expected).epsilon(1e-14));
    CHECK(eval_drude(bare, 0.1) == Approx(6001.0).epsilon(1e-12));
  }
  SECTION("conductivity identity 1 + 4 pi sigma(i xi)/xi") {
    DrudeModel bare{9.0, 0.035, {}};
    const double sigma0 = 81.0 / (4.0 * std::numbers::pi * 0.035);
    for (double xi : {0.02, 0.17, 1.3}) {
      const double sigma = conductivity_at_imaginary_freq(sigma0, 0.035, xi);
      CHECK(eval_drude(bare, xi) ==
            Approx(1.0 + 4.0 * std::numbers::pi * sigma / xi).epsilon(1e-13));
    }
  }
  SECTION("zero frequency rejected") {
    CHECK_THROWS_AS(eval_drude(presets::gold_drude(), 0.0), zero_frequency_error);
  }
}

TEST_CASE("conductivity at imaginary frequency", "[materials]") {
  CHECK(conductivity_at_imaginary_freq(3.0, 0.5, 0.0) == Approx(3.0));
  CHECK(conductivity_at_imaginary_freq(3.0, 0.5, 0.5) == Approx(1.5));
  CHECK(conductivity_at_imaginary_freq(3.0, 0.5, 1.5) == Approx(0.75));
  SECTION("monotone decreasing") {
    double prev = conductivity_at_imaginary_freq(1.0, 0.2, 0.0);
    for (double xi = 0.1; xi < 3.0; xi += 0.1) {
      const double cur = conductivity_at_imaginary_freq(1.0, 0.2, xi);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("derived plasma frequency and dc conductivity", "[materials]") {
  SECTION("scaling laws") {
    CarrierParams base{1e20, 40.0};
    CarrierParams doubled{2e20, 40.0};
    auto b = derived_plasma_and_dc(base);
    auto d = derived_plasma_and_dc(doubled);
    CHECK(d.plasma_frequency_ev ==
          Approx(std::numbers::sqrt2 * b.plasma_frequency_ev).epsilon(1e-12));
    CHECK(d.dc_conductivity_per_s == Approx(2.0 * b.dc_conductivity_per_s).epsilon(1e-12));
  }
  SECTION("gold density gives a ~9 eV plasma frequency") {
    auto res = derived_plasma_and_dc({5.9e22, 40.0});
    CHECK(res.plasma_frequency_ev == Approx(9.02).margin(0.05));
  }
  SECTION("empty band limit") {
    auto tiny = derived_plasma_and_dc({1e-8, 40.0});
    CHECK(tiny.plasma_frequency_ev < 1e-10);
    CHECK(tiny.dc_conductivity_per_s < 1e5);
  }
}

TEST_CASE("screening lengths", "[materials]") {
  ScreeningSpec fd;
  fd.statistics = CarrierStatistics::FermiDirac;
  fd.static_permittivity = 1.0;
  fd.density_cm3 = 5.9e22;
  fd.fermi_energy_ev = 9.0;

  SECTION("closed form agrees with the transport route") {
    CHECK(screening_length_nm(fd) ==
          Approx(screening_length_transport_nm(fd)).epsilon(1e-12));
    ScreeningSpec mb;
    mb.statistics = CarrierStatistics::MaxwellBoltzmann;
    mb.static_permittivity = 11.7;
    mb.density_cm3 = 1e17;
    mb.temperature_k = 300.0;
    CHECK(screening_length_nm(mb) ==
          Approx(screening_length_transport_nm(mb)).epsilon(1e-12));
  }
  SECTION("Thomas-Fermi length for gold is of order 0.1 nm") {
    const double r = screening_length_nm(fd);
    CHECK(r == Approx(0.0750).margin(0.002));
    CHECK(r > 0.03);
    CHECK(r < 0.15);
  }
  SECTION("quadrupling the density halves the length") {
    ScreeningSpec quad = fd;
    quad.density_cm3 *= 4.0;
    CHECK(screening_length_nm(quad) == Approx(0.5 * screening_length_nm(fd)).epsilon(1e-12));
  }
  SECTION("missing statistics inputs are rejected") {
    ScreeningSpec bad = fd;
    bad.fermi_energy_ev.reset();
    CHECK_THROWS_AS(screening_length_nm(bad), domain_error);
    ScreeningSpec bad_mb;
    bad_mb.statistics = CarrierStatistics::MaxwellBoltzmann;
    bad_mb.density_cm3 = 1e17;
    CHECK_THROWS_AS(screening_length_nm(bad_mb), domain_error);
  }
}

namespace {

// Densely sampled synthetic table from the analytic Drude spectral density
// Im eps = omega_p^2 gamma / (omega (omega^2 + gamma^2)).
OpticalDataTable synthetic_drude_table(double omega_p, double gamma) {
  OpticalDataTable table;
  table.low_frequency_tail = DrudeModel{omega_p, gamma, {}};
  table.policy = OpticalDataTable::HighFrequencyPolicy::PowerLawTail;
  const double lo = 1e-3, hi = 1e3;
  const int n = 2500;
  for (int i = 0; i <= n; ++i) {
    const double w = lo * std::pow(hi / lo, static_cast<double>(i) / n);
    table.samples.push_back({w, omega_p * omega_p * gamma / (w * (w * w + gamma * gamma))});
  }
  return table;
}

}  // namespace

TEST_CASE("tabulated optical data", "[materials]") {
  SECTION("transparent table evaluates to vacuum") {
    OpticalDataTable table;
    table.low_frequency_tail = DrudeModel{1e-30, 1.0, {}};
    table.samples = {{0.1, 0.0}, {1.0, 0.0}, {10.0, 0.0}};
    for (double xi : {0.05, 0.7, 40.0}) {
      CHECK(eval_from_table(table, xi) == Approx(1.0).margin(1e-12));
    }
  }
  SECTION("Kramers-Kronig round trip reproduces the Drude model within 1%") {
    auto table = synthetic_drude_table(9.0, 0.035);
    DrudeModel drude{9.0, 0.035, {}};
    for (double xi : {0.1, 0.3, 1.0, 3.0, 10.0}) {
      CHECK(eval_from_table(table, xi) == Approx(eval_drude(drude, xi)).epsilon(0.01));
    }
  }
  SECTION("high-frequency transparency") {
    auto table = synthetic_drude_table(9.0, 0.035);
    CHECK(eval_from_table(table, 1e5) == Approx(1.0).margin(1e-4));
  }
  SECTION("malformed tables are rejected") {
    OpticalDataTable bad;
    bad.low_frequency_tail = DrudeModel{9.0, 0.035, {}};
    bad.samples = {{1.0, 0.1}, {0.5, 0.1}};
    CHECK_THROWS_AS(eval_from_table(bad, 1.0), ingest_error);
    bad.samples = {{0.5, -0.1}, {1.0, 0.1}};
    CHECK_THROWS_AS(eval_from_table(bad, 1.0), ingest_error);
    bad.samples = {{0.5, 0.1}};
    CHECK_THROWS_AS(eval_from_table(bad, 1.0), ingest_error);
  }
  SECTION("truncation bound is small and positive for the synthetic table") {
    auto table = synthetic_drude_table(9.0, 0.035);
    const double bound = table_truncation_bound(table, 1.0);
    CHECK(bound >= 0.0);
    CHECK(bound < 1e-6);
  }
}

TEST_CASE("permittivity model properties", "[materials][properties]") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> xi_dist(0.01, 50.0);

  SECTION("every model is strictly decreasing toward 1") {
    GeneralizedPlasmaModel gp = presets::gold_generalized_plasma();
    DrudeModel dr = presets::gold_drude();
    auto table = synthetic_drude_table(9.0, 0.035);
    for (int trial = 0; trial < 200; ++trial) {
      double x1 = xi_dist(rng), x2 = xi_dist(rng);
      if (x1 > x2) std::swap(x1, x2);
      if (x2 - x1 < 1e-6) continue;
      CHECK(eval_generalized_plasma(gp, x1) > eval_generalized_plasma(gp, x2));
      CHECK(eval_drude(dr, x1) > eval_drude(dr, x2));
      CHECK(eval_generalized_plasma(gp, x2) >= 1.0);
      CHECK(eval_drude(dr, x2) > 1.0);
    }
    CHECK(eval_from_table(table, 0.2) > eval_from_table(table, 1.7));
  }
  SECTION("plasma-like dominates Drude pointwise") {
    GeneralizedPlasmaModel gp = presets::gold_generalized_plasma();
    DrudeModel dr = presets::gold_drude();
    for (int trial = 0; trial < 200; ++trial) {
      const double xi = xi_dist(rng);
      CHECK(eval_generalized_plasma(gp, xi) >= eval_drude(dr, xi));
    }
  }
}
