#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "casimir/errors.hpp"
#include "casimir/materials.hpp"
#include "oracles.hpp"

using namespace casimir;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::trunc);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("constant model") {
  const auto m = PermittivityModel::constant(4.0);
  CHECK(m.eps(0.0) == 4.0);
  CHECK(m.eps(1e16) == 4.0);
  CHECK_THROWS_AS(PermittivityModel::constant(0.5), ConfigError);
}

TEST_CASE("drude model") {
  const auto m = PermittivityModel::drude(9.0, 0.035);
  const double wp = 9.0 * electron_volt / constants.hbar;
  const double gm = 0.035 * electron_volt / constants.hbar;
  const double xi1 = oracles::frozen::xi1_300K;
  CHECK(m.eps(xi1) == doctest::Approx(1.0 + wp * wp / (xi1 * (xi1 + gm))).epsilon(1e-14));
  CHECK(m.eps(1e19) == doctest::Approx(1.0).epsilon(1e-3));  // transparency limit
  CHECK(std::isinf(m.eps(0.0)));
  CHECK(m.metallic_at_zero());
  CHECK(m.zero_freq_eps_xi2_over_c2() == 0.0);

  const auto plasma = PermittivityModel::drude(9.0, 0.0);
  CHECK(plasma.zero_freq_eps_xi2_over_c2() ==
        doctest::Approx((wp / constants.c) * (wp / constants.c)).epsilon(1e-14));
}

TEST_CASE("shipped defaults satisfy the imaginary-axis invariants") {
  for (const auto& m : {default_gold(), default_silica(), default_silicon(),
                        default_silicon_doped()}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 60; ++i) {
      const double xi = 1e12 * std::pow(1e6, i / 60.0);
      const double e = m.eps(xi);
      CHECK(e >= 1.0);
      CHECK(e <= prev * (1.0 + 1e-12));
      prev = e;
    }
  }
  CHECK(default_silica().eps(1e10) == doctest::Approx(3.801).epsilon(1e-3));
  CHECK(default_silicon().eps(1e10) == doctest::Approx(11.66).epsilon(1e-3));
  CHECK(default_silicon_doped().metallic_at_zero());
}

TEST_CASE("tabulated model") {
  SUBCASE("interpolation passes through the nodes and stays bounded") {
    const std::vector<double> xi = {1e13, 1e14, 1e15, 1e16};
    const std::vector<double> eps = {5.0, 3.5, 2.0, 1.2};
    const auto m = PermittivityModel::tabulated(xi, eps);
    for (std::size_t i = 0; i < xi.size(); ++i)
      CHECK(m.eps(xi[i]) == doctest::Approx(eps[i]).epsilon(1e-14));
    for (std::size_t i = 0; i + 1 < xi.size(); ++i) {
      const double mid = std::sqrt(xi[i] * xi[i + 1]);
      const double v = m.eps(mid);
      CHECK(v <= eps[i]);
      CHECK(v >= eps[i + 1]);
    }
  }
  SUBCASE("flat extrapolation with sticky warnings") {
    const auto m = PermittivityModel::tabulated({1e13, 1e14, 1e15}, {3.0, 2.0, 1.5});
    CHECK_FALSE(m.extrapolated_low());
    CHECK(m.eps(1e12) == 3.0);
    CHECK(m.extrapolated_low());
    CHECK(m.eps(1e16) == 1.5);
    CHECK(m.extrapolated_high());
    CHECK(m.eps(0.0) == 3.0);
  }
  SUBCASE("rejects bad tables") {
    CHECK_THROWS_AS(PermittivityModel::tabulated({1e13, 1e13}, {2.0, 2.0}), ConfigError);
    CHECK_THROWS_AS(PermittivityModel::tabulated({1e13, 1e14}, {2.0, 0.5}), ConfigError);
    CHECK_THROWS_AS(PermittivityModel::tabulated({1e13}, {2.0}), ConfigError);
  }
}

TEST_CASE("table files") {
  SUBCASE("well-formed table in rad/s") {
    const auto p = write_temp("tab_ok.dat",
                              "# test table\n"
                              "units: rad/s\n"
                              "1e13  4.0\n"
                              "1e14  2.5\n"
                              "1e15  1.5\n");
    const auto m = load_table(p.string());
    CHECK(m.eps(1e14) == doctest::Approx(2.5).epsilon(1e-14));
  }
  SUBCASE("eV header converts frequencies") {
    const auto p = write_temp("tab_ev.dat",
                              "units: eV\n"
                              "0.1  4.0\n"
                              "1.0  2.5\n"
                              "10   1.5\n");
    const auto m = load_table(p.string());
    const double xi = 1.0 * electron_volt / constants.hbar;
    CHECK(m.eps(xi) == doctest::Approx(2.5).epsilon(1e-14));
  }
  SUBCASE("rejects eps below one, naming the line") {
    const auto p = write_temp("tab_bad.dat",
                              "units: rad/s\n"
                              "1e13  4.0\n"
                              "1e14  0.5\n");
    CHECK_THROWS_WITH_AS(load_table(p.string()),
                         doctest::Contains("row 2"), ConfigError);
  }
  SUBCASE("rejects non-monotone frequencies and missing units") {
    const auto p1 = write_temp("tab_mono.dat",
                               "units: rad/s\n1e14 3.0\n1e13 2.0\n");
    CHECK_THROWS_AS(load_table(p1.string()), ConfigError);
    const auto p2 = write_temp("tab_units.dat", "1e13 3.0\n1e14 2.0\n");
    CHECK_THROWS_WITH_AS(load_table(p2.string()), doctest::Contains("units"), ConfigError);
  }
}

TEST_CASE("material files and library") {
  const auto dir = std::filesystem::temp_directory_path() / "casimir_mats";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "glass.mat", std::ios::trunc);
    out << "model = constant\neps = 4.5\n";
  }
  MaterialLibrary lib(dir.string());
  CHECK(lib.get("glass")->eps(1e14) == 4.5);
  CHECK(lib.get("au")->metallic_at_zero());  // built-in fallback
  CHECK(lib.get("sio2")->eps(1e10) == doctest::Approx(3.801).epsilon(1e-3));
  CHECK_THROWS_AS(lib.get("unobtanium"), ConfigError);

  {
    std::ofstream out(dir / "broken.mat", std::ios::trunc);
    out << "model = warp\n";
  }
  CHECK_THROWS_WITH_AS(lib.get("broken"), doctest::Contains("unknown model"), ConfigError);
}
