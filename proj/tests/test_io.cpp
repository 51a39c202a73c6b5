#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "specenh/errors.hpp"
#include "specenh/io.hpp"

using namespace specenh;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("kernel specs survive a json round trip") {
  const KernelSpec specs[] = {
      KernelSpec::gaussian_unit(),      KernelSpec::gaussian_width(0.75),
      KernelSpec::lorentz_unit(),       KernelSpec::lorentz_width(2.5),
      KernelSpec::voigt(0.3),           KernelSpec::eddington_inverse(4)};
  for (const auto& spec : specs) {
    const json j = spec;
    const auto back = j.get<KernelSpec>();
    CHECK(back.family == spec.family);
    CHECK(back.kappa == spec.kappa);
    CHECK(back.theta == spec.theta);
    CHECK(back.k == spec.k);
  }
}

TEST_CASE("kernel json accepts the type spelling too") {
  const auto spec =
      json{{"family", "LorentzWidth"}, {"kappa", 1.5}}.get<KernelSpec>();
  CHECK(spec.family == KernelFamily::LorentzWidth);
  CHECK(spec.kappa == 1.5);
}

TEST_CASE("bad kernel json is rejected with context") {
  CHECK_THROWS_AS((void)(json{{"family", "triangle"}}.get<KernelSpec>()),
                  ConfigError);
  CHECK_THROWS_AS((void)(json{{"family", "lorentz_width"}}.get<KernelSpec>()),
                  ConfigError); // kappa missing
  CHECK_THROWS_AS((void)(json{{"family", "lorentz_width"}, {"kappa", -1.0}}
                             .get<KernelSpec>()),
                  DomainError);
  CHECK_THROWS_AS((void)json::object().get<KernelSpec>(), ConfigError);
}

TEST_CASE("grid, condition, and regularization round trips") {
  const Grid grid{256, 48.0};
  CHECK(json(grid).get<Grid>() == grid);
  CHECK_THROWS_AS((void)(json{{"n", 100}, {"length", 10.0}}.get<Grid>()),
                  DomainError);

  const SourceCondition conds[] = {
      SourceCondition::eddington_gaussian(2),
      SourceCondition::lorentz_on_gaussian(1.25),
      SourceCondition::lorentz_on_voigt(0.8, 0.6)};
  for (const auto& cond : conds) {
    const auto back = json(cond).get<SourceCondition>();
    CHECK(back.kind == cond.kind);
    CHECK(back.kappa == cond.kappa);
    CHECK(back.theta == cond.theta);
    CHECK(back.k == cond.k);
  }
  CHECK_THROWS_AS((void)(json{{"kind", "smooth"}}.get<SourceCondition>()),
                  ConfigError);

  for (const auto method : {RegMethod::Tikhonov, RegMethod::SpectralCutoff}) {
    const RegularizationConfig reg{method, 1e-4};
    const auto back = json(reg).get<RegularizationConfig>();
    CHECK(back.method == reg.method);
    CHECK(back.alpha == reg.alpha);
  }
  CHECK_THROWS_AS(
      (void)(json{{"method", "ridge"}, {"alpha", 0.1}}
                 .get<RegularizationConfig>()),
      ConfigError);
}

TEST_CASE("line spectra move through json as arrays") {
  const auto lines = LineSpectrum::make({{-2.0, 1.5}, {3.25, 0.5}});
  const json j = lines;
  REQUIRE(j.is_array());
  const auto back = j.get<LineSpectrum>();
  REQUIRE(back.lines.size() == 2);
  CHECK(back.lines[0].location == -2.0);
  CHECK(back.lines[1].intensity == 0.5);
}

TEST_CASE("json files round trip through disk") {
  const auto path = temp_path("specenh_io_test.json");
  const json value = {{"grid", Grid{64, 16.0}},
                      {"kernel", KernelSpec::voigt(0.5)}};
  save_json(path, value);
  const auto loaded = load_json(path);
  CHECK(loaded == value);
  std::remove(path.c_str());
  CHECK_THROWS_AS((void)load_json(path), ConfigError);
}

TEST_CASE("spectrum csv written and read back is bit identical") {
  const Grid grid{64, 16.0};
  const auto g = broaden(LineSpectrum::make({{0.5, 1.0}, {-1.75, 0.3}}),
                         KernelSpec::gaussian_width(0.5), grid);
  const auto path = temp_path("specenh_spectrum_test.csv");
  write_spectrum_csv(path, g);
  const auto back = read_spectrum_csv(path);
  CHECK(back.grid == g.grid);
  CHECK(back.values == g.values);
  std::remove(path.c_str());
}

TEST_CASE("line csv round trips exactly") {
  const auto lines =
      LineSpectrum::make({{-3.0, 2.0}, {0.1234567890123456, 0.7}});
  const auto path = temp_path("specenh_lines_test.csv");
  write_lines_csv(path, lines);
  const auto back = read_lines_csv(path);
  REQUIRE(back.lines.size() == 2);
  CHECK(back.lines[0].location == lines.lines[0].location);
  CHECK(back.lines[1].location == lines.lines[1].location);
  CHECK(back.lines[1].intensity == lines.lines[1].intensity);
  std::remove(path.c_str());
}

TEST_CASE("csv headers are enforced") {
  const auto path = temp_path("specenh_badheader_test.csv");
  {
    std::ofstream out(path);
    out << "a,b\n1,2\n";
  }
  CHECK_THROWS_AS((void)read_spectrum_csv(path), ConfigError);
  CHECK_THROWS_AS((void)read_lines_csv(path), ConfigError);
  std::remove(path.c_str());
}

} // TEST_SUITE
