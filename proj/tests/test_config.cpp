#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "tidaleq/config.hpp"
#include "tidaleq/errors.hpp"

using namespace tidaleq;

namespace {
RunConfig parse(const std::string& s) {
  std::istringstream in(s);
  return parse_config(in);
}
}  // namespace

TEST_CASE("parsing") {
  const RunConfig c = parse("# comment\ninteraction = A:0.5\na0 = 2.5   # trailing\nm = 1e-5, 2e-5\nmodes = 64\n");
  CHECK(c.interaction == "A:0.5");
  CHECK(*c.a0 == 2.5);
  REQUIRE(c.m.size() == 2);
  CHECK(c.m[1] == 2e-5);
  CHECK(c.modes == 64);
  CHECK(interaction_from(c).nu == 0.5);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(parse("a0 = 2\nfoo = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("a0 = 2\na0 = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse("a0 = 2\nomega0 = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse("interaction = B\n"), ConfigError);
  CHECK_THROWS_AS(parse("a0 = two\n"), ConfigError);
  CHECK_THROWS_AS(parse("a0 = 2\nmodes = 4\n"), ConfigError);
  CHECK_THROWS_AS(parse("a0 = 2\nsolve_tol = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse("a0 = 2\ninteraction = A:1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse("a0 = 2\nprofile = spiral\n"), ConfigError);
  CHECK_THROWS_AS(parse("a0 = 2\nprofile = table\n"), ConfigError);
  CHECK_THROWS_AS(parse("a0 = 2\njunk line\n"), ConfigError);
  CHECK_THROWS_AS(parse("a0 = 1.8\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), ConfigError);
  CHECK(config_help().find("angular_nodes") != std::string::npos);
}

TEST_CASE("a0 and omega0 give the same base") {
  const BaseState a = base_from(parse("a0 = 2\n"));
  const BaseState w = base_from(parse("omega0 = 0.886226925452758\n"));
  CHECK(a.omega0 == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-14));
  CHECK(w.a0 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(w.dphi0_at_1 == doctest::Approx(a.dphi0_at_1).epsilon(1e-12));
  CHECK(base_from(parse("omega0 = 1\na0_min = 1.5\n")).a0 == doctest::Approx(std::sqrt(std::numbers::pi)));
  CHECK_THROWS_AS(base_from(parse("omega0 = 10\n")), DomainError);
  CHECK_THROWS_AS(base_from(parse("a0 = 2\nprofile = constant\n")), DegenerateBaseError);
}
