#include <doctest.h>

#include <cstdlib>

#include <json.hpp>

#include "modbrauer/cli.hpp"
#include "modbrauer/golden.hpp"

using namespace modbrauer;
using nlohmann::json;

TEST_CASE("preset expansion") {
  GroupSpec s = parse_group("PSp(6) d=0 genus=3");
  CHECK(s.factors == std::vector<DynkinType>{make_type(Family::C, 3)});
  CHECK(s.pi1_gens == std::vector<Vector>{{1}});
  CHECK(s.delta == Vector{0});
  CHECK(s.genus == 3);

  s = parse_group("SO(10) d=1 genus=3");
  CHECK(s.factors == std::vector<DynkinType>{make_type(Family::D, 5)});
  REQUIRE(s.pi1_gens.size() == 1);
  CHECK(s.delta == s.pi1_gens[0]);
  CHECK(s.delta != Vector{0});

  s = parse_group("type=A3 pi1=gens:(2) delta=(0) genus=4");
  CHECK(s.factors == std::vector<DynkinType>{make_type(Family::A, 3)});
  CHECK(s.pi1_gens == std::vector<Vector>{{2}});
  CHECK(s.genus == 4);

  CHECK(parse_group("Sp(6) twisted d=1").mode == SpecMode::TwistedSimplyConnected);
  CHECK(parse_group("type=C3xA1 pi1=gens:(1,1) delta=(1,1)").factors.size() == 2);
}

TEST_CASE("parse errors carry positions") {
  auto position_of = [](const char* s) -> long {
    try {
      parse_group(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(position_of("SO(10) d=3") == 9);
  CHECK(position_of("type=A3 pi1=gens:(2) delta=(1)") >= 0);
  CHECK(position_of("type=Q3") == 5);
  CHECK(position_of("type=A3 colour=red") == 8);
  CHECK(position_of("Omega(8)") >= 0);
  CHECK(position_of("Omega(10)") >= 0);
  CHECK(position_of("E8 genus=2") >= 0);
  CHECK(position_of("E8 genus=2 allow-low-genus") == -1);
  CHECK(position_of("SO(10) twisted") >= 0);
  CHECK(position_of("type=A200") >= 0);
}

TEST_CASE("render round trip") {
  std::vector<std::string> sources;
  for (int n = 2; n <= 8; ++n)
    for (int d = 0; d < n; ++d) {
      sources.push_back("SL(" + std::to_string(n) + ") twisted d=" + std::to_string(d));
      sources.push_back("PGL(" + std::to_string(n) + ") d=" + std::to_string(d) + " genus=4");
    }
  for (int n = 3; n <= 8; ++n)
    for (int d = 0; d < 2; ++d) {
      sources.push_back("Sp(" + std::to_string(2 * n) + ") twisted d=" + std::to_string(d));
      sources.push_back("PSp(" + std::to_string(2 * n) + ") d=" + std::to_string(d));
    }
  for (int n = 7; n <= 16; ++n) {
    sources.push_back("Spin(" + std::to_string(n) + ") twisted d=1");
    if (n >= 8) sources.push_back("SO(" + std::to_string(n) + ") d=1");
  }
  for (int n = 8; n <= 16; n += 2) sources.push_back("PSO(" + std::to_string(n) + ") d=3");
  for (const char* s : {"Omega(12) d=1", "Omega(16) d=0", "G2", "F4", "E6 twisted d=2", "E7", "E8 genus=5",
                        "type=A3 pi1=mu(2) delta=(2)", "type=D6 pi1=omega-kernel delta=(1,1)",
                        "type=D4 pi1=full delta=(1,0) genus=7", "type=A1xA1 pi1=gens:(1,1) delta=(0,0)",
                        "type=B3 genus=2 allow-low-genus", "type=C2xG2 twisted delta=(1)"})
    sources.push_back(s);
  for (const std::string& src : sources) {
    CAPTURE(src);
    const GroupSpec s = parse_group(src);
    CHECK(parse_group(render(s)) == s);
  }
}

TEST_CASE("run produces documents and exit codes") {
  CliRequest req;
  req.spec_source = "Sp(6) twisted d=1 genus=3";
  RunResult r = run(req);
  CHECK(r.exit_code == 0);
  json j = json::parse(r.document);
  CHECK(j["moduli_brauer"]["group"]["invariant_factors"] == json::array());
  CHECK(j["descent_power"] == 2);

  req.spec_source = "PGL(2) d=1 genus=3";
  r = run(req);
  CHECK(r.exit_code == 2);
  j = json::parse(r.document);
  CHECK(j["coker_ev"].is_object());
  CHECK(j["stack_brauer"]["resolved"] == false);

  req.spec_source = "E8 genus=3";
  r = run(req);
  CHECK(r.exit_code == 0);
  j = json::parse(r.document);
  CHECK(j["stack_brauer"]["group"]["order"] == "1");
  CHECK(j["moduli_brauer"]["group"]["order"] == "1");

  req.spec_source = "E8 genus=2";
  CHECK(run(req).exit_code == 1);
  req.override_genus_check = true;
  r = run(req);
  CHECK(r.exit_code == 0);
  CHECK(r.warnings.size() == 1);

  req = CliRequest{};
  req.spec_source = "SO(10) d=1";
  req.genus = 5;
  req.mode = RunMode::Stack;
  j = json::parse(run(req).document);
  CHECK(j["input"]["genus"] == 5);
  CHECK(j["moduli_brauer"].is_null());

  req.output = OutputFormat::Markdown;
  CHECK(run(req).document.find("|") != std::string::npos);

  req = CliRequest{};
  req.spec_source = "SO(10) d=3";
  r = run(req);
  CHECK(r.exit_code == 1);
  CHECK(json::parse(r.document)["position"] == 9);
}

TEST_CASE("rank limit from the environment") {
  setenv("MODULI_BRAUER_MAX_RANK", "4", 1);
  CliRequest req;
  req.spec_source = "type=A5";
  CHECK(run(req).exit_code == 1);
  unsetenv("MODULI_BRAUER_MAX_RANK");
  CHECK(run(req).exit_code == 0);
}

TEST_CASE("golden table has no mismatches") {
  const auto rows = table_section7();
  CHECK(rows.size() > 200);
  for (const GoldenRow& r : rows) {
    CAPTURE(r.label);
    CAPTURE(r.quantity);
    CHECK(r.expected == r.got);
  }
  CliRequest req;
  req.mode = RunMode::Table7;
  CHECK(run(req).exit_code == 0);
}
