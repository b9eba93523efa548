#include <iostream>

#include <CLI11.hpp>

#include "modbrauer/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Brauer groups of moduli of principal bundles on a curve"};
  std::string group;
  std::optional<int> genus;
  std::string mode = "both";
  std::string format = "json";
  bool allow_low_genus = false;

  app.add_option("-G,--group", group, "Group spec (type=... pi1=... delta=... genus=...) or preset such as 'SO(10) d=1'");
  app.add_option("--genus", genus, "Curve genus (overrides genus= in the spec)");
  app.add_option("--mode", mode, "moduli | stack | both | table7")
      ->check(CLI::IsMember({"moduli", "stack", "both", "table7"}));
  app.add_option("--format", format, "json | md")->check(CLI::IsMember({"json", "md", "markdown"}));
  app.add_flag("--allow-low-genus", allow_low_genus, "Accept genus below 3");
  CLI11_PARSE(app, argc, argv);

  modbrauer::CliRequest req;
  req.spec_source = group;
  req.genus = genus;
  req.mode = modbrauer::parse_run_mode(mode);
  req.output = modbrauer::parse_output_format(format);
  req.override_genus_check = allow_low_genus;
  if (req.mode != modbrauer::RunMode::Table7 && group.empty()) {
    std::cerr << "error: --group is required unless --mode table7\n";
    return 1;
  }

  const modbrauer::RunResult result = modbrauer::run(req);
  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
  (result.exit_code == 1 && req.mode != modbrauer::RunMode::Table7 ? std::cerr : std::cout) << result.document;
  return result.exit_code;
}
