#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modbrauer/brauer.hpp"

namespace modbrauer {

/// Grammar error; `position` is the 0-based offset into the parsed string.
class ParseError : public SpecError {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Accepts either the raw grammar
///   type=A3xC2 pi1=<trivial|full|so-kernel|omega-kernel|mu(k)|gens:(v;v;...)> delta=(v) genus=g
///   [twisted] [allow-low-genus]
/// or a preset
///   SL(n) PGL(n) Sp(2n) PSp(2n) Spin(n) SO(n) PSO(2n) Omega(4n) G2 F4 E6 E7 E8
/// followed by optional d=<int>, genus=<g>, twisted, allow-low-genus.
/// The result is validated. `max_rank` caps the total rank. With `defer_genus_check` a
/// genus below 3 is accepted so that the caller can apply its own override first.
GroupSpec parse_group(std::string_view s, int max_rank = 64, bool defer_genus_check = false);

/// Raw-grammar form; parse_group(render(spec)) == spec.
std::string render(const GroupSpec& spec);

/// Preset expansion (see parse_group). `family` is e.g. "SO", `n` the number in parentheses.
GroupSpec preset_spec(std::string_view family, int n, Int d, int genus = 3, bool twisted = false);

/// MODULI_BRAUER_MAX_RANK, default 64.
int max_rank_from_env();

enum class RunMode { Moduli, Stack, Both, Table7 };
enum class OutputFormat { Json, Markdown };

struct CliRequest {
  std::string spec_source;
  std::optional<int> genus;  // overrides a genus given inside spec_source
  RunMode mode = RunMode::Both;
  OutputFormat output = OutputFormat::Json;
  bool override_genus_check = false;
};

struct RunResult {
  std::string document;
  int exit_code = 0;  // 0 resolved, 2 graded-only, 1 error or table mismatch
  std::vector<std::string> warnings;
};

/// Never throws for bad input; errors become exit code 1 with a message document.
RunResult run(const CliRequest& req);

std::string report_json(const BrauerReport& report, RunMode mode, const std::vector<std::string>& warnings = {});
std::string report_markdown(const BrauerReport& report, RunMode mode);

RunMode parse_run_mode(std::string_view s);
OutputFormat parse_output_format(std::string_view s);

}  // namespace modbrauer
