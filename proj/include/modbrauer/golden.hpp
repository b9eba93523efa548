#pragma once

#include <string>
#include <vector>

#include "modbrauer/cli.hpp"

namespace modbrauer {

/// One machine-checked claim about a classical group: the engine's answer next to the
/// value predicted by the closed-form rule for that family.
struct GoldenRow {
  std::string family;    // "SL", "Sp", "PSp", "Spin", "SO", "PSO", "Omega", "exceptional"
  std::string label;     // e.g. "Spin(11) delta=1"
  std::string quantity;  // "moduli", "stack", "descent_power", "locally_factorial"
  std::string spec;      // rendered spec ("-" when the row has none)
  std::string expected;
  std::string got;
  bool pass = false;
};

/// Every classical-group claim over the fixed grid: SL(2..8), Sp and PSp for n = 3..8,
/// Spin(7..16), SO(8..16), PSO(8..16), Omega(12, 16), plus G2, F4, E6, E7, E8.
std::vector<GoldenRow> table_section7(int genus = 3);

std::string table_json(const std::vector<GoldenRow>& rows);
std::string table_markdown(const std::vector<GoldenRow>& rows);

}  // namespace modbrauer
