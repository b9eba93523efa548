#include "modbrauer/cli.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

#include "modbrauer/golden.hpp"

namespace modbrauer {

using json = nlohmann::ordered_json;

ParseError::ParseError(const std::string& message, std::size_t position)
    : SpecError(message + " (at position " + std::to_string(position) + ")"), position_(position) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    out.push_back({s.substr(start, i - start), start});
  }
  return out;
}

Int parse_int(std::string_view s, std::size_t pos) {
  Int v = 0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected an integer, got '" + std::string(s) + "'", pos);
  return v;
}

int parse_small_int(std::string_view s, std::size_t pos) {
  const Int v = parse_int(s, pos);
  if (v < -1000000 || v > 1000000) throw ParseError("integer out of range: " + std::string(s), pos);
  return static_cast<int>(v);
}

// "1,0,2" -> {1,0,2}; empty string -> {}.
Vector parse_components(std::string_view s, std::size_t pos) {
  Vector v;
  if (s.empty()) return v;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    const std::string_view part = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    v.push_back(parse_int(part, pos + start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return v;
}

// "(1,0)" -> {1,0}
Vector parse_paren_vector(std::string_view s, std::size_t pos) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw ParseError("expected a parenthesised vector like (1,0), got '" + std::string(s) + "'", pos);
  return parse_components(s.substr(1, s.size() - 2), pos + 1);
}

// "(1,0;0,1)" -> {{1,0},{0,1}}; "()" -> {}
std::vector<Vector> parse_vector_list(std::string_view s, std::size_t pos) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw ParseError("expected gens:(v;v;...), got '" + std::string(s) + "'", pos);
  std::vector<Vector> out;
  const std::string_view body = s.substr(1, s.size() - 2);
  if (body.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t semi = body.find(';', start);
    const std::string_view part = body.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    out.push_back(parse_components(part, pos + 1 + start));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return out;
}

std::string render_vector(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Center element from a preset index: cyclic centers use d times the canonical generator,
// (Z/2)^2 uses d = a + 2b for a (vector class) + b (half-spin class).
Vector encode_center_index(const CenterData& c, Int d, std::size_t pos) {
  const FinAbGroup& z = c.group;
  const Int order = static_cast<Int>(z.order());
  if (d < 0 || d >= order)
    throw ParseError("d=" + std::to_string(d) + " is outside the center of order " + std::to_string(order), pos);
  if (z.is_trivial()) return {};
  if (z.is_cyclic()) return {d};
  return {d % 2, d / 2};
}

void check_rank(const std::vector<DynkinType>& factors, int max_rank, std::size_t pos) {
  long total = 0;
  for (const DynkinType& t : factors) total += t.rank;
  if (total > max_rank)
    throw ParseError("total rank " + std::to_string(total) + " exceeds the limit " + std::to_string(max_rank) +
                         " (MODULI_BRAUER_MAX_RANK)",
                     pos);
}

bool is_preset_head(std::string_view t) {
  const auto paren = t.find('(');
  if (paren == std::string_view::npos) return t == "G2" || t == "F4" || t == "E6" || t == "E7" || t == "E8";
  return t.back() == ')';
}

GroupSpec parse_raw(const std::vector<Token>& tokens, int max_rank, bool defer_genus) {
  GroupSpec spec;
  std::optional<Token> type_tok, pi1_tok, delta_tok;
  std::map<std::string, std::size_t> seen;
  for (const Token& tok : tokens) {
    const auto eq = tok.text.find('=');
    const std::string key(eq == std::string_view::npos ? tok.text : tok.text.substr(0, eq));
    if (seen.count(key)) throw ParseError("duplicate field '" + key + "'", tok.pos);
    seen[key] = tok.pos;
    const std::string_view value = eq == std::string_view::npos ? std::string_view() : tok.text.substr(eq + 1);
    const std::size_t vpos = tok.pos + (eq == std::string_view::npos ? 0 : eq + 1);
    if (key == "type") {
      type_tok = Token{value, vpos};
    } else if (key == "pi1") {
      pi1_tok = Token{value, vpos};
    } else if (key == "delta") {
      delta_tok = Token{value, vpos};
    } else if (key == "genus") {
      spec.genus = parse_small_int(value, vpos);
    } else if (key == "twisted" && eq == std::string_view::npos) {
      spec.mode = SpecMode::TwistedSimplyConnected;
    } else if (key == "allow-low-genus" && eq == std::string_view::npos) {
      spec.allow_low_genus = true;
    } else {
      throw ParseError("unknown field '" + std::string(tok.text) + "'", tok.pos);
    }
  }
  if (!type_tok) throw ParseError("missing type=...", 0);

  std::size_t start = 0;
  const std::string_view tv = type_tok->text;
  for (;;) {
    const std::size_t x = tv.find('x', start);
    const std::string_view part = tv.substr(start, x == std::string_view::npos ? std::string_view::npos : x - start);
    try {
      spec.factors.push_back(parse_type(part));
    } catch (const SpecError& e) {
      throw ParseError(e.what(), type_tok->pos + start);
    }
    if (x == std::string_view::npos) break;
    start = x + 1;
  }
  check_rank(spec.factors, max_rank, type_tok->pos);
  const CenterData c = product_center(spec.factors);

  if (pi1_tok) {
    const std::string_view v = pi1_tok->text;
    if (v.substr(0, 5) == "gens:") {
      spec.pi1_gens = parse_vector_list(v.substr(5), pi1_tok->pos + 5);
    } else if (v == "trivial") {
      spec.pi1_gens = {};
    } else if (v == "full") {
      for (std::size_t i = 0; i < c.group.num_factors(); ++i) spec.pi1_gens.push_back(c.group.lift(c.group.generator(i)));
    } else {
      if (spec.factors.size() != 1)
        throw ParseError("named subgroup '" + std::string(v) + "' needs a single simple factor; use gens:(...)", pi1_tok->pos);
      try {
        spec.pi1_gens = named_subgroup(spec.factors[0], v);
      } catch (const SpecError& e) {
        throw ParseError(e.what(), pi1_tok->pos);
      }
    }
  }
  spec.delta = delta_tok ? parse_paren_vector(delta_tok->text, delta_tok->pos) : Vector(c.group.ambient_dim(), 0);
  try {
    GroupSpec probe = spec;
    probe.allow_low_genus = probe.allow_low_genus || defer_genus;
    validate(probe, c);
  } catch (const SpecError& e) {
    throw ParseError(e.what(), delta_tok ? delta_tok->pos : type_tok->pos);
  }
  return spec;
}

GroupSpec parse_preset(const std::vector<Token>& tokens, int max_rank, bool defer_genus) {
  const Token head = tokens[0];
  std::string family;
  int n = 0;
  const auto paren = head.text.find('(');
  if (paren == std::string_view::npos) {
    family = std::string(head.text);
  } else {
    family = std::string(head.text.substr(0, paren));
    n = parse_small_int(head.text.substr(paren + 1, head.text.size() - paren - 2), head.pos + paren + 1);
  }
  Int d = 0;
  int genus = 3;
  bool twisted = false, allow_low = false;
  std::map<std::string, bool> seen;
  std::size_t d_pos = head.pos;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    const auto eq = tok.text.find('=');
    const std::string key(eq == std::string_view::npos ? tok.text : tok.text.substr(0, eq));
    if (seen[key]) throw ParseError("duplicate field '" + key + "'", tok.pos);
    seen[key] = true;
    if (key == "d" && eq != std::string_view::npos) {
      d = parse_int(tok.text.substr(eq + 1), tok.pos + eq + 1);
      d_pos = tok.pos + eq + 1;
    } else if (key == "genus" && eq != std::string_view::npos) {
      genus = parse_small_int(tok.text.substr(eq + 1), tok.pos + eq + 1);
    } else if (key == "twisted" && eq == std::string_view::npos) {
      twisted = true;
    } else if (key == "allow-low-genus" && eq == std::string_view::npos) {
      allow_low = true;
    } else {
      throw ParseError("unknown preset option '" + std::string(tok.text) + "'", tok.pos);
    }
  }
  GroupSpec spec;
  try {
    spec = preset_spec(family, n, d, genus, twisted);
  } catch (const ParseError&) {
    throw;
  } catch (const SpecError& e) {
    // Low genus is re-validated below once the override flag is known.
    if (!(allow_low || defer_genus) || genus >= 3) throw ParseError(e.what(), d_pos);
    spec = preset_spec(family, n, d, 3, twisted);
    spec.genus = genus;
  }
  spec.allow_low_genus = allow_low;
  check_rank(spec.factors, max_rank, head.pos);
  try {
    GroupSpec probe = spec;
    probe.allow_low_genus = allow_low || defer_genus;
    validate(probe);
  } catch (const SpecError& e) {
    throw ParseError(e.what(), d_pos);
  }
  return spec;
}

}  // namespace

GroupSpec preset_spec(std::string_view family, int n, Int d, int genus, bool twisted) {
  auto fail = [&](const std::string& why) -> GroupSpec {
    throw SpecError("preset " + std::string(family) + "(" + std::to_string(n) + "): " + why);
  };
  GroupSpec spec;
  spec.genus = genus;
  DynkinType t;
  enum class Sub { Trivial, Full, SoKernel, OmegaKernel } sub = Sub::Trivial;
  bool index_is_pi1_generator = false;  // d counts multiples of the pi1 generator

  if (family == "SL" || family == "PGL") {
    if (n < 2) return fail("needs n >= 2");
    t = make_type(Family::A, n - 1);
    if (family == "PGL") sub = Sub::Full;
  } else if (family == "Sp" || family == "PSp") {
    if (n % 2 != 0 || n < 4) return fail("argument must be 2n with n >= 2");
    t = make_type(Family::C, n / 2);
    if (family == "PSp") sub = Sub::Full;
  } else if (family == "Spin" || family == "SO") {
    if (n < 5) return fail("needs n >= 5");
    t = n % 2 == 1 ? make_type(Family::B, (n - 1) / 2) : make_type(Family::D, n / 2);
    if (family == "SO") {
      sub = Sub::SoKernel;
      index_is_pi1_generator = true;
    }
  } else if (family == "PSO") {
    if (n % 2 != 0 || n < 6) return fail("argument must be 2n with n >= 3");
    t = make_type(Family::D, n / 2);
    sub = Sub::Full;
  } else if (family == "Omega") {
    if (n % 4 != 0 || n < 12) return fail("argument must be 4n with 4n >= 12");
    t = make_type(Family::D, n / 2);
    sub = Sub::OmegaKernel;
    index_is_pi1_generator = true;
  } else if (family == "G2" || family == "F4" || family == "E6" || family == "E7" || family == "E8") {
    t = parse_type(family);
  } else {
    return fail("unknown preset");
  }
  spec.factors = {t};
  const CenterData c = center(t);

  switch (sub) {
    case Sub::Trivial: break;
    case Sub::Full: spec.pi1_gens = named_subgroup(t, "full"); break;
    case Sub::SoKernel: spec.pi1_gens = named_subgroup(t, "so-kernel"); break;
    case Sub::OmegaKernel: spec.pi1_gens = named_subgroup(t, "omega-kernel"); break;
  }
  if (twisted) {
    if (sub != Sub::Trivial) return fail("twisted mode applies to simply connected presets only");
    spec.mode = SpecMode::TwistedSimplyConnected;
  }
  if (index_is_pi1_generator) {
    if (d != 0 && d != 1) return fail("d must be 0 or 1 (pi1 has order 2)");
    spec.delta = c.group.scale(d, spec.pi1_gens.at(0));
  } else {
    spec.delta = encode_center_index(c, d, 0);
  }
  if (!twisted && sub == Sub::Trivial && d != 0) return fail("d must be 0 for a simply connected group; add 'twisted'");
  validate(spec, c);
  return spec;
}

GroupSpec parse_group(std::string_view s, int max_rank, bool defer_genus_check) {
  const std::vector<Token> tokens = tokenize(s);
  if (tokens.empty()) throw ParseError("empty group specification", 0);
  if (tokens[0].text.substr(0, 5) == "type=" || tokens[0].text.find('=') != std::string_view::npos)
    return parse_raw(tokens, max_rank, defer_genus_check);
  if (!is_preset_head(tokens[0].text)) throw ParseError("expected type=... or a preset such as SO(10)", tokens[0].pos);
  return parse_preset(tokens, max_rank, defer_genus_check);
}

std::string render(const GroupSpec& spec) {
  std::string s = "type=";
  for (std::size_t i = 0; i < spec.factors.size(); ++i) s += (i ? "x" : "") + spec.factors[i].name();
  if (spec.pi1_gens.empty()) {
    s += " pi1=trivial";
  } else {
    s += " pi1=gens:(";
    for (std::size_t i = 0; i < spec.pi1_gens.size(); ++i) {
      const std::string v = render_vector(spec.pi1_gens[i]);
      s += (i ? ";" : "") + v.substr(1, v.size() - 2);
    }
    s += ")";
  }
  s += " delta=" + render_vector(spec.delta);
  s += " genus=" + std::to_string(spec.genus);
  if (spec.mode == SpecMode::TwistedSimplyConnected) s += " twisted";
  if (spec.allow_low_genus) s += " allow-low-genus";
  return s;
}

int max_rank_from_env() {
  const char* v = std::getenv("MODULI_BRAUER_MAX_RANK");
  if (!v || !*v) return 64;
  int r = 0;
  const std::string_view sv(v);
  auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), r);
  if (ec != std::errc() || ptr != sv.data() + sv.size() || r < 1)
    throw SpecError("MODULI_BRAUER_MAX_RANK must be a positive integer");
  return r;
}

RunMode parse_run_mode(std::string_view s) {
  if (s == "moduli") return RunMode::Moduli;
  if (s == "stack") return RunMode::Stack;
  if (s == "both") return RunMode::Both;
  if (s == "table7") return RunMode::Table7;
  throw SpecError("unknown mode '" + std::string(s) + "'");
}

OutputFormat parse_output_format(std::string_view s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "md" || s == "markdown") return OutputFormat::Markdown;
  throw SpecError("unknown format '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Report rendering.

namespace {

const char* mode_name(RunMode m) {
  switch (m) {
    case RunMode::Moduli: return "moduli";
    case RunMode::Stack: return "stack";
    case RunMode::Both: return "both";
    case RunMode::Table7: return "table7";
  }
  return "both";
}

json group_json(const FinAbGroup& g) {
  json j;
  j["label"] = g.label();
  j["invariant_factors"] = g.invariant_factors();
  j["order"] = to_string(g.order());
  return j;
}

json opt_int(const std::optional<Int>& v) { return v ? json(*v) : json(nullptr); }

json brauer_json(const BrauerGroup& b) {
  json j;
  j["resolved"] = b.resolved;
  j["group"] = b.resolved ? group_json(b.group) : json(nullptr);
  json pieces = json::array();
  for (const Piece& p : b.pieces) pieces.push_back({{"role", p.role}, {"group", group_json(p.group)}});
  j["pieces"] = pieces;
  j["split"] = b.split == SplitStatus::ProvenSplit ? "proven-split" : "order-only";
  j["order"] = b.order ? json(to_string(*b.order)) : json(nullptr);
  j["order_divides"] = b.order_divides ? json(to_string(*b.order_divides)) : json(nullptr);
  j["order_at_least"] = to_string(b.order_at_least);
  return j;
}

std::string brauer_text(const BrauerGroup& b) {
  if (b.resolved) return b.group.label();
  std::string s = "graded: ";
  for (std::size_t i = 0; i < b.pieces.size(); ++i) s += (i ? ", " : "") + b.pieces[i].role + " = " + b.pieces[i].group.label();
  s += "; order >= " + to_string(b.order_at_least);
  if (b.order_divides) s += ", divides " + to_string(*b.order_divides);
  return s;
}

}  // namespace

std::string report_json(const BrauerReport& r, RunMode mode, const std::vector<std::string>& warnings) {
  json j;
  j["input"] = {{"spec", render(r.spec)},
                {"factors", [&] {
                   json f = json::array();
                   for (const DynkinType& t : r.spec.factors) f.push_back(t.name());
                   return f;
                 }()},
                {"pi1_gens", r.spec.pi1_gens},
                {"delta", r.spec.delta},
                {"genus", r.spec.genus},
                {"mode", r.spec.mode == SpecMode::Component ? "component" : "twisted-sc"},
                {"report", mode_name(mode)}};
  j["classification"] = r.classification.name;
  j["center"] = group_json(r.center);
  j["pi1"] = group_json(r.pi1);
  j["psi"] = group_json(r.psi);
  j["psi_G"] = group_json(r.psi_G);
  j["ev_image"] = group_json(r.ev_image);
  j["coker_ev"] = group_json(r.coker_ev);
  j["gamma"] = group_json(r.gamma);
  j["h2_gamma"] = group_json(r.h2_gamma);
  j["pi1_dual_quotient"] = r.pi1_dual_quotient ? group_json(*r.pi1_dual_quotient) : json(nullptr);
  j["stack_descent_index"] = opt_int(r.stack_descent_index);
  j["kernel_index_m"] = opt_int(r.kernel_index_m);
  j["stack_brauer"] = mode == RunMode::Moduli ? json(nullptr) : brauer_json(r.stack);
  j["moduli_brauer"] = mode == RunMode::Stack ? json(nullptr) : brauer_json(r.moduli);
  j["descent_power"] = opt_int(r.descent_power);
  j["cross_check"] = {{"status", to_string(r.cross_check.status)},
                      {"m", opt_int(r.cross_check.m)},
                      {"lhs", to_string(r.cross_check.lhs)},
                      {"rhs", to_string(r.cross_check.rhs)},
                      {"detail", r.cross_check.detail}};
  j["citations"] = r.notes;
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

std::string report_markdown(const BrauerReport& r, RunMode mode) {
  std::ostringstream os;
  os << "# Brauer groups for `" << render(r.spec) << "`\n\n";
  os << "Classification: " << r.classification.name << "\n\n";
  os << "| quantity | value |\n|---|---|\n";
  auto row = [&](const std::string& k, const std::string& v) { os << "| " << k << " | " << v << " |\n"; };
  row("center", r.center.label());
  row("pi1", r.pi1.label());
  row("Psi", r.psi.label());
  row("Psi(G)", r.psi_G.label());
  row("Im(ev)", r.ev_image.label());
  row("Coker(ev)", r.coker_ev.label());
  row("Gamma", r.gamma.label());
  row("H^2(Gamma, C*)", r.h2_gamma.label());
  if (r.pi1_dual_quotient) row("pi1^dual / Im(Pic)", r.pi1_dual_quotient->label());
  if (mode != RunMode::Moduli) {
    row("Br(stack)", brauer_text(r.stack));
    if (r.stack.order) row("\\|Br(stack)\\|", to_string(*r.stack.order));
  }
  if (mode != RunMode::Stack) {
    row("Br(moduli)", brauer_text(r.moduli));
    if (r.moduli.order) row("\\|Br(moduli)\\|", to_string(*r.moduli.order));
  }
  row("descent power", r.descent_power ? std::to_string(*r.descent_power) : "n/a");
  row("cross check", to_string(r.cross_check.status) + (r.cross_check.m ? " (m = " + std::to_string(*r.cross_check.m) + ")" : ""));
  os << "\n## Citations\n\n";
  for (const std::string& n : r.notes) os << "- " << n << "\n";
  return os.str();
}

RunResult run(const CliRequest& req) {
  RunResult out;
  try {
    if (req.mode == RunMode::Table7) {
      const int genus = req.genus.value_or(3);
      if (genus < 3 && !req.override_genus_check) throw SpecError("genus below 3 needs --allow-low-genus");
      const auto rows = table_section7(genus);
      bool ok = true;
      for (const GoldenRow& r : rows) ok = ok && r.pass;
      out.document = req.output == OutputFormat::Json ? table_json(rows) : table_markdown(rows);
      out.exit_code = ok ? 0 : 1;
      return out;
    }
    GroupSpec spec = parse_group(req.spec_source, max_rank_from_env(), true);
    if (req.genus) spec.genus = *req.genus;
    if (req.override_genus_check) spec.allow_low_genus = true;
    validate(spec);
    if (spec.genus < 3)
      out.warnings.push_back("genus " + std::to_string(spec.genus) +
                             " is below 3; the formulas are applied outside their proven range");
    const BrauerReport report = br_moduli(spec);
    out.document = req.output == OutputFormat::Json ? report_json(report, req.mode, out.warnings)
                                                    : report_markdown(report, req.mode);
    bool resolved = true;
    if (req.mode != RunMode::Moduli) resolved = resolved && report.stack.resolved;
    if (req.mode != RunMode::Stack) resolved = resolved && report.moduli.resolved;
    out.exit_code = resolved ? 0 : 2;
  } catch (const ParseError& e) {
    out.exit_code = 1;
    out.document = json({{"error", e.what()}, {"position", e.position()}}).dump(2) + "\n";
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.document = json({{"error", e.what()}}).dump(2) + "\n";
  }
  return out;
}

}  // namespace modbrauer
