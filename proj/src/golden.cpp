#include "modbrauer/golden.hpp"

#include <numeric>
#include <sstream>

#include <json.hpp>

namespace modbrauer {

namespace {

// Closed-form expectations, written without the engine: homocyclic groups (Z/e)^k,
// the exterior square of (Z/e)^r is (Z/e)^(r(r-1)/2).
std::string label_of(const Vector& cyclic_orders) { return FinAbGroup::from_cyclic_orders(cyclic_orders).label(); }

Vector homocyclic(Int e, Int count) { return Vector(static_cast<std::size_t>(count), e); }

Int pairs(Int r) { return r * (r - 1) / 2; }

Vector concat(Vector a, const Vector& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct Builder {
  int genus;
  std::vector<GoldenRow> rows;

  void add(std::string family, std::string label, const GroupSpec* spec, std::string quantity, std::string expected,
           std::string got) {
    GoldenRow r;
    r.family = std::move(family);
    r.label = std::move(label);
    r.quantity = std::move(quantity);
    r.spec = spec ? render(*spec) : "-";
    r.pass = expected == got;
    r.expected = std::move(expected);
    r.got = std::move(got);
    rows.push_back(std::move(r));
  }

  // Runs the engine; an exception becomes a failing row.
  template <class F>
  void guarded(const std::string& family, const std::string& label, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(family, label, nullptr, "error", "no error", e.what());
    }
  }
};

std::string power_text(const BrauerReport& r) { return r.descent_power ? std::to_string(*r.descent_power) : "n/a"; }

std::string brauer_label(const BrauerGroup& b) { return b.resolved ? b.group.label() : "graded-only"; }

}  // namespace

std::vector<GoldenRow> table_section7(int genus) {
  Builder b{genus, {}};
  const Int two_g = 2 * static_cast<Int>(genus);

  // SL(n), twisted by d: Z/gcd(n, d).
  for (int n = 2; n <= 8; ++n)
    for (int d = 0; d < n; ++d) {
      const std::string label = "SL(" + std::to_string(n) + ") d=" + std::to_string(d);
      b.guarded("SL", label, [&] {
        const GroupSpec s = preset_spec("SL", n, d, genus, true);
        const BrauerReport r = br_moduli(s);
        b.add("SL", label, &s, "moduli", label_of({std::gcd(n, d)}), brauer_label(r.moduli));
      });
    }

  // Sp(2n), twisted by the nontrivial central element.
  for (int n = 3; n <= 8; ++n) {
    const std::string label = "Sp(" + std::to_string(2 * n) + ") d=1";
    b.guarded("Sp", label, [&] {
      const GroupSpec s = preset_spec("Sp", 2 * n, 1, genus, true);
      const BrauerReport r = br_moduli(s);
      b.add("Sp", label, &s, "moduli", n % 2 == 1 ? "0" : "Z/2", brauer_label(r.moduli));
      b.add("Sp", label, &s, "descent_power", n % 2 == 1 ? "2" : "1", power_text(r));
    });
    b.add("Sp", "Sp(" + std::to_string(2 * n) + ") locally factorial", nullptr, "locally_factorial",
          n % 2 == 1 ? "true" : "false", sp_local_factoriality(n) ? "true" : "false");
  }

  // PSp(2n): H^2(Gamma) for n odd, H^2(Gamma) + Z/2 for n even; pi1 = Z/2.
  const Vector lambda_z2 = homocyclic(2, pairs(two_g));
  for (int n = 3; n <= 8; ++n)
    for (int d = 0; d <= 1; ++d) {
      const std::string label = "PSp(" + std::to_string(2 * n) + ") d=" + std::to_string(d);
      b.guarded("PSp", label, [&] {
        const GroupSpec s = preset_spec("PSp", 2 * n, d, genus);
        const BrauerReport r = br_moduli(s);
        const std::string expected = label_of(n % 2 == 1 ? lambda_z2 : concat(lambda_z2, {2}));
        b.add("PSp", label, &s, "stack", expected, brauer_label(r.stack));
        b.add("PSp", label, &s, "moduli", expected, brauer_label(r.moduli));
      });
    }

  // Spin(n), twisted: the five clauses.
  for (int n = 7; n <= 16; ++n) {
    const Int zorder = (n % 2 == 1) ? 2 : 4;
    const bool cyclic4 = n % 4 == 2;
    for (Int d = 0; d < zorder; ++d) {
      const std::string label = "Spin(" + std::to_string(n) + ") delta=" + std::to_string(d);
      std::string moduli, power;
      if (d == 0) {
        moduli = n % 2 == 1 ? "Z/2" : (cyclic4 ? "Z/4" : "(Z/2)^2");
        power = "1";
      } else if (n % 2 == 1) {
        moduli = "Z/2";
        power = "1";
      } else if (cyclic4 && d % 2 == 1) {
        moduli = "0";
        power = "4";
      } else {
        moduli = "Z/2";
        power = "2";
      }
      b.guarded("Spin", label, [&] {
        const GroupSpec s = preset_spec("Spin", n, d, genus, true);
        const BrauerReport r = br_moduli(s);
        b.add("Spin", label, &s, "moduli", moduli, brauer_label(r.moduli));
        b.add("Spin", label, &s, "descent_power", power, power_text(r));
      });
    }
  }

  // SO(n), n >= 8: pi1 = Z/2.
  for (int n = 8; n <= 16; ++n)
    for (int d = 0; d <= 1; ++d) {
      const std::string label = "SO(" + std::to_string(n) + ") delta=" + std::to_string(d);
      Vector zdual = n % 2 == 1 ? Vector{2} : (n % 4 == 2 ? Vector{4} : Vector{2, 2});
      b.guarded("SO", label, [&] {
        const GroupSpec s = preset_spec("SO", n, d, genus);
        const BrauerReport r = br_moduli(s);
        b.add("SO", label, &s, "moduli", label_of(concat(lambda_z2, d == 0 ? zdual : Vector{2})), brauer_label(r.moduli));
        b.add("SO", label, &s, "stack", label_of(concat(lambda_z2, {2})), brauer_label(r.stack));
      });
    }

  // PSO(2n): (B / A) + Z^dual with B = H^2(H^1(C, Z^dual)).
  for (int dim = 8; dim <= 16; dim += 2) {
    const bool cyclic4 = dim % 4 == 2;
    const Vector zdual = cyclic4 ? Vector{4} : Vector{2, 2};
    for (Int d = 0; d < 4; ++d) {
      const std::string label = "PSO(" + std::to_string(dim) + ") delta=" + std::to_string(d);
      Int a = 1;
      if (!cyclic4) a = d == 0 ? 2 : 1;
      else if (d == 0) a = 4;
      else if (d == 2) a = 2;
      // B is (Z/e)^N; removing a cyclic subgroup of order a leaves (Z/e)^(N-1) + Z/(e/a).
      const Int e = cyclic4 ? 4 : 2;
      const Int rank = cyclic4 ? two_g : 2 * two_g;
      Vector bmod = homocyclic(e, pairs(rank) - 1);
      bmod.push_back(e / a);
      const std::string expected = label_of(concat(bmod, zdual));
      b.guarded("PSO", label, [&] {
        const GroupSpec s = preset_spec("PSO", dim, d, genus);
        const BrauerReport r = br_moduli(s);
        b.add("PSO", label, &s, "moduli", expected, brauer_label(r.moduli));
        b.add("PSO", label, &s, "stack", expected, brauer_label(r.stack));
        // |A| read back from the engine: |B| |Z| / |Br|.
        const BigInt implied = r.moduli.resolved ? r.h2_gamma.order() * r.center.order() / r.moduli.group.order() : 0;
        b.add("PSO", label, &s, "A_order", std::to_string(a), to_string(implied));
      });
    }
  }

  // Omega(4n): moduli H^2(Gamma) + Z/2; stack H^2(Gamma) + A with A = 0 iff d = 0 or n odd.
  for (int dim = 12; dim <= 16; dim += 4) {
    const int n = dim / 4;
    for (int d = 0; d <= 1; ++d) {
      const std::string label = "Omega(" + std::to_string(dim) + ") d=" + std::to_string(d);
      const bool a_nontrivial = !(d == 0 || n % 2 == 1);
      b.guarded("Omega", label, [&] {
        const GroupSpec s = preset_spec("Omega", dim, d, genus);
        const BrauerReport r = br_moduli(s);
        b.add("Omega", label, &s, "moduli", label_of(concat(lambda_z2, {2})), brauer_label(r.moduli));
        b.add("Omega", label, &s, "stack", label_of(a_nontrivial ? concat(lambda_z2, {2}) : lambda_z2),
              brauer_label(r.stack));
      });
    }
  }

  // Exceptional simply connected groups.
  for (const char* name : {"G2", "F4", "E6", "E7", "E8"}) {
    const std::string label = std::string(name) + " delta=0";
    const std::string zdual = std::string(name) == "E6" ? "Z/3" : std::string(name) == "E7" ? "Z/2" : "0";
    b.guarded("exceptional", label, [&] {
      const GroupSpec s = preset_spec(name, 0, 0, genus);
      const BrauerReport r = br_moduli(s);
      b.add("exceptional", label, &s, "stack", "0", brauer_label(r.stack));
      b.add("exceptional", label, &s, "moduli", zdual, brauer_label(r.moduli));
    });
  }
  return std::move(b.rows);
}

std::string table_json(const std::vector<GoldenRow>& rows) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  std::size_t mismatches = 0;
  for (const GoldenRow& r : rows) {
    if (!r.pass) ++mismatches;
    arr.push_back({{"family", r.family},
                   {"label", r.label},
                   {"quantity", r.quantity},
                   {"spec", r.spec},
                   {"expected", r.expected},
                   {"got", r.got},
                   {"pass", r.pass}});
  }
  j["rows"] = arr;
  j["total"] = rows.size();
  j["mismatches"] = mismatches;
  return j.dump(2) + "\n";
}

std::string table_markdown(const std::vector<GoldenRow>& rows) {
  std::ostringstream os;
  std::size_t mismatches = 0;
  std::string family;
  for (const GoldenRow& r : rows) {
    if (r.family != family) {
      family = r.family;
      os << (os.tellp() > 0 ? "\n" : "") << "## " << family << "\n\n";
      os << "| case | quantity | expected | got | status |\n|---|---|---|---|---|\n";
    }
    if (!r.pass) ++mismatches;
    os << "| " << r.label << " | " << r.quantity << " | " << r.expected << " | " << r.got << " | "
       << (r.pass ? "ok" : "MISMATCH") << " |\n";
  }
  os << "\n" << rows.size() << " rows, " << mismatches << " mismatches\n";
  return os.str();
}

}  // namespace modbrauer
