#pragma once

// Building, lifting and evaluating family codes; writing and tabulating
// the resulting records.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "covering.hpp"
#include "css.hpp"
#include "distance.hpp"
#include "families.hpp"
#include "gf2.hpp"
#include "group.hpp"
#include "record.hpp"
#include "transfer.hpp"

namespace qtanner {

struct RunConfig {
  FamilySpec spec;
  std::vector<std::string> group_dirs;
  std::vector<std::string> group_names;
  std::size_t max_index = 30;
  std::size_t iterations = 100000;
  // Nonzero: every kernel is first searched with this many iterations and
  // only the best kernels of each index get the full count.
  std::size_t screen_iterations = 0;
  std::uint64_t seed = 1;
  std::size_t exact_bound = kDefaultExactBound;
  std::string out_dir = ".";
};

// Catalog groups of order <= max_index, sorted by (order, name).
inline std::vector<GroupTable> load_catalog(const RunConfig& cfg) {
  std::map<std::string, GroupTable> by_name;
  for (const auto& dir : cfg.group_dirs) {
    if (!std::filesystem::is_directory(dir)) throw Error("group catalog directory not found: " + dir);
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
      if (e.path().extension() == ".grp") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      std::ifstream is(f);
      // ':' is written as '_' in file names
      auto name = f.stem().string();
      std::replace(name.begin(), name.end(), '_', ':');
      auto g = read_group(is, name);
      by_name.emplace(g.name(), std::move(g));
    }
  }
  for (const auto& name : cfg.group_names) by_name.emplace(name, group_from_name(name));
  std::vector<GroupTable> out;
  for (auto& [name, g] : by_name)
    if (g.order() <= cfg.max_index && g.order() > 1) out.push_back(g);
  std::stable_sort(out.begin(), out.end(),
                   [](const GroupTable& a, const GroupTable& b) { return a.order() < b.order(); });
  return out;
}

struct BaseContext {
  FamilyBuild build;
  CssCode code;
  DistanceReport dx, dz;
};

inline DistanceReport code_distance(const CssCode& c, Side side, std::size_t iterations, std::uint64_t seed,
                                    std::size_t exact_bound) {
  RandomizedOptions opt;
  opt.iterations = iterations;
  opt.seed = seed;
  return distance(c, side, opt, exact_bound);
}

inline BaseContext prepare_base(const RunConfig& cfg) {
  BaseContext b{build_family(cfg.spec), {}, {}, {}};
  b.code = assemble(b.build);
  // Exact whenever the kernel allows it; the transfer bounds need it.
  const auto bound = std::max<std::size_t>(cfg.exact_bound, 24);
  b.dx = code_distance(b.code, Side::X, cfg.iterations, cfg.seed, bound);
  b.dz = code_distance(b.code, Side::Z, cfg.iterations, cfg.seed, bound);
  return b;
}

struct LiftEvaluation {
  LiftDescriptor lift;
  std::size_t multiplicity = 1;
  bool valid = true;
  std::string reason;
  CssCode code;
  json checks = json::object();
  std::optional<DistanceReport> dx, dz;
  std::vector<TransferReport> transfer;
  std::optional<bool> gamma_invariant;
  bool bound_violation = false;
};

inline std::optional<std::size_t> code_d(const LiftEvaluation& e) {
  if (!e.dx || !e.dz || e.dx->infinite() || e.dz->infinite()) return std::nullopt;
  return std::min(*e.dx->value, *e.dz->value);
}

// Structure, orthogonality and automorphism checks for one cover.
inline LiftEvaluation lift_and_check(const BaseContext& base, const GaloisCover& cover) {
  LiftEvaluation e;
  const auto& cm = cover.covering;
  e.lift.index = cm.index();
  e.lift.deck_group = cm.deck_group ? cm.deck_group->name() : "1";
  e.lift.hom_a = cover.hom_a;
  e.lift.hom_b = cover.hom_b;
  e.lift.kernel_id = cover.kernel_id;
  e.multiplicity = cover.multiplicity;
  const auto t = cm.index();
  const auto& s = base.build.complex;
  bool fibers = cm.total.vertex_count() == t * s.vertex_count() &&
                cm.total.edge_count() == t * s.edge_count() && cm.total.face_count() == t * s.face_count();
  for (std::size_t v = 0; fibers && v < cm.total.vertex_count(); ++v)
    fibers = cm.total.degree(v) == s.degree(cm.project(v));
  const auto lifted_local = lift_local_codes(cm, base.build.local);
  e.checks["voltage_valid"] = validate_voltage(s, cm.voltage);
  e.checks["fibers_and_degrees"] = fibers;
  e.checks["total_complex_valid"] = cm.total.valid();
  e.checks["local_codes_bijective"] = local_code_violations(cm.total, lifted_local).empty();
  e.code.n = t * base.code.n;
  try {
    e.code = lift_code(base.code, cm, base.build.local);
  } catch (const OrthogonalityError& err) {
    e.valid = false;
    e.reason = std::string("orthogonality violated: ") + err.what();
    e.checks["orthogonal"] = false;
    return e;
  }
  e.code.lift = e.lift;
  e.checks["orthogonal"] = true;
  const auto direct = make_css(tanner_checks(cm.total, lifted_local, Side::X),
                               tanner_checks(cm.total, lifted_local, Side::Z));
  e.checks["matches_total_assembly"] =
      same_rowspace(direct.hx, e.code.hx) && same_rowspace(direct.hz, e.code.hz);
  e.checks["weight_profile_scaled"] = profile_scaled(weight_profile(base.code), weight_profile(e.code), t);
  bool deck = true;
  if (cm.deck_group)
    for (std::size_t g = 0; g < cm.deck_group->order() && deck; ++g) deck = verify_deck_automorphism(e.code, cm, g);
  e.checks["deck_automorphisms"] = deck;
  const auto chain = build_chain_maps(base.code, e.code, cm);
  e.checks["chain_maps_commute"] = true;
  e.checks["projection_transfer_is_t"] = composition_is_t_identity(chain);
  for (auto it = e.checks.begin(); it != e.checks.end(); ++it)
    if (!it.value().get<bool>()) {
      e.valid = false;
      e.reason = "check failed: " + it.key();
    }
  return e;
}

inline void run_distance(LiftEvaluation& e, std::size_t iterations, const RunConfig& cfg) {
  if (!e.valid) return;
  e.dx = code_distance(e.code, Side::X, iterations, cfg.seed, cfg.exact_bound);
  e.dz = code_distance(e.code, Side::Z, iterations, cfg.seed, cfg.exact_bound);
}

inline void run_transfer(LiftEvaluation& e, const BaseContext& base, const CoveringMap& cm) {
  if (!e.valid || !e.dx || !e.dz) return;
  if (base.dx.method != DistanceMethod::Exact || base.dz.method != DistanceMethod::Exact) return;
  e.transfer.clear();
  e.transfer.push_back(verify_parameter_bounds(base.code, e.code, cm, base.dx, &*e.dx));
  e.transfer.push_back(verify_parameter_bounds(base.code, e.code, cm, base.dz, &*e.dz));
  e.bound_violation = false;
  for (const auto& r : e.transfer)
    if (!r.ok()) e.bound_violation = true;
  e.gamma_invariant.reset();
  if (cm.index() % 2 == 1 && e.code.k == base.code.k && e.code.k > 0 && cm.deck_group) {
    bool inv = true;
    for (const auto* d : {&*e.dx, &*e.dz})
      for (const auto& w : d->witnesses) inv = inv && verify_gamma_invariance(e.code, cm, d->side, w);
    e.gamma_invariant = inv;
    if (!inv) e.bound_violation = true;
  }
}

inline std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ':', '_');
  return s;
}

inline std::string record_stem(const LiftEvaluation& e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "lift_%03zu_", e.lift.index);
  std::string stem = buf + sanitize(e.lift.deck_group);
  std::snprintf(buf, sizeof buf, "_%02zu", e.lift.kernel_id);
  return stem + buf;
}

inline json spec_json(const FamilySpec& spec) {
  return {{"family", family_name(spec.family)},
          {"ell", spec.ell},
          {"poly", spec.poly.exponents()},
          {"reduced_generators", spec.reduced_generators}};
}

inline json record_json(const FamilySpec& spec, const LiftEvaluation& e, const std::string& stem) {
  json j = spec_json(spec);
  j["lift_index"] = e.lift.index;
  j["deck_group"] = e.lift.deck_group;
  j["hom"] = {{"a", e.lift.hom_a}, {"b", e.lift.hom_b}};
  j["kernel_id"] = e.lift.kernel_id;
  j["kernel_multiplicity"] = e.multiplicity;
  j["n"] = e.code.n;
  j["valid"] = e.valid;
  j["reason"] = e.reason;
  j["lift_checks"] = e.checks;
  if (!e.valid) {
    j["k"] = nullptr;
    return j;
  }
  j["k"] = e.code.k;
  j["weight_profile"] = weight_profile_json(weight_profile(e.code));
  json dist = json::object();
  if (e.dx && e.dz) {
    const auto d = code_d(e);
    dist["d"] = d ? json(*d) : json(nullptr);
    dist["upper_bound"] = e.dx->method == DistanceMethod::Randomized || e.dz->method == DistanceMethod::Randomized;
    dist["x"] = distance_json(e.code, *e.dx);
    dist["z"] = distance_json(e.code, *e.dz);
  }
  j["distance"] = dist;
  json tr = json::array();
  for (const auto& r : e.transfer) tr.push_back(transfer_json(r));
  json tc = {{"bounds", tr}, {"bound_violation", e.bound_violation}};
  tc["gamma_invariant"] = e.gamma_invariant ? json(*e.gamma_invariant) : json(nullptr);
  j["transfer_checks"] = tc;
  j["matrices"] = {{"hx", stem + ".hx.mtx"}, {"hz", stem + ".hz.mtx"}};
  return j;
}

inline void write_matrix_files(const std::string& dir, const std::string& stem, const CssCode& c) {
  std::ostringstream hx, hz;
  write_matrix_market(hx, c.hx);
  write_matrix_market(hz, c.hz);
  write_text_file(dir + "/" + stem + ".hx.mtx", hx.str());
  write_text_file(dir + "/" + stem + ".hz.mtx", hz.str());
}

// Writes the complex, the check matrices (MatrixMarket and alist) and a
// code record for the base code.
inline json cmd_build(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  const auto base = prepare_base(cfg);
  std::ostringstream cx;
  write_complex(cx, base.build.complex);
  write_text_file(cfg.out_dir + "/complex.txt", cx.str());
  write_matrix_files(cfg.out_dir, "code", base.code);
  std::ostringstream ax, az;
  write_alist(ax, base.code.hx);
  write_alist(az, base.code.hz);
  write_text_file(cfg.out_dir + "/code.hx.alist", ax.str());
  write_text_file(cfg.out_dir + "/code.hz.alist", az.str());
  LiftEvaluation e;
  e.code = base.code;
  e.dx = base.dx;
  e.dz = base.dz;
  json j = record_json(cfg.spec, e, "code");
  j["complex"] = "complex.txt";
  j["matrices"]["hx_alist"] = "code.hx.alist";
  j["matrices"]["hz_alist"] = "code.hz.alist";
  j.erase("lift_checks");
  j.erase("transfer_checks");
  write_text_file(cfg.out_dir + "/code.json", dump_json(j));
  return j;
}

struct LiftEnumResult {
  std::vector<json> records;
  bool bound_violation = false;
};

// One record per (group, kernel), plus the index-1 base record, written to
// out_dir in canonical order.
inline LiftEnumResult cmd_lift_enum(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  const auto base = prepare_base(cfg);
  const auto groups = load_catalog(cfg);

  struct Item {
    GaloisCover cover;
    LiftEvaluation eval;
  };
  std::vector<Item> items;
  {
    GaloisCover trivial;
    trivial.covering = lift_complex(base.build.complex, VoltageAssignment::identity(base.build.complex, 1));
    trivial.covering.deck_group = GroupTable();
    items.push_back({trivial, {}});
  }
  for (const auto& g : groups)
    for (auto& c : enumerate_galois_covers(base.build.complex, base.build.presentation, g, cfg.max_index))
      items.push_back({std::move(c), {}});

  for (auto& it : items) it.eval = lift_and_check(base, it.cover);
  const bool screening = cfg.screen_iterations > 0 && cfg.screen_iterations < cfg.iterations;
  for (auto& it : items) run_distance(it.eval, screening ? cfg.screen_iterations : cfg.iterations, cfg);
  if (screening) {
    // Best screened d per index among codes with k > 0.
    std::map<std::size_t, std::size_t> best;
    for (const auto& it : items)
      if (auto d = code_d(it.eval); d && it.eval.code.k > 0)
        best[it.eval.lift.index] = std::max(best[it.eval.lift.index], *d);
    for (auto& it : items) {
      const auto d = code_d(it.eval);
      const bool randomized = it.eval.dx && (it.eval.dx->method == DistanceMethod::Randomized ||
                                             it.eval.dz->method == DistanceMethod::Randomized);
      if (d && randomized && it.eval.code.k > 0 && *d == best[it.eval.lift.index])
        run_distance(it.eval, cfg.iterations, cfg);
    }
  }
  LiftEnumResult res;
  for (auto& it : items) {
    run_transfer(it.eval, base, it.cover.covering);
    const auto stem = record_stem(it.eval);
    if (it.eval.valid) write_matrix_files(cfg.out_dir, stem, it.eval.code);
    auto j = record_json(cfg.spec, it.eval, stem);
    write_text_file(cfg.out_dir + "/" + stem + ".json", dump_json(j));
    res.bound_violation = res.bound_violation || it.eval.bound_violation;
    res.records.push_back(std::move(j));
  }
  return res;
}

inline std::vector<json> load_records(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<json> out;
  for (const auto& f : files) {
    auto j = json::parse(read_text_file(f.string()), nullptr, false);
    if (j.is_object() && j.contains("lift_index") && j.contains("family")) out.push_back(std::move(j));
  }
  return out;
}

// 3 significant figures, trailing zeros dropped.
inline std::string format_ratio(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Best code per (family, l, lift index): k > 0 preferred, then largest d.
// '*' marks distances that are upper bounds.
inline std::string render_table(const std::vector<json>& records) {
  std::ostringstream os;
  os << "l | W | lift index | deck(p) | [[n,k,d]] | d^2/n\n";
  using Key = std::tuple<std::string, std::size_t, std::size_t>;
  std::map<Key, std::vector<const json*>> rows;
  for (const auto& r : records)
    if (r.value("valid", false))
      rows[{r["family"].get<std::string>(), r["ell"].get<std::size_t>(), r["lift_index"].get<std::size_t>()}]
          .push_back(&r);
  auto score = [](const json& r) {
    const auto k = r["k"].get<std::size_t>();
    const auto& d = r["distance"]["d"];
    const double dv = d.is_null() ? (k == 0 ? -1.0 : 0.0) : d.get<double>();
    return std::make_pair(k > 0 ? 1 : 0, dv);
  };
  std::optional<std::pair<std::string, std::size_t>> last;
  for (const auto& [key, recs] : rows) {
    const auto& [fam, ell, index] = key;
    const json* best = recs.front();
    for (const auto* r : recs)
      if (score(*r) > score(*best)) best = r;
    std::vector<std::string> groups;
    for (const auto* r : recs) {
      const auto g = (*r)["deck_group"].get<std::string>();
      if (score(*r) == score(*best) && (*r)["k"] == (*best)["k"] &&
          std::find(groups.begin(), groups.end(), g) == groups.end())
        groups.push_back(g);
    }
    const auto n = (*best)["n"].get<std::size_t>(), k = (*best)["k"].get<std::size_t>();
    const auto& d = (*best)["distance"]["d"];
    const bool upper = (*best)["distance"].value("upper_bound", false);
    const bool first = !last || *last != std::make_pair(fam, ell);
    last = std::make_pair(fam, ell);
    os << (first ? fam + "(" + std::to_string(ell) + ")" : std::string()) << " | "
       << (first ? std::to_string((*best)["weight_profile"]["W"].get<std::size_t>()) : std::string()) << " | "
       << index << " | ";
    for (std::size_t i = 0; i < groups.size(); ++i) os << (i ? ", " : "") << groups[i];
    os << " | [[" << n << "," << k << ",";
    if (d.is_null())
      os << "inf]] | inf\n";
    else {
      const auto dv = d.get<std::size_t>();
      os << dv << (upper ? "*" : "") << "]] | "
         << format_ratio(static_cast<double>(dv * dv) / static_cast<double>(n)) << "\n";
    }
  }
  return os.str();
}

// Loads a code record written by build or lift-enum.
inline CssCode load_code_record(const std::string& path) {
  const auto j = json::parse(read_text_file(path));
  if (!j.contains("matrices")) throw Error(path + ": record has no matrix references");
  const auto dir = std::filesystem::path(path).parent_path();
  auto load = [&](const std::string& key) {
    std::ifstream is(dir / j["matrices"][key].get<std::string>());
    if (!is) throw Error("cannot open matrix file for " + key);
    return read_matrix_market(is);
  };
  auto c = make_css(load("hx"), load("hz"));
  c.lift.index = j.value("lift_index", std::size_t{1});
  c.lift.deck_group = j.value("deck_group", std::string("1"));
  return c;
}

}  // namespace qtanner
