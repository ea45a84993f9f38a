// qtc: build, lift and evaluate quantum Tanner codes on square complexes.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qtanner/qtanner.hpp"

namespace {

using namespace qtanner;

struct Options {
  std::string family = "L";
  std::size_t ell = 0;
  std::string poly;
  bool reduced = false;
  std::size_t max_index = 30;
  std::vector<std::string> group_dirs;
  std::vector<std::string> group_names;
  std::size_t iters = 100000;
  std::size_t screen_iters = 0;
  std::uint64_t seed = 1;
  std::string out = ".";
  std::string code;
  std::string side = "both";
  bool exact = false;
};

void add_family_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--family", o.family, "L or BS")->required()->check(CLI::IsMember({"L", "BS"}));
  cmd->add_option("--ell", o.ell, "ring length l")->required()->check(CLI::Range(2, 1000));
  cmd->add_option("--poly", o.poly, "local polynomial as exponents, e.g. 0,5")->required();
  cmd->add_flag("--reduced-generators", o.reduced, "minimum-weight generators for the L family");
  cmd->add_option("--seed", o.seed, "distance search seed");
  cmd->add_option("--iters", o.iters, "randomized distance iterations")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "output directory");
}

RunConfig make_config(const Options& o) {
  RunConfig cfg;
  cfg.spec.family = parse_family(o.family);
  cfg.spec.ell = o.ell;
  cfg.spec.poly = Poly::parse(o.ell, o.poly);
  cfg.spec.reduced_generators = o.reduced;
  cfg.group_dirs = o.group_dirs;
  cfg.group_names = o.group_names;
  cfg.max_index = o.max_index;
  cfg.iterations = o.iters;
  cfg.screen_iterations = o.screen_iters;
  cfg.seed = o.seed;
  cfg.out_dir = o.out;
  return cfg;
}

std::string params(const json& r) {
  std::ostringstream os;
  os << "[[" << r["n"] << "," << r["k"] << ",";
  const auto& d = r["distance"]["d"];
  if (d.is_null())
    os << "inf";
  else
    os << d << (r["distance"].value("upper_bound", false) ? "*" : "");
  os << "]]";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Tanner codes on square complexes and their Galois lifts"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "build a family code and write its files");
  add_family_options(build, o);

  auto* lift = app.add_subcommand("lift-enum", "enumerate Galois lifts over a group catalog");
  add_family_options(lift, o);
  lift->add_option("--max-index", o.max_index, "largest lift index")->check(CLI::PositiveNumber);
  lift->add_option("--groups", o.group_dirs, "directory of .grp group tables");
  lift->add_option("--group", o.group_names, "built-in group by name (repeatable)");
  lift->add_option("--screen-iters", o.screen_iters,
                   "search every kernel with this many iterations first, then rerun the best");

  auto* table = app.add_subcommand("table", "tabulate the best lift per index from records");
  table->add_option("--out", o.out, "directory holding lift records");

  auto* dist = app.add_subcommand("distance", "distance of a stored code");
  dist->add_option("--code", o.code, "code record (.json)")->required()->check(CLI::ExistingFile);
  dist->add_option("--side", o.side, "X, Z or both")->check(CLI::IsMember({"X", "Z", "both"}));
  dist->add_option("--iters", o.iters, "randomized iterations")->check(CLI::PositiveNumber);
  dist->add_option("--seed", o.seed, "seed");
  dist->add_flag("--exact", o.exact, "exhaustive search (small kernels only)");

  auto* groups = app.add_subcommand("groups", "write the built-in group catalog");
  groups->add_option("--out", o.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*build) {
      const auto j = cmd_build(make_config(o));
      std::cout << o.family << "(" << o.ell << ") " << params(j) << " W=" << j["weight_profile"]["W"] << "\n";
      return 0;
    }
    if (*lift) {
      const auto res = cmd_lift_enum(make_config(o));
      for (const auto& r : res.records) {
        std::cout << "index " << r["lift_index"] << " " << r["deck_group"].get<std::string>() << " kernel "
                  << r["kernel_id"] << ": ";
        if (r["valid"].get<bool>())
          std::cout << params(r) << "\n";
        else
          std::cout << "invalid (" << r["reason"].get<std::string>() << ")\n";
      }
      if (res.bound_violation) {
        std::cerr << "bound violation in at least one lift\n";
        return 2;
      }
      return 0;
    }
    if (*table) {
      std::cout << render_table(load_records(o.out));
      return 0;
    }
    if (*dist) {
      const auto c = load_code_record(o.code);
      json out = {{"n", c.n}, {"k", c.k}};
      std::vector<Side> sides;
      if (o.side != "Z") sides.push_back(Side::X);
      if (o.side != "X") sides.push_back(Side::Z);
      for (auto s : sides) {
        const auto r = o.exact ? exact_distance(c, s, 30) : randomized_distance(c, s, o.iters, o.seed);
        out[s == Side::X ? "x" : "z"] = distance_json(c, r);
      }
      std::cout << dump_json(out);
      return 0;
    }
    if (*groups) {
      std::filesystem::create_directories(o.out);
      for (const auto& name : catalog_group_names()) {
        std::ostringstream os;
        write_group(os, group_from_name(name));
        write_text_file(o.out + "/" + sanitize(name) + ".grp", os.str());
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
