#pragma once

// JSON forms of codes, distance reports and transfer checks.

#include <cstddef>
#include <fstream>
#include <map>
#include <string>

#include <json.hpp>

#include "css.hpp"
#include "distance.hpp"
#include "transfer.hpp"

namespace qtanner {

using json = nlohmann::json;

inline json histogram_json(const std::map<std::size_t, std::size_t>& h) {
  json j = json::object();
  for (const auto& [w, n] : h) j[std::to_string(w)] = n;
  return j;
}

inline json weight_profile_json(const WeightProfile& p) {
  return {{"W", p.max_weight()},
          {"x", {{"row_weights", histogram_json(p.x_rows)}, {"col_weights", histogram_json(p.x_cols)},
                 {"max_row", p.w_x}, {"max_col", p.q_x}}},
          {"z", {{"row_weights", histogram_json(p.z_rows)}, {"col_weights", histogram_json(p.z_cols)},
                 {"max_row", p.w_z}, {"max_col", p.q_z}}}};
}

inline json distance_json(const CssCode& c, const DistanceReport& r) {
  json j = {{"side", side_name(r.side)},
            {"method", method_name(r.method)},
            {"value", r.value ? json(*r.value) : json(nullptr)},
            {"exhaustive", r.exhaustive},
            {"witness", r.infinite() ? json(nullptr) : json(r.witness.to_hex())},
            {"witness_count", r.witnesses.size()},
            {"verified", verify_report(c, r)}};
  if (r.method == DistanceMethod::Randomized) {
    j["iterations"] = r.iterations;
    j["seed"] = r.seed;
  }
  return j;
}

inline json transfer_json(const TransferReport& r) {
  json j = {{"side", side_name(r.side)}, {"index", r.index}, {"applicable", r.applicable},
            {"n_scaled", r.n_scaled}, {"ok", r.ok()}};
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.applicable) return j;
  j["k_monotone"] = r.k_monotone;
  j["k_equal"] = r.k_equal;
  j["injective_on_homology"] = r.injective_on_homology;
  j["base_distance"] = r.base_distance ? json(*r.base_distance) : json(nullptr);
  j["distance_upper_bound"] = r.upper_bound ? json(*r.upper_bound) : json(nullptr);
  if (r.base_distance) {
    j["transfer_witness_weight"] = r.witness_weight;
    j["transfer_witness_is_logical"] = r.witness_is_logical;
    j["transfer_witness"] = r.witness.to_hex();
  }
  if (r.lower_bound_holds) j["lower_bound_holds"] = *r.lower_bound_holds;
  if (r.lightest_lifted) j["lightest_lifted_logical"] = *r.lightest_lifted;
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  os << text;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot read " + path);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qtanner
