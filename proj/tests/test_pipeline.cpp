#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qtanner/pipeline.hpp"

using namespace qtanner;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test, removed on exit.
class ScratchDir {
 public:
  ScratchDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("qtanner_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  std::string str() const { return path_.string(); }
  fs::path path() const { return path_; }

 private:
  fs::path path_;
};

json rec(const std::string& fam, std::size_t ell, std::size_t index, const std::string& group, std::size_t n,
         std::size_t k, std::optional<std::size_t> d, bool upper = true, std::size_t w = 4) {
  json j = {{"family", fam}, {"ell", ell},  {"lift_index", index}, {"deck_group", group},
            {"n", n},        {"k", k},      {"valid", true},       {"weight_profile", {{"W", w}}}};
  j["distance"] = {{"d", d ? json(*d) : json(nullptr)}, {"upper_bound", upper}};
  return j;
}

RunConfig cfg_for(const std::string& dir, Family f, std::size_t ell, const std::string& poly) {
  RunConfig cfg;
  cfg.spec.family = f;
  cfg.spec.ell = ell;
  cfg.spec.poly = Poly::parse(ell, poly);
  cfg.iterations = 300;
  cfg.out_dir = dir;
  return cfg;
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = read_text_file(e.path().string());
  return out;
}

}  // namespace

TEST(FormatRatio, ThreeSignificantFigures) {
  EXPECT_EQ(format_ratio(4.0 / 20), "0.2");
  EXPECT_EQ(format_ratio(400.0 / 400), "1");
  EXPECT_EQ(format_ratio(144.0 / 96), "1.5");
  EXPECT_EQ(format_ratio(256.0 / 160), "1.6");
  EXPECT_EQ(format_ratio(36.0 / 288), "0.125");
  EXPECT_EQ(format_ratio(36.0 / 28), "1.29");
  EXPECT_EQ(format_ratio(324.0 / 196), "1.65");
}

TEST(RenderTable, EmptyGivesHeaderOnly) {
  EXPECT_EQ(render_table({}), "l | W | lift index | deck(p) | [[n,k,d]] | d^2/n\n");
}

TEST(RenderTable, BestPerIndexWithTiedGroups) {
  std::vector<json> rs = {
      rec("L", 10, 1, "1", 20, 2, 2, false),
      rec("L", 10, 20, "D20", 400, 10, 4),
      rec("L", 10, 20, "D20", 400, 2, 20),
      rec("L", 10, 20, "Z5:4Z4", 400, 2, 20),
      rec("L", 10, 20, "Z5:4Z4", 400, 2, 10),
      rec("L", 10, 20, "Z20", 400, 10, 4),
  };
  auto bad = rec("L", 10, 20, "Q", 400, 2, 40);
  bad["valid"] = false;
  rs.push_back(bad);
  const auto t = render_table(rs);
  std::istringstream is(t);
  std::string header, a, b, extra;
  std::getline(is, header);
  std::getline(is, a);
  std::getline(is, b);
  EXPECT_FALSE(std::getline(is, extra));
  EXPECT_EQ(a, "L(10) | 4 | 1 | 1 | [[20,2,2]] | 0.2");
  EXPECT_EQ(b, " |  | 20 | D20, Z5:4Z4 | [[400,2,20*]] | 1");
}

TEST(RenderTable, PositiveDimensionBeatsDistance) {
  const auto t = render_table({rec("BS", 3, 1, "1", 24, 0, std::nullopt, false, 6),
                               rec("BS", 3, 12, "Z12", 288, 0, std::nullopt),
                               rec("BS", 3, 12, "D12", 288, 4, 6)});
  EXPECT_NE(t.find("BS(3) | 6 | 1 | 1 | [[24,0,inf]] | inf\n"), std::string::npos);
  EXPECT_NE(t.find(" |  | 12 | D12 | [[288,4,6*]] | 0.125\n"), std::string::npos);
}

TEST(RenderTable, FamiliesGetSeparateBlocks) {
  const auto t = render_table({rec("L", 14, 1, "1", 28, 2, 6, false, 12), rec("BS", 4, 1, "1", 32, 2, 4, false, 8)});
  EXPECT_NE(t.find("BS(4) | 8 | 1 |"), std::string::npos);
  EXPECT_NE(t.find("L(14) | 12 | 1 |"), std::string::npos);
}

TEST(RecordStem, SanitizesGroupNames) {
  LiftEvaluation e;
  e.lift.index = 20;
  e.lift.deck_group = "Z5:4Z4";
  e.lift.kernel_id = 1;
  EXPECT_EQ(record_stem(e), "lift_020_Z5_4Z4_01");
}

TEST(Catalog, LoadsFilteredAndSorted) {
  ScratchDir dir;
  for (const auto* name : {"Z5:4Z4", "S3", "Z7", "Z2xZ2"}) {
    std::ofstream os(dir.path() / (sanitize(name) + ".grp"));
    write_group(os, group_from_name(name));
  }
  std::ofstream(dir.path() / "notes.txt") << "ignored\n";
  RunConfig cfg;
  cfg.group_dirs = {dir.str()};
  cfg.group_names = {"Z3"};
  cfg.max_index = 7;
  const auto gs = load_catalog(cfg);
  std::vector<std::string> names;
  for (const auto& g : gs) names.push_back(g.name());
  EXPECT_EQ(names, (std::vector<std::string>{"Z3", "Z2xZ2", "S3", "Z7"}));
  cfg.max_index = 30;
  EXPECT_EQ(load_catalog(cfg).back().name(), "Z5:4Z4");
  cfg.group_dirs = {(dir.path() / "missing").string()};
  EXPECT_THROW(load_catalog(cfg), Error);
}

TEST(Build, WritesFilesAndRecordRoundTrips) {
  ScratchDir dir;
  const auto cfg = cfg_for(dir.str(), Family::L, 10, "0,5");
  const auto j = cmd_build(cfg);
  EXPECT_EQ(j["n"], 20);
  EXPECT_EQ(j["k"], 2);
  EXPECT_EQ(j["distance"]["d"], 2);
  EXPECT_FALSE(j["distance"]["upper_bound"].get<bool>());
  EXPECT_EQ(j["distance"]["x"]["method"], "exact");
  EXPECT_TRUE(j["distance"]["x"]["verified"].get<bool>());
  for (const auto* f : {"complex.txt", "code.json", "code.hx.mtx", "code.hz.mtx", "code.hx.alist", "code.hz.alist"})
    EXPECT_TRUE(fs::exists(dir.path() / f)) << f;
  EXPECT_EQ(json::parse(read_text_file(dir.str() + "/code.json")), j);

  const auto code = load_code_record(dir.str() + "/code.json");
  const auto ref = assemble(build_family(cfg.spec));
  EXPECT_EQ(code.n, 20u);
  EXPECT_EQ(code.k, 2u);
  EXPECT_EQ(code.hx, ref.hx);
  EXPECT_EQ(code.hz, ref.hz);
  std::ifstream cx(dir.path() / "complex.txt");
  const auto s = read_complex(cx);
  EXPECT_EQ(s.face_count(), 20u);
  std::ifstream ax(dir.path() / "code.hx.alist");
  EXPECT_EQ(read_alist(ax), ref.hx);
}

TEST(Build, NonDivisorThrows) {
  ScratchDir dir;
  EXPECT_THROW(cmd_build(cfg_for(dir.str(), Family::L, 9, "0,5")), Error);
}

TEST(LoadCodeRecord, RejectsRecordWithoutMatrices) {
  ScratchDir dir;
  write_text_file(dir.str() + "/r.json", "{\"n\": 4}");
  EXPECT_THROW(load_code_record(dir.str() + "/r.json"), Error);
}

TEST(LiftEnum, EmptyCatalogGivesBaseRecordOnly) {
  ScratchDir dir;
  const auto res = cmd_lift_enum(cfg_for(dir.str(), Family::BS, 4, "1,2,3"));
  ASSERT_EQ(res.records.size(), 1u);
  EXPECT_EQ(res.records[0]["lift_index"], 1);
  EXPECT_EQ(res.records[0]["n"], 32);
  EXPECT_FALSE(res.bound_violation);
  EXPECT_EQ(load_records(dir.str()).size(), 1u);
}

TEST(LiftEnum, CyclicThreeRecordsAndDeterminism) {
  ScratchDir a, b;
  auto cfg = cfg_for(a.str(), Family::BS, 4, "1,2,3");
  cfg.group_names = {"Z3"};
  const auto res = cmd_lift_enum(cfg);
  ASSERT_EQ(res.records.size(), 5u);
  EXPECT_FALSE(res.bound_violation);
  for (std::size_t i = 1; i < res.records.size(); ++i) {
    const auto& r = res.records[i];
    EXPECT_EQ(r["lift_index"], 3);
    EXPECT_EQ(r["deck_group"], "Z3");
    EXPECT_EQ(r["kernel_id"], i - 1);
    EXPECT_EQ(r["kernel_multiplicity"], 2);
    EXPECT_TRUE(r["valid"].get<bool>());
    EXPECT_EQ(r["n"], 96);
    EXPECT_EQ(r["k"], 2);
    for (const auto& [name, ok] : r["lift_checks"].items()) EXPECT_TRUE(ok.get<bool>()) << name;
    EXPECT_TRUE(r["distance"]["upper_bound"].get<bool>());
    for (const auto& t : r["transfer_checks"]["bounds"]) {
      EXPECT_TRUE(t["ok"].get<bool>());
      EXPECT_EQ(t["distance_upper_bound"], 12);
    }
    EXPECT_TRUE(r["transfer_checks"]["gamma_invariant"].get<bool>());
    // 3d bound from the transferred base logical
    EXPECT_LE(r["distance"]["d"].get<std::size_t>(), 12u);
    EXPECT_GE(r["distance"]["d"].get<std::size_t>(), 4u);
  }
  const auto reloaded = load_records(a.str());
  EXPECT_EQ(reloaded.size(), 5u);
  const auto lifted = load_code_record(a.str() + "/lift_003_Z3_00.json");
  EXPECT_EQ(lifted.n, 96u);
  EXPECT_EQ(lifted.k, 2u);
  EXPECT_EQ(lifted.lift.index, 3u);

  cfg.out_dir = b.str();
  cmd_lift_enum(cfg);
  EXPECT_EQ(dir_contents(a.path()), dir_contents(b.path()));
}

TEST(LiftEnum, EvenIndexMarksTheoryNotApplicable) {
  ScratchDir dir;
  auto cfg = cfg_for(dir.str(), Family::L, 10, "0,5");
  cfg.group_names = {"Z2"};
  const auto res = cmd_lift_enum(cfg);
  ASSERT_GT(res.records.size(), 1u);
  for (std::size_t i = 1; i < res.records.size(); ++i) {
    const auto& tc = res.records[i]["transfer_checks"];
    for (const auto& t : tc["bounds"]) {
      EXPECT_FALSE(t["applicable"].get<bool>());
      EXPECT_EQ(t["note"], "theory not applicable (even index)");
    }
    EXPECT_TRUE(tc["gamma_invariant"].is_null());
  }
}
