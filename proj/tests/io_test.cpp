#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>

#include "gnet/algebra.hpp"
#include "gnet/error.hpp"
#include "gnet/io.hpp"
#include "support/fixtures.hpp"

using namespace gnet;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("gnet_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::Io;
}

}  // namespace

TEST(Json, ServiceRoundTrip) {
  Registry reg = fixtures::closure_registry();
  const WebService& a = reg.lookup("A");
  const WebService& b = reg.lookup("B");
  std::vector<WebService> all = {
      empty_service(),
      fixtures::booking_net(),
      sequence(a, b),
      discriminator({a, b}, reg.lookup("C")),
      selection({reg.lookup("L1"), reg.lookup("L2")}),
      refine(fixtures::command_books_chain(), "Treat-Command", fixtures::command_books_block()),
  };
  for (const auto& ws : all) {
    ServiceFile f{ws, {a, b}};
    ServiceFile back = parse_service(dump_service(f));
    EXPECT_EQ(back.service, ws) << ws.name;
    ASSERT_EQ(back.embedded.size(), 2u);
    EXPECT_EQ(back.embedded[1], b);
  }
}

TEST(Json, BlockRoundTrip) {
  BlockFragment b = fixtures::command_books_block();
  EXPECT_EQ(parse_block(dump_block(b)), b);
}

TEST(Json, KindAliasesAndNullUrl) {
  nlohmann::json j = nlohmann::json::parse(dump_service({fixtures::command_books_chain(), {}}));
  j["url"] = nullptr;
  for (auto& p : j["net"]["is"]["places"])
    if (p["kind"] == "Goal") p["kind"] = "GP";
  WebService ws = parse_service(j.dump()).service;
  EXPECT_EQ(ws.net.is.find_place("p3")->kind, PlaceKind::Goal);
}

TEST(Json, MalformedInputIsAnInvalidModel) {
  EXPECT_EQ(code_of([] { parse_service("{"); }), Errc::InvalidModel);
  EXPECT_EQ(code_of([] { parse_service("{\"name\": 3}"); }), Errc::InvalidModel);
  nlohmann::json j = nlohmann::json::parse(dump_service({fixtures::booking_net(), {}}));
  j["net"]["is"]["places"][0]["kind"] = "Bogus";
  EXPECT_EQ(code_of([&] { parse_service(j.dump()); }), Errc::InvalidModel);
  j = nlohmann::json::parse(dump_service({fixtures::booking_net(), {}}));
  j["net"]["is"]["conditions"]["T1"] = "Available ==";
  EXPECT_THROW(parse_service(j.dump()), Error);
}

TEST(Files, SaveLoadAndRegistry) {
  TempDir dir;
  Registry reg = fixtures::closure_registry();
  save_service(dir.path() / "a.json", {reg.lookup("A"), {}});
  save_service(dir.path() / "seq.json", {sequence(reg.lookup("A"), reg.lookup("B")), {reg.lookup("B")}});
  write_file(dir.path() / "blk.json", dump_block(reg.lookup_block("Blk")));
  write_file(dir.path() / "notes.txt", "ignored");

  EXPECT_EQ(load_service(dir.path() / "a.json").service, reg.lookup("A"));
  EXPECT_EQ(load_block(dir.path() / "blk.json"), reg.lookup_block("Blk"));

  Registry loaded = load_registry(dir.path());
  EXPECT_TRUE(loaded.contains("A"));
  EXPECT_TRUE(loaded.contains("B"));
  EXPECT_TRUE(loaded.contains(sequence(reg.lookup("A"), reg.lookup("B")).name));
  EXPECT_EQ(loaded.lookup_block("Blk"), reg.lookup_block("Blk"));
}

TEST(Files, RegisterAllKeepsExisting) {
  Registry reg = fixtures::closure_registry();
  WebService other = fixtures::command_books_chain();
  other.name = "A";
  register_all(reg, {fixtures::booking_net(), {other}});
  EXPECT_TRUE(reg.contains("Command-books"));
  EXPECT_EQ(reg.lookup("A"), fixtures::closure_registry().lookup("A"));
}

TEST(Files, MissingFileIsAnIoError) {
  EXPECT_EQ(code_of([] { read_file("/nonexistent/gnet/x.json"); }), Errc::Io);
  EXPECT_EQ(code_of([] { load_registry("/nonexistent/gnet"); }), Errc::Io);
}

TEST(Json, TraceIsAnArrayOfEvents) {
  Registry reg = fixtures::closure_registry();
  SimContext ctx{&reg, 16, 100};
  RunResult r = run(init_state(sequence(reg.lookup("A"), reg.lookup("B")), "Seq", {}), Policy::deterministic(), ctx);
  nlohmann::json j = nlohmann::json::parse(trace_json(r.state.trace));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), r.state.trace.size());
  EXPECT_EQ(j[0]["transition"], "t1");
  EXPECT_EQ(j[0]["depth"], 1);
}
