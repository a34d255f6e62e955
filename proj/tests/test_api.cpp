#include <thread>

#include <gtest/gtest.h>

#include "kappa/api.hpp"
#include "kappa/graph_io.hpp"
#include "kappa/serialize.hpp"
#include "support/oracles.hpp"

#include <httplib.h>

namespace kappa {
namespace {

using nlohmann::json;

json gallery_json(const std::string& name) {
  return json::parse(read_text_file(testing::gallery_dir() / (name + ".json")));
}

TEST(Analyze, DoubleBananaWithOnePin) {
  const api::Response r = api::analyze(json{{"graph", gallery_json("double-banana")}, {"pins", {1}}}.dump());
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["kappa"], 4);
  EXPECT_EQ(r.body["validation"], json::array());
}

TEST(Analyze, BananaMinusEdgePinChoice) {
  const json graph = gallery_json("banana-minus-edge");
  EXPECT_EQ(api::analyze(json{{"graph", graph}, {"pins", {7}}}.dump()).body["kappa"], 3);
  EXPECT_EQ(api::analyze(json{{"graph", graph}, {"pins", {1}}}.dump()).body["kappa"], 4);
}

TEST(Analyze, EdgelessGraph) {
  const api::Response r = api::analyze(R"({"graph": {"vertices": 3, "edges": [], "pins": [1]}})");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["kappa"], 0);
  for (const json& step : r.body["steps"]) EXPECT_EQ(step["epsilon"], 0);
  EXPECT_EQ(r.body["edge_total"], 0);
}

TEST(Analyze, PromotedPinFlagWithoutPins) {
  const api::Response r = api::analyze(R"({"vertices": 3, "edges": [[1,2],[2,3]]})");
  ASSERT_EQ(r.status, 200);
  EXPECT_FALSE(r.body["promoted_pin"].is_null());
}

TEST(Analyze, ResponseIsCertifyDocumentPlusValidation) {
  for (const char* name : {"k5", "cycle7", "six-vertex-example", "triangle-tree-a"}) {
    const json graph = gallery_json(name);
    const api::Response r = api::analyze(json{{"graph", graph}, {"dims", {2, 3, 4}}}.dump());
    json expected = analysis_document(parse_graph(graph.dump()), {2, 3, 4});
    expected["validation"] = json::array();
    EXPECT_EQ(r.body, expected) << name;
  }
}

TEST(Analyze, AdjacentPinsAreRejectedWithReport) {
  const api::Response r = api::analyze(R"({"graph": {"vertices": 3, "edges": [[1,2]]}, "pins": [1, 2]})");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(r.body["code"], "PinsNotIndependent");
  EXPECT_TRUE(r.body.contains("message"));
  EXPECT_EQ(r.body["details"]["validation"].size(), 1u);
}

TEST(Analyze, MalformedAndOversizedBodies) {
  EXPECT_EQ(api::analyze("not json").status, 400);
  EXPECT_EQ(api::analyze(R"({"graph": {"edges": []}})").status, 400);
  EXPECT_EQ(api::analyze(R"({"graph": {"vertices": 501}})").status, 413);
  EXPECT_EQ(api::analyze(R"({"graph": {"vertices": 12}})", {10}).status, 413);
  EXPECT_EQ(api::analyze(R"({"graph": {"vertices": 2}, "dims": "x"})").status, 400);
}

TEST(Analyze, AcceptsEdgeListText) {
  const api::Response r = api::analyze(R"({"graph": "3\n1 2\n2 3\n1 3\npins: 1\n"})");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["kappa"], 2);
}

TEST(Dismantle, CycleWithThreePins) {
  const json graph = gallery_json("cycle7");
  const api::Response ok = api::dismantle(json{{"graph", graph}, {"k", 2}}.dump());
  ASSERT_EQ(ok.status, 200);
  EXPECT_TRUE(ok.body["succeeded"].get<bool>());
  EXPECT_EQ(ok.body["deletions"].size(), 4u);
  const api::Response stuck = api::dismantle(json{{"graph", graph}, {"k", 1}}.dump());
  EXPECT_FALSE(stuck.body["succeeded"].get<bool>());
  EXPECT_TRUE(stuck.body["deletions"].empty());
  const api::Response random =
      api::dismantle(json{{"graph", graph}, {"k", 4}, {"policy", "random"}, {"seed", 9}}.dump());
  EXPECT_TRUE(random.body["succeeded"].get<bool>());
  EXPECT_EQ(random.body["seed"], 9);
  EXPECT_EQ(api::dismantle(json{{"graph", graph}}.dump()).status, 400);
  EXPECT_EQ(api::dismantle(json{{"graph", graph}, {"k", -1}}.dump()).status, 400);
  EXPECT_EQ(api::dismantle(json{{"graph", graph}, {"k", 1}, {"policy", "best"}}.dump()).status, 400);
}

TEST(VolumeSweep, OneRecordPerGenerator) {
  const json body{{"graph", {{"vertices", 2}, {"edges", {{1, 2}}}}},
                  {"generators", {"cantor:0.3:6", "cantor:0.45:6"}},
                  {"n", 2000},
                  {"seed", 3},
                  {"delta", 0.0625}};
  const api::Response r = api::volume_sweep(body.dump());
  ASSERT_EQ(r.status, 200) << r.body.dump();
  ASSERT_EQ(r.body["records"].size(), 2u);
  EXPECT_EQ(r.body["records"][0]["seed"], 3);
  EXPECT_EQ(r.body["records"][1]["K"], 1);
  EXPECT_EQ(api::volume_sweep(body.dump()).body, r.body);
}

TEST(VolumeSweep, SinglePointPoolGivesOneCell) {
  const json body{{"graph", {{"vertices", 2}, {"edges", {{1, 2}}}}},
                  {"generators", {"uniform"}}, {"n", 50}, {"pool", 1}, {"delta", 0.25}};
  const api::Response r = api::volume_sweep(body.dump());
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["records"][0]["N"], 1);
  EXPECT_DOUBLE_EQ(r.body["records"][0]["estimate"].get<double>(), 0.25);
}

TEST(VolumeSweep, BadParameters) {
  const json graph{{"vertices", 2}, {"edges", {{1, 2}}}};
  EXPECT_EQ(api::volume_sweep(json{{"graph", graph}}.dump()).status, 400);
  EXPECT_EQ(api::volume_sweep(json{{"graph", graph}, {"generators", {"cantor:0.9"}}}.dump()).status, 400);
  EXPECT_EQ(api::volume_sweep(json{{"graph", graph}, {"generators", {"uniform"}}, {"delta", 0}}.dump()).status, 400);
  EXPECT_EQ(api::volume_sweep(json{{"graph", graph}, {"generators", {"uniform"}}, {"n", 10000000}}.dump()).status,
            413);
}

TEST(Statelessness, RequestOrderDoesNotMatter) {
  const std::vector<std::string> bodies{
      json{{"graph", gallery_json("k5")}}.dump(),
      json{{"graph", gallery_json("cycle8")}}.dump(),
      json{{"graph", gallery_json("banana-minus-edge")}, {"pins", {1}}}.dump(),
  };
  std::vector<json> forward, backward(bodies.size());
  for (const auto& b : bodies) forward.push_back(api::analyze(b).body);
  for (std::size_t i = bodies.size(); i-- > 0;) backward[i] = api::analyze(bodies[i]).body;
  EXPECT_EQ(forward, backward);
}

TEST(Cors, LoopbackOriginsOnly) {
  EXPECT_TRUE(api::is_loopback_origin("http://localhost:5173"));
  EXPECT_TRUE(api::is_loopback_origin("http://127.0.0.1"));
  EXPECT_TRUE(api::is_loopback_origin("http://[::1]:8080"));
  EXPECT_FALSE(api::is_loopback_origin("http://example.com"));
  EXPECT_FALSE(api::is_loopback_origin("http://localhost.example.com"));
}

TEST(Server, RoundTripOverLoopback) {
  api::Server server({"127.0.0.1", 0, {}, ""});
  const int port = server.bind();
  ASSERT_GT(port, 0);
  std::thread worker([&] { server.listen(); });
  httplib::Client client("127.0.0.1", port);
  httplib::Headers headers{{"Origin", "http://localhost:5173"}};
  const auto res = client.Post("/analyze", headers, json{{"graph", gallery_json("k3")}}.dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["kappa"], 2);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "http://localhost:5173");

  const auto foreign = client.Post("/analyze", {{"Origin", "http://example.com"}}, "{}", "application/json");
  ASSERT_TRUE(foreign);
  EXPECT_EQ(foreign->status, 400);
  EXPECT_FALSE(foreign->has_header("Access-Control-Allow-Origin"));
  server.stop();
  worker.join();
}

}  // namespace
}  // namespace kappa
