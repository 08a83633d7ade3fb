#include "speedup/errors.hpp"
#include "speedup/json_io.hpp"

#include <gtest/gtest.h>

using namespace speedup;

TEST(Json, ValueRoundTrip) {
  const Vertex a{ProcessId{1}, Value::rational(-3, 7)};
  const Vertex b{ProcessId{2}, Value::symbol("x\"y")};
  for (const auto& v : {a.value, b.value, Value::bit(1), Value::view(0, {a, b}), Value::view(std::nullopt, {a})}) {
    EXPECT_EQ(value_from_json(value_to_json(v)), v) << v.to_string();
  }
}

TEST(Json, ComplexRoundTripAndDeterminism) {
  const Simplex sigma{{ProcessId{1}, Value::bit(0)}, {ProcessId{2}, Value::bit(1)}};
  const auto k = one_round(sigma, ModelSpec::iis_test_and_set(), 1);
  const auto j = complex_to_json(k);
  EXPECT_TRUE(complexes_equal(complex_from_json(j), k));
  EXPECT_EQ(complex_to_json(complex_from_json(Json::parse(j.dump()))).dump(), j.dump());
  EXPECT_EQ(to_dot(k), to_dot(complex_from_json(j)));
}

TEST(Json, TaskRoundTrip) {
  const auto named = approx_agreement(2, 9, 1);
  EXPECT_TRUE(tasks_equal(task_from_json(task_to_json(named)), named));
  auto custom = closure(named, ModelSpec::iis());
  custom.family.reset();
  const auto back = task_from_json(task_to_json(custom));
  EXPECT_TRUE(tasks_equal(back, custom));
  EXPECT_TRUE(complexes_equal(back.outputs, custom.outputs));
}

TEST(Json, ModelRoundTrip) {
  const auto bc = ModelSpec::iis_binary_consensus({{ProcessId{1}, 0}, {ProcessId{2}, 1}});
  EXPECT_EQ(model_from_json(model_to_json(bc)), bc);
  EXPECT_EQ(model_from_json(Json::parse(R"({"comm":"collect","box":"none"})")), ModelSpec::collect());
  const auto pinned = model_from_json(Json::parse(R"({"comm":"iis","box":"bc","bc_inputs":{"1":{"2":1,"*":0}}})"));
  EXPECT_EQ(pinned.bc_input(ProcessId{1}, 2), 1);
  EXPECT_EQ(pinned.bc_input(ProcessId{1}, 3), 0);
}

TEST(Json, ParseErrors) {
  EXPECT_THROW(value_from_json(Json::parse(R"({"q":[1]})")), ParseError);
  EXPECT_THROW(value_from_json(Json::parse(R"({"z":1})")), ParseError);
  EXPECT_THROW(task_from_json(Json::parse(R"({"kind":"mystery","n":2})")), ParseError);
  EXPECT_THROW(task_from_json(Json::parse(R"({"kind":"approx","n":2,"m":0,"eps_num":1})")), ParseError);
  EXPECT_THROW(model_from_json(Json::parse(R"({"comm":"snapshot","box":"ts"})")), ParseError);
  EXPECT_THROW(beta_from_json(Json::parse(R"({"x":0})")), ParseError);
  EXPECT_THROW(complex_from_json(Json::parse(R"({"facets":[[{"id":1,"value":{"b":0}},{"id":1,"value":{"b":1}}]]})")), ParseError);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), ParseError);
}

TEST(Json, MapRoundTrip) {
  const auto v = solve(binary_consensus(2), ModelSpec::iis_test_and_set(), 1);
  ASSERT_TRUE(v.solvable);
  EXPECT_EQ(map_from_json(map_to_json(*v.witness)).assignment, v.witness->assignment);
}

TEST(Dot, EdgesOfOneSkeleton) {
  const Simplex s{{ProcessId{1}, Value::bit(0)}, {ProcessId{2}, Value::bit(1)}, {ProcessId{3}, Value::bit(0)}};
  const auto dot = to_dot(make_complex({s}));
  EXPECT_NE(dot.find("label=\"1:0\""), std::string::npos);
  std::size_t edges = 0;
  for (std::size_t p = dot.find("--"); p != std::string::npos; p = dot.find("--", p + 1)) ++edges;
  EXPECT_EQ(edges, 3u);
}

TEST(DeltaTable, OneLinePerInputSimplex) {
  const auto task = binary_consensus(2);
  const auto table = delta_table(task);
  EXPECT_EQ(static_cast<std::size_t>(std::count(table.begin(), table.end(), '\n')), task.delta.size());
}
