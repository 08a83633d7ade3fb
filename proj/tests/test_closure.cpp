#include "speedup/closure.hpp"
#include "speedup/errors.hpp"
#include "speedup/rules.hpp"

#include <gtest/gtest.h>

using namespace speedup;

namespace {
Vertex b(int id, int bit) { return {ProcessId{id}, Value::bit(bit)}; }
Vertex q(int id, int k, int m) { return {ProcessId{id}, Value::rational(k, m)}; }
}  // namespace

TEST(LocalTask, ConsensusMixedInputs) {
  const auto task = binary_consensus(2);
  const Simplex sigma{b(1, 0), b(2, 1)};
  const Simplex tau{b(1, 0), b(2, 1)};
  const auto local = local_task(task, sigma, tau);
  EXPECT_EQ(local.task.legal(tau), (std::vector<Simplex>{Simplex{b(1, 0), b(2, 0)}, Simplex{b(1, 1), b(2, 1)}}));
  EXPECT_EQ(local.task.legal(Simplex{b(1, 0)}), std::vector<Simplex>{Simplex{b(1, 0)}});
  EXPECT_FALSE(solve(local.task, ModelSpec::iis(), 1).solvable);
}

TEST(LocalTask, SimplexOfDeltaIsZeroRoundSolvable) {
  const auto task = approx_agreement(2, 4, 1);
  const Simplex sigma{q(1, 0, 4), q(2, 4, 4)};
  const Simplex tau{q(1, 2, 4), q(2, 3, 4)};
  EXPECT_TRUE(solve(local_task(task, sigma, tau).task, ModelSpec::iis(), 0).solvable);
}

TEST(LocalTask, Errors) {
  const auto task = binary_consensus(2);
  const Simplex sigma{b(1, 0), b(2, 0)};
  EXPECT_THROW(local_task(task, sigma, Simplex{b(1, 0)}), IdMismatchError);
  EXPECT_THROW(local_task(task, sigma, Simplex{b(1, 1), b(2, 0)}), NotInTargetError);
}

TEST(Closure, ContainsOriginalDelta) {
  for (const auto& task : {approx_agreement(2, 6, 1), liberal_approx_agreement(3, 3, 1), weak_consensus(3)}) {
    const auto closed = closure(task, ModelSpec::iis());
    for (const auto& [sigma, legal] : task.delta) {
      const auto& wider = closed.legal(sigma);
      EXPECT_TRUE(std::includes(wider.begin(), wider.end(), legal.begin(), legal.end())) << sigma.to_string();
    }
  }
}

TEST(Closure, SoloInputsKeepTheirValue) {
  const auto closed = closure_beta(liberal_approx_agreement(3, 4, 1), {{ProcessId{1}, 1}, {ProcessId{2}, 0}, {ProcessId{3}, 1}});
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(closed.legal(Simplex{q(2, k, 4)}), std::vector<Simplex>{Simplex{q(2, k, 4)}});
}

TEST(Closure, MoreExecutionsNeverWiden) {
  const auto task = approx_agreement(2, 6, 1);
  const auto iis = closure(task, ModelSpec::iis());
  const auto col = closure(task, ModelSpec::collect());
  for (const auto& [sigma, legal] : col.delta) {
    const auto& wider = iis.legal(sigma);
    EXPECT_TRUE(std::includes(wider.begin(), wider.end(), legal.begin(), legal.end()));
  }
}

TEST(Closure, ThreadsDoNotChangeTheResult) {
  const auto task = liberal_approx_agreement(3, 4, 1);
  ClosureOptions many;
  many.threads = 4;
  const auto a = closure(task, ModelSpec::iis());
  const auto c = closure(task, ModelSpec::iis(), many);
  EXPECT_TRUE(tasks_equal(a, c));
  EXPECT_TRUE(complexes_equal(a.outputs, c.outputs));
}

TEST(Closure, KnownIdentities) {
  EXPECT_TRUE(tasks_equal(closure(approx_agreement(2, 9, 1), ModelSpec::iis()), approx_agreement(2, 9, 3)));
  EXPECT_TRUE(is_fixed_point(binary_consensus(2), ModelSpec::iis()));
  EXPECT_FALSE(is_fixed_point(approx_agreement(3, 4, 1), ModelSpec::iis()));
  EXPECT_TRUE(is_fixed_point(weak_consensus(3), ModelSpec::iis_test_and_set()));
}

TEST(Closure, BetaMustCoverAllProcesses) {
  EXPECT_THROW(closure_beta(binary_consensus(2), {{ProcessId{1}, 0}}), ModelError);
}

TEST(Speedup, RejectsNonSolutions) {
  const auto task = binary_consensus(2);
  SimplicialMap f;
  for (const auto& v : iterate(task.inputs, ModelSpec::iis(), 1).vertices()) f.assignment.emplace(v, Vertex{v.id, Value::bit(0)});
  EXPECT_THROW(speedup_transform(task, ModelSpec::iis(), 1, f), NotASolutionError);
}

TEST(Speedup, ConsensusWithTestAndSetBecomesIdentity) {
  const auto task = binary_consensus(2);
  const auto model = ModelSpec::iis_test_and_set();
  const auto g = speedup_transform(task, model, 1, materialize_rules(task, model, {ts_consensus_rule()}));
  for (const auto& [from, to] : g.assignment) EXPECT_EQ(from, to);
  EXPECT_TRUE(verify_map(closure(task, model), model, 0, g));
}

TEST(Speedup, SolverWitnessesSpeedUp) {
  for (const auto& [task, model, t] : {std::tuple{approx_agreement(2, 9, 1), ModelSpec::iis(), 2},
                                       std::tuple{approx_agreement(3, 4, 1), ModelSpec::iis(), 2},
                                       std::tuple{approx_agreement(2, 3, 1), ModelSpec::iis(), 1}}) {
    const auto v = solve(task, model, t);
    ASSERT_TRUE(v.solvable);
    const auto g = speedup_transform(task, model, t, *v.witness);
    EXPECT_TRUE(verify_map(closure(task, model), model, t - 1, g));
  }
}

TEST(LowerBound, ApproxChains) {
  EXPECT_EQ(lower_bound_chain(approx_agreement(3, 4, 1), ModelSpec::iis(), 6).bound, 2);
  EXPECT_EQ(lower_bound_chain(approx_agreement(2, 9, 1), ModelSpec::iis(), 6).bound, 2);
  EXPECT_EQ(lower_bound_chain(approx_agreement(2, 3, 1), ModelSpec::iis(), 6).bound, 1);
  EXPECT_EQ(lower_bound_chain(approx_agreement(2, 3, 3), ModelSpec::iis(), 6).bound, 0);
}

TEST(LowerBound, FixedPointExhaustsBudget) {
  const auto r = lower_bound_chain(binary_consensus(2), ModelSpec::iis(), 4);
  EXPECT_EQ(r.bound, 4);
  EXPECT_TRUE(r.budget_exhausted);
}

TEST(LowerBound, ClosedFormShortcut) {
  LowerBoundOptions opts;
  opts.closed_form = scale_epsilon(3);
  const auto r = lower_bound_chain(approx_agreement(2, 27, 1), ModelSpec::iis(), 6, opts);
  EXPECT_TRUE(r.used_closed_form);
  EXPECT_EQ(r.bound, 3);
  opts.force_full = true;
  const auto full = lower_bound_chain(approx_agreement(2, 27, 1), ModelSpec::iis(), 6, opts);
  EXPECT_FALSE(full.used_closed_form);
  EXPECT_EQ(full.bound, 3);
  // A wrong family is detected at step one and ignored.
  opts.force_full = false;
  opts.closed_form = scale_epsilon(2);
  EXPECT_FALSE(lower_bound_chain(approx_agreement(2, 27, 1), ModelSpec::iis(), 6, opts).used_closed_form);
}

TEST(LowerBound, CustomTransform) {
  int calls = 0;
  const auto r = lower_bound_chain(
      binary_consensus(2), [&](const Task& t) { ++calls; return t; },
      [](const Task&) { return false; }, 3);
  EXPECT_EQ(r.bound, 3);
  EXPECT_EQ(calls, 2);
}
