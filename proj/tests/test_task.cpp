#include "speedup/errors.hpp"
#include "speedup/task.hpp"

#include <gtest/gtest.h>

using namespace speedup;

namespace {
Vertex q(int id, int k, int m) { return {ProcessId{id}, Value::rational(k, m)}; }
Vertex b(int id, int bit) { return {ProcessId{id}, Value::bit(bit)}; }
}  // namespace

TEST(Tasks, ConsensusShape) {
  const auto t = binary_consensus(2);
  EXPECT_EQ(t.inputs.facet_count(), 4u);
  EXPECT_EQ(t.outputs.facet_count(), 2u);
  EXPECT_EQ(t.legal(Simplex{b(1, 0), b(2, 1)}).size(), 2u);
  EXPECT_EQ(t.legal(Simplex{b(1, 1)}), std::vector<Simplex>{Simplex{b(1, 1)}});
  EXPECT_THROW(binary_consensus(1), Error);
}

TEST(Tasks, WeakConsensusAllowsDisagreementForPairsOnly) {
  const auto t = weak_consensus(3);
  EXPECT_EQ(t.legal(Simplex{b(1, 0), b(2, 1)}).size(), 4u);
  EXPECT_EQ(t.legal(Simplex{b(1, 0), b(2, 1), b(3, 1)}).size(), 2u);
  EXPECT_EQ(t.legal(Simplex{b(1, 1), b(2, 1)}).size(), 1u);
}

TEST(Tasks, ApproxAgreementValidityAndSpread) {
  const auto t = approx_agreement(2, 4, 1);
  const auto& legal = t.legal(Simplex{q(1, 1, 4), q(2, 3, 4)});
  for (const auto& tau : legal) {
    const auto x = tau.vertices()[0].value.numerator();
    const auto y = tau.vertices()[1].value.numerator();
    EXPECT_LE(std::abs(x - y), 1);
    EXPECT_GE(std::min(x, y), 1);
    EXPECT_LE(std::max(x, y), 3);
  }
  EXPECT_EQ(legal.size(), 7u);
  EXPECT_THROW(approx_agreement(2, 0, 1), BadGridError);
  EXPECT_THROW(approx_agreement(2, 4, 0), BadGridError);
}

TEST(Tasks, LiberalVariantOnlyRelaxesPairs) {
  const auto strict = approx_agreement(3, 4, 1);
  const auto liberal = liberal_approx_agreement(3, 4, 1);
  const Simplex pair{q(1, 0, 4), q(2, 4, 4)};
  EXPECT_EQ(liberal.legal(pair).size(), 25u);
  EXPECT_LT(strict.legal(pair).size(), liberal.legal(pair).size());
  const Simplex triple{q(1, 0, 4), q(2, 2, 4), q(3, 4, 4)};
  EXPECT_EQ(strict.legal(triple), liberal.legal(triple));
  EXPECT_THROW(liberal_approx_agreement(2, 4, 1), Error);
}

TEST(Tasks, Equality) {
  EXPECT_TRUE(tasks_equal(approx_agreement(2, 9, 3), task_from_family({"approx", 2, 9, 3})));
  EXPECT_FALSE(tasks_equal(approx_agreement(2, 9, 3), approx_agreement(2, 9, 1)));
  EXPECT_THROW(tasks_equal(approx_agreement(2, 9, 3), approx_agreement(2, 4, 1)), InputMismatchError);
  EXPECT_TRUE(first_difference(approx_agreement(2, 9, 3), approx_agreement(2, 9, 1)).has_value());
}

TEST(Tasks, MakeTaskValidates) {
  const auto in = make_complex({Simplex{b(1, 0)}});
  const auto out = make_complex({Simplex{b(1, 1)}});
  EXPECT_THROW(make_task(in, out, {{Simplex{b(1, 0)}, {Simplex{b(1, 0)}}}}), Error);
  EXPECT_THROW(make_task(in, out, {}), Error);
  EXPECT_NO_THROW(make_task(in, out, {{Simplex{b(1, 0)}, {Simplex{b(1, 1)}}}}));
}
