#include <gtest/gtest.h>

#include <bit>

#include "test_util.hpp"
#include "topsel/error.hpp"
#include "topsel/simplex.hpp"

using namespace topsel;

namespace {

std::vector<std::vector<int>> listing(const Skeleton& sk) {
  std::vector<std::vector<int>> out;
  for (const auto& s : sk.simplices()) out.push_back(s.vertices);
  return out;
}

}  // namespace

TEST(Enumerate, PowerSetOfTwo) {
  const auto sk = enumerate_skeleton({2, 1, true});
  EXPECT_EQ(listing(sk), (std::vector<std::vector<int>>{{}, {0}, {1}, {0, 1}}));
}

TEST(Enumerate, VerticesOnly) {
  const auto sk = enumerate_skeleton({3, 0, false});
  EXPECT_EQ(listing(sk), (std::vector<std::vector<int>>{{0}, {1}, {2}}));
}

TEST(Enumerate, CountMatchesBinomialSum) {
  EXPECT_EQ(enumerate_skeleton({4, 2, true}).size(), 15u);
  for (int m = 1; m <= 9; ++m)
    for (int d = -1; d < m; ++d)
      for (bool empty : {true, false}) {
        std::uint64_t expect = 0;
        for (int j = empty ? -1 : 0; j <= d; ++j) expect += binomial(m, j + 1);
        EXPECT_EQ(enumerate_skeleton({m, d, empty}).size(), expect) << m << ' ' << d << ' ' << empty;
      }
}

TEST(Enumerate, CanonicalOrderIsLinearExtension) {
  const auto sk = enumerate_skeleton({6, 5, true});
  EXPECT_TRUE(BaseOrder::canonical(sk.size()).is_linear_extension(sk));
  for (std::size_t i = 1; i < sk.size(); ++i) {
    EXPECT_LE(sk[i - 1].dim(), sk[i].dim());
    if (sk[i - 1].dim() == sk[i].dim()) EXPECT_LT(sk[i - 1].vertices, sk[i].vertices);
  }
}

TEST(Enumerate, RejectsBadSpec) {
  try {
    enumerate_skeleton({3, 3, true});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidSpec);
  }
  EXPECT_THROW(enumerate_skeleton({3, -2, true}), Error);
}

TEST(Skeleton, FacesAndClosure) {
  const auto sk = enumerate_skeleton({3, 2, true});
  const auto top = *sk.find(Simplex{{0, 1, 2}});
  EXPECT_EQ(sk.faces(top).size(), 3u);
  EXPECT_TRUE(sk.is_closed());
  const Skeleton open(3, {Simplex{{0}}, Simplex{{0, 1}}});
  EXPECT_FALSE(open.is_closed());
  EXPECT_THROW(Skeleton(2, {Simplex{{0}}, Simplex{{0}}}), Error);
}

TEST(WeightFromMatrix, TwoPoints) {
  Eigen::MatrixXd M(2, 2);
  M << 0, 1, 1, 0;
  const auto sk = enumerate_skeleton({2, 1, true});
  const Weight w = weight_from_matrix(M, sk);
  EXPECT_EQ(w.values, (std::vector<double>{0, 0, 0, 1}));
  EXPECT_EQ(w.argmax[3], (Entry{0, 1}));
}

TEST(WeightFromMatrix, UnitSquareDiagonalEdge) {
  const auto sk = enumerate_skeleton({4, 3, true});
  const Weight w = weight_from_matrix(testutil::unit_square(), sk);
  EXPECT_DOUBLE_EQ(w[*sk.find(Simplex{{0, 2}})], std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(w[*sk.find(Simplex{{0, 1}})], 1.0);
}

TEST(WeightFromMatrix, ArgmaxTieIsLexicographic) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Constant(3, 3, 2.0);
  M.diagonal().setZero();
  const auto sk = enumerate_skeleton({3, 2, true});
  const Weight w = weight_from_matrix(M, sk);
  EXPECT_EQ(w.argmax[*sk.find(Simplex{{0, 1, 2}})], (Entry{0, 1}));
}

TEST(WeightFromMatrix, PositiveHomogeneityAndMonotonicity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 2 + trial % 5;
    const auto sk = enumerate_skeleton({m, m - 1, true});
    const Eigen::MatrixXd M = oracle::random_filtration_matrix(m, rng);
    const Weight w = weight_from_matrix(M, sk);
    ASSERT_TRUE(is_monotone(w, sk));
    if (trial % 10 == 0) {
      const double lambda = u(rng);
      const Weight ws = weight_from_matrix(lambda * M, sk);
      for (std::size_t i = 0; i < sk.size(); ++i) EXPECT_DOUBLE_EQ(ws[i], lambda * w[i]);
    }
  }
}

TEST(WeightFromMatrix, RejectsInvalidMatrices) {
  Eigen::MatrixXd A(2, 2);
  A << 0, 1, 2, 0;
  const auto sk = enumerate_skeleton({2, 1, true});
  try {
    weight_from_matrix(A, sk);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidMatrix);
  }
  Eigen::MatrixXd B(2, 2);
  B << 3, 1, 1, 0;
  EXPECT_THROW(weight_from_matrix(B, sk), Error);
}

TEST(Refine, TiesBrokenByBase) {
  Eigen::MatrixXd M(2, 2);
  M << 0, 1, 1, 0;
  const auto sk = enumerate_skeleton({2, 1, true});
  const auto order = refine_preorder(weight_from_matrix(M, sk), BaseOrder::canonical(sk.size()), sk);
  EXPECT_EQ(order.sequence, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(Refine, SortsByWeight) {
  const auto sk = enumerate_skeleton({2, 1, true});
  Weight w;
  w.values = {0, 2, 1, 2};
  const auto order = refine_preorder(w, BaseOrder::canonical(sk.size()), sk);
  EXPECT_EQ(order.sequence, (std::vector<std::size_t>{0, 2, 1, 3}));
  for (std::size_t r = 0; r < order.size(); ++r) EXPECT_EQ(order.rank[order.sequence[r]], r);
}

TEST(Refine, InjectiveWeightIgnoresBase) {
  std::mt19937_64 rng(3);
  const auto sk = enumerate_skeleton({4, 3, true});
  // strictly increasing with dimension and jittered, hence injective
  auto by_mask = oracle::random_monotone_weight(4, rng);
  std::uniform_real_distribution<double> jitter(0.0, 1e-3);
  for (std::size_t s = 0; s < by_mask.size(); ++s) by_mask[s] += 10.0 * std::popcount(s) + jitter(rng);
  const auto w = testutil::weight_from_masks(sk, by_mask);
  std::vector<std::size_t> seq(sk.size());
  std::iota(seq.begin(), seq.end(), 0);
  // another linear extension: reverse lexicographic inside each dimension
  std::stable_sort(seq.begin(), seq.end(), [&](std::size_t a, std::size_t b) {
    if (sk[a].dim() != sk[b].dim()) return sk[a].dim() < sk[b].dim();
    return sk[a].vertices > sk[b].vertices;
  });
  const auto alt = BaseOrder::from_sequence(seq);
  ASSERT_TRUE(alt.is_linear_extension(sk));
  EXPECT_EQ(refine_preorder(w, alt, sk).sequence, refine_preorder(w, BaseOrder::canonical(sk.size()), sk).sequence);
}

TEST(Refine, OutputIsLinearExtension) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 6;
    const auto sk = enumerate_skeleton({m, m - 1, true});
    const auto w = testutil::weight_from_masks(sk, oracle::random_monotone_weight(m, rng, trial % 2 ? 4 : 0));
    EXPECT_TRUE(refine_preorder(w, BaseOrder::canonical(sk.size()), sk).is_linear_extension(sk));
  }
}

TEST(Refine, RejectsNonMonotone) {
  const auto sk = enumerate_skeleton({2, 1, true});
  Weight w;
  w.values = {0, 2, 1, 1};
  try {
    refine_preorder(w, BaseOrder::canonical(sk.size()), sk);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidWeight);
  }
}
