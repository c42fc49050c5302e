#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "paper_tables.hpp"
#include "seriate/pqtree.hpp"
#include "test_util.hpp"

using namespace seriate;

namespace {

PQTree fig1_tree() {
  return PQTree(pnode({pnode({leaf(1), leaf(2), leaf(3)}), qnode({leaf(4), leaf(5), leaf(6)})}));
}

// Case-study tree as displayed: the actors/teacher block first, then the
// remaining units in numeric order.
PQTree case_study_tree() {
  std::vector<PQNode> children;
  children.push_back(qnode({leaf(4), leaf(3), pnode({leaf(1), leaf(2)}), leaf(27)}));
  for (Label u = 5; u <= 26; ++u) children.push_back(leaf(u));
  return PQTree(pnode(std::move(children)));
}

PQNode actors_block() {
  return qnode({leaf(4), leaf(3), pnode({leaf(1), leaf(2)}), leaf(27)});
}

}  // namespace

TEST_CASE("frontier reads leaves left to right") {
  CHECK(frontier(PQTree(leaf(7))) == std::vector<Label>{7});
  CHECK(frontier(fig1_tree()) == std::vector<Label>{1, 2, 3, 4, 5, 6});
  CHECK(frontier(case_study_tree()) == paper::kActorsFrontier);
}

TEST_CASE("count_frontiers multiplies P factorials and Q reversals") {
  CHECK(count_frontiers(fig1_tree()) == 24);
  CHECK(count_frontiers(PQTree(leaf(3))) == 1);
  CHECK(count_frontiers(case_study_tree()) ==
        FrontierCount("103408066955539906560000"));  // 23! * 4

  for (int k = 1; k <= 8; ++k) {
    std::vector<PQNode> leaves;
    FrontierCount expect = 1;
    for (int i = 1; i <= k; ++i) {
      leaves.push_back(leaf(i));
      expect *= i;
    }
    if (k >= 2) CHECK(count_frontiers(PQTree(pnode(leaves))) == expect);
  }
}

TEST_CASE("enumerate_frontiers produces the complete set in lexicographic order") {
  auto all3 = enumerate_frontiers(PQTree(pnode({leaf(1), leaf(2), leaf(3)})), 100);
  REQUIRE(all3.size() == 6);
  CHECK(std::is_sorted(all3.begin(), all3.end()));
  CHECK(all3.front() == std::vector<Label>{1, 2, 3});
  CHECK(all3.back() == std::vector<Label>{3, 2, 1});

  auto fig1 = testutil::frontier_set(fig1_tree());
  std::set<std::vector<Label>> expected(paper::kFig1Permutations.begin(),
                                        paper::kFig1Permutations.end());
  CHECK(fig1 == expected);

  PQTree g5(pnode({leaf(5), qnode({leaf(1), pnode({leaf(2), leaf(3), leaf(4)})})}));
  std::set<std::vector<Label>> g5_expected(paper::kG5Permutations.begin(),
                                           paper::kG5Permutations.end());
  CHECK(testutil::frontier_set(g5) == g5_expected);
}

TEST_CASE("enumerate_frontiers refuses to exceed the cap with the exact count") {
  std::vector<PQNode> leaves;
  for (int i = 1; i <= 10; ++i) leaves.push_back(leaf(i));
  PQTree big(pnode(std::move(leaves)));
  try {
    enumerate_frontiers(big, 1000000);
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(e.exact_count() == "3628800");
  }
}

TEST_CASE("contains decides membership structurally") {
  PQTree g2(qnode({leaf(2), leaf(3), leaf(4), leaf(1)}));
  CHECK(contains(g2, std::vector<Label>{2, 3, 4, 1}));
  CHECK(contains(g2, std::vector<Label>{1, 4, 3, 2}));
  CHECK_FALSE(contains(g2, std::vector<Label>{2, 4, 3, 1}));

  PQTree block(actors_block());
  CHECK(contains(block, std::vector<Label>{4, 3, 1, 2, 27}));
  CHECK(contains(block, std::vector<Label>{27, 2, 1, 3, 4}));
  CHECK_FALSE(contains(block, std::vector<Label>{3, 4, 1, 2, 27}));

  CHECK(contains(case_study_tree(), paper::kActorsFrontier));

  CHECK_THROWS_AS(contains(g2, std::vector<Label>{1, 2, 3}), DomainError);
  CHECK_THROWS_AS(contains(g2, std::vector<Label>{1, 2, 3, 3}), DomainError);
  CHECK_THROWS_AS(contains(g2, std::vector<Label>{1, 2, 3, 5}), DomainError);
}

TEST_CASE("membership is invariant under full reversal") {
  testutil::Rng rng(4101);
  for (int iter = 0; iter < 30; ++iter) {
    PQTree t = testutil::random_pqtree(rng, testutil::rand_int(rng, 1, 7));
    std::vector<Label> f = frontier(t);
    std::vector<Label> r(f.rbegin(), f.rend());
    CHECK(contains(t, f));
    CHECK(contains(t, r));
  }
}

TEST_CASE("canonicalize splices, rewrites arity-2 Q, sorts P children") {
  PQTree q2(qnode({leaf(2), leaf(1)}));
  CHECK(canonicalize(q2).root().kind == PQNode::Kind::P);
  CHECK(frontier(canonicalize(q2)) == std::vector<Label>{1, 2});

  PQTree nested(pnode({pnode({leaf(9)})}));
  CHECK(canonicalize(nested).root() == leaf(9));

  PQTree messy(pnode({qnode({leaf(5), leaf(4)}), pnode({leaf(2), leaf(1)})}));
  PQTree canon = canonicalize(messy);
  CHECK(frontier(canon) == std::vector<Label>{1, 2, 4, 5});

  testutil::Rng rng(4102);
  for (int iter = 0; iter < 40; ++iter) {
    PQTree t = testutil::random_pqtree(rng, testutil::rand_int(rng, 1, 7));
    PQTree c = canonicalize(t);
    CHECK(canonicalize(c) == c);
    CHECK(testutil::frontier_set(c) == testutil::frontier_set(t));
  }
}

TEST_CASE("equivalent compares frontier sets") {
  PQTree t1(qnode({leaf(1), leaf(2), leaf(3)}));
  PQTree t2(qnode({leaf(3), leaf(2), leaf(1)}));
  CHECK(equivalent(t1, t2));

  CHECK_FALSE(equivalent(PQTree(pnode({leaf(1), leaf(2), leaf(3)})), t1));
  CHECK_FALSE(equivalent(t1, PQTree(qnode({leaf(1), leaf(2), leaf(4)}))));

  // Structurally different trees with equal frontier sets (nested pair
  // orderings) are resolved by the enumeration fallback.
  PQTree a(pnode({pnode({leaf(1), pnode({leaf(2), leaf(3), leaf(4)})}), leaf(5)}));
  PQTree b(pnode({leaf(5), qnode({leaf(1), pnode({leaf(2), leaf(3), leaf(4)})})}));
  CHECK(equivalent(a, b));

  testutil::Rng rng(4103);
  for (int iter = 0; iter < 30; ++iter) {
    PQTree t = testutil::random_pqtree(rng, testutil::rand_int(rng, 1, 7));
    CHECK(equivalent(t, canonicalize(t)));
  }
}

TEST_CASE("the published g3 table differs from its tree in exactly one row") {
  // The tree shown for group g3 encodes 12 permutations; a frontier set
  // is closed under reversal, which forces [4,3,2,1] where the printed
  // table lists [4,3,1,2]. The remaining 11 rows agree.
  PQTree g3(pnode({leaf(1), leaf(4), qnode({leaf(2), leaf(3)})}));
  CHECK(count_frontiers(g3) == 12);
  auto tree_set = testutil::frontier_set(g3);
  std::set<std::vector<Label>> printed(paper::kG3Permutations.begin(),
                                       paper::kG3Permutations.end());
  REQUIRE(printed.size() == 12);

  std::vector<std::vector<Label>> common;
  std::set_intersection(tree_set.begin(), tree_set.end(), printed.begin(), printed.end(),
                        std::back_inserter(common));
  CHECK(common.size() == 11);

  std::vector<std::vector<Label>> tree_only, printed_only;
  std::set_difference(tree_set.begin(), tree_set.end(), printed.begin(), printed.end(),
                      std::back_inserter(tree_only));
  std::set_difference(printed.begin(), printed.end(), tree_set.begin(), tree_set.end(),
                      std::back_inserter(printed_only));
  REQUIRE(tree_only == std::vector<std::vector<Label>>{{4, 3, 2, 1}});
  REQUIRE(printed_only == std::vector<std::vector<Label>>{{4, 3, 1, 2}});
  // The printed row's reversal is absent from the printed table, so the
  // table cannot be a frontier set as printed.
  CHECK_FALSE(printed.count({2, 1, 3, 4}));
}

TEST_CASE("random trees: enumeration count, closure, membership agreement") {
  testutil::Rng rng(4104);
  for (int iter = 0; iter < 200; ++iter) {
    PQTree t = testutil::random_pqtree(rng, testutil::rand_int(rng, 1, 8));
    auto all = enumerate_frontiers(t, 1u << 20);
    CHECK(FrontierCount(all.size()) == count_frontiers(t));
    CHECK(std::set<std::vector<Label>>(all.begin(), all.end()).size() == all.size());

    // frontier(t) is admissible, and the set is closed under reversal.
    auto f = frontier(t);
    CHECK(std::binary_search(all.begin(), all.end(), f));
    for (const auto& q : all) {
      std::vector<Label> r(q.rbegin(), q.rend());
      CHECK(contains(t, r));
    }
  }

  // contains() agrees with enumeration on every permutation of U.
  for (int n = 2; n <= 7; ++n) {
    for (int iter = 0; iter < 8; ++iter) {
      PQTree t = testutil::random_pqtree(rng, n);
      auto members = testutil::frontier_set(t);
      std::vector<Label> perm(t.universe());
      do {
        CHECK(contains(t, perm) == (members.count(perm) > 0));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST_CASE("tree validation rejects malformed nodes") {
  CHECK_THROWS_AS(PQTree(pnode({leaf(1), leaf(1)})), DomainError);
  CHECK_THROWS_AS(PQTree(pnode({})), DomainError);
  PQNode bad = leaf(1);
  bad.children.push_back(leaf(2));
  CHECK_THROWS_AS(PQTree(bad), DomainError);
}
