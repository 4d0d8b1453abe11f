#include <cmath>

#include "doctest.h"

#include "semiopt/errors.hpp"
#include "semiopt/prooftree.hpp"
#include "support/generators.hpp"

using namespace semiopt;
using testsupport::SplitMix64;

namespace {

Formula example_formula() {
    return parse_nnf("(and (var 1) (var 2) (or (not 1) (not 2)))");
}

std::vector<ProofTree> all_trees(const Formula& f) {
    std::vector<ProofTree> trees;
    ProofTreeEnumerator it(f);
    while (auto t = it.next()) trees.push_back(std::move(*t));
    return trees;
}

// Independent check of an optimum claim: densely sample x^a (1-x)^b on [0,1].
double grid_max_single(std::int64_t a, std::int64_t b, double* argmax = nullptr) {
    double best = -1, best_x = 0;
    for (int j = 0; j <= 1000; ++j) {
        const double x = j / 1000.0;
        const double v = std::pow(x, static_cast<double>(a)) * std::pow(1 - x, static_cast<double>(b));
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    if (argmax) *argmax = best_x;
    return best;
}

} // namespace

TEST_CASE("profile_of counts leaf polarities per variable") {
    const Formula f = example_formula();
    const auto trees = all_trees(f);
    REQUIRE(trees.size() == 2);

    // First tree picks the first OR child, (not 1).
    const ExponentProfile p0 = profile_of(trees[0]);
    CHECK(p0.pos == std::vector<std::int64_t>{1, 1});
    CHECK(p0.neg == std::vector<std::int64_t>{1, 0});
    CHECK(!p0.forces_zero);

    const ExponentProfile p1 = profile_of(trees[1]);
    CHECK(p1.pos == std::vector<std::int64_t>{1, 1});
    CHECK(p1.neg == std::vector<std::int64_t>{0, 1});

    const Formula single = parse_nnf("(var 1)");
    const auto single_trees = all_trees(single);
    REQUIRE(single_trees.size() == 1);
    const ExponentProfile sp = profile_of(single_trees[0]);
    CHECK(sp.pos == std::vector<std::int64_t>{1});
    CHECK(sp.neg == std::vector<std::int64_t>{0});

    const Formula dup = parse_nnf("(or (var 1) (var 1))");
    for (const auto& t : all_trees(dup)) {
        const ExponentProfile p = profile_of(t);
        CHECK(p.pos == std::vector<std::int64_t>{1});
        CHECK(p.neg == std::vector<std::int64_t>{0});
    }
}

TEST_CASE("tree_opt_val matches the closed form") {
    ExponentProfile p;
    p.pos = {1, 1};
    p.neg = {1, 0};
    CHECK(tree_opt_val(p) == BigRational(1, 4));

    ExponentProfile cubed;
    cubed.pos = {3};
    cubed.neg = {0};
    CHECK(tree_opt_val(cubed) == BigRational(1));

    // Independent oracle: dense grid search of x (1-x)^2 peaks near 4/27.
    ExponentProfile mixed;
    mixed.pos = {1};
    mixed.neg = {2};
    const double oracle = grid_max_single(1, 2);
    CHECK(std::abs(oracle - BigRational(4, 27).to_double()) < 1e-3);
    CHECK(tree_opt_val(mixed) == BigRational(4, 27));

    ExponentProfile zero = mixed;
    zero.forces_zero = true;
    CHECK(tree_opt_val(zero) == BigRational(0));
}

TEST_CASE("tree_opt_interpretation places each variable at a/(a+b)") {
    ExponentProfile p;
    p.pos = {1, 1};
    p.neg = {1, 0};
    const Interpretation pi = tree_opt_interpretation(p);
    CHECK(pi.rational(1) == BigRational(1, 2));
    CHECK(pi.rational(2) == BigRational(1));

    ExponentProfile symmetric;
    symmetric.pos = {1};
    symmetric.neg = {1};
    CHECK(tree_opt_interpretation(symmetric).rational(1) == BigRational(1, 2));

    ExponentProfile mixed;
    mixed.pos = {1};
    mixed.neg = {2};
    double argmax = 0;
    grid_max_single(1, 2, &argmax);
    CHECK(std::abs(argmax - 1.0 / 3.0) < 2e-3);
    CHECK(tree_opt_interpretation(mixed).rational(1) == BigRational(1, 3));

    // Unconstrained variables default to 1/2.
    ExponentProfile slack;
    slack.pos = {1, 0};
    slack.neg = {0, 0};
    CHECK(tree_opt_interpretation(slack).rational(2) == BigRational(1, 2));

    ExponentProfile zero;
    zero.pos = {1};
    zero.neg = {0};
    zero.forces_zero = true;
    CHECK_THROWS_WITH_AS(tree_opt_interpretation(zero), doctest::Contains("identically 0"),
                         ArgumentError);
}

TEST_CASE("enumerate_trees yields each distinct tree exactly once") {
    CHECK(all_trees(example_formula()).size() == 2);
    CHECK(all_trees(parse_nnf("(var 1)")).size() == 1);

    // Two independent ORs: brute-force count is 2 * 2.
    const Formula two_ors = parse_nnf("(and (or (var 1) (var 2)) (or (var 1) (var 2)))");
    const auto trees = all_trees(two_ors);
    CHECK(trees.size() == 4);
    CHECK(count_proof_trees(two_ors) == 4);

    // Nested ORs multiply along the chosen branch only.
    const Formula nested = parse_nnf("(or (var 1) (or (var 2) (var 3)))");
    CHECK(all_trees(nested).size() == 3);
    CHECK(count_proof_trees(nested) == 3);

    // Encodings are unique and lexicographically increasing.
    std::vector<std::string> encodings;
    for (const auto& t : trees) encodings.push_back(t.encode());
    CHECK(encodings == std::vector<std::string>{"0,0", "0,1", "1,0", "1,1"});
}

TEST_CASE("enumerator agrees with the recursive count on random formulas") {
    SplitMix64 rng(53);
    for (int iter = 0; iter < 40; ++iter) {
        const Formula f = testsupport::random_nnf(rng, 4, 9, 4, true);
        const BigInt expected = count_proof_trees(f);
        std::uint64_t seen = 0;
        ProofTreeEnumerator it(f);
        while (auto t = it.next()) ++seen;
        CHECK(BigInt(static_cast<unsigned long>(seen)) == expected);
    }
}

TEST_CASE("materialized trees evaluate to the claimed optimum at the claimed point") {
    SplitMix64 rng(59);
    int checked = 0;
    for (int iter = 0; iter < 80 && checked < 40; ++iter) {
        const Formula f = testsupport::random_nnf(rng, 4, 8, 3, false);
        if (count_proof_trees(f) > 12) continue;
        ++checked;
        for (const auto& tree : all_trees(f)) {
            const ExponentProfile profile = profile_of(tree);
            const Formula slice = materialize(tree);
            CHECK(slice.or_nodes().size() == tree.encoding().size());
            const Interpretation best = tree_opt_interpretation(profile);
            CHECK(eval_sem(slice, best, SemiringSpec::viterbi()).rational() ==
                  tree_opt_val(profile));
            CHECK(profile.leaf_count() == slice.literal_count());
        }
    }
    CHECK(checked == 40);
}

TEST_CASE("tree_opt_val dominates the polynomial at random points") {
    SplitMix64 rng(61);
    const Formula f = testsupport::random_nnf(rng, 3, 6, 2, false);
    ProofTreeEnumerator it(f);
    auto tree = it.next();
    REQUIRE(tree.has_value());
    const ExponentProfile profile = profile_of(*tree);
    const BigRational optimum = tree_opt_val(profile);
    const Formula slice = materialize(*tree);
    for (int i = 0; i < 1000; ++i) {
        const Interpretation pi = testsupport::random_viterbi(rng, f.var_count());
        CHECK(eval_sem(slice, pi, SemiringSpec::viterbi()).rational() <= optimum);
    }
}

TEST_CASE("profiles flag constant-false leaves") {
    const Formula f = parse_nnf("(and (var 1) false)");
    const auto trees = all_trees(f);
    REQUIRE(trees.size() == 1);
    CHECK(profile_of(trees[0]).forces_zero);
    CHECK(tree_opt_val(profile_of(trees[0])) == BigRational(0));

    // A true leaf changes nothing.
    const Formula g = parse_nnf("(and (var 1) true)");
    CHECK(tree_opt_val(profile_of(all_trees(g)[0])) == BigRational(1));
}
