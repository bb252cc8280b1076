#include "doctest.h"

#include <random>

#include "rwmso/error.hpp"
#include "rwmso/linemso.hpp"
#include "support.hpp"

using namespace rwmso;

namespace {

auto problem(const char* text, std::vector<std::int64_t> weights, Direction dir, int t = 1)
    -> LinEMSOProblem
{
    return LinEMSOProblem{parse_formula(text, t), std::move(weights), dir, {}};
}

} // namespace

TEST_CASE("classic optimisation problems on the families")
{
    auto mis = problem(support::kIndependentSet, {1}, Direction::Max);
    auto r = solve_linemso(family_tree(Family::Path, 4), mis);
    REQUIRE(r.feasible);
    CHECK(r.value == 2);
    CHECK(r.q == 3);
    CHECK(witness_valid(generate_graph(family_tree(Family::Path, 4)), mis, r.witness, r.value));

    CHECK(solve_linemso(family_tree(Family::Complete, 4), mis).value == 1);
    CHECK(solve_linemso(family_tree(Family::Cycle, 7), mis).value == 3);
    CHECK(solve_linemso(family_tree(Family::Star, 6), mis).value == 5);

    auto mds = problem(support::kDominatingSet, {1}, Direction::Min);
    auto s = solve_linemso(family_tree(Family::Star, 5), mds);
    CHECK(s.value == 1);
    REQUIRE(s.witness.size() == 1);
    CHECK(s.witness[0].count() == 1);
    CHECK(solve_linemso(family_tree(Family::Path, 7), mds).value == 3);

    auto mvc = problem(support::kVertexCover, {1}, Direction::Min);
    CHECK(solve_linemso(family_tree(Family::Complete, 5), mvc).value == 4);
    CHECK(solve_linemso(family_tree(Family::Path, 5), mvc).value == 2);
}

TEST_CASE("infeasible and degenerate problems")
{
    auto none = problem("Ex x. X(x) & !X(x)", {1}, Direction::Max);
    auto r = solve_linemso(family_tree(Family::Path, 3), none);
    CHECK_FALSE(r.feasible);
    CHECK(r.witness.empty());

    // negative weights prefer the empty set
    auto any = problem("Ax x. (X(x) | !X(x))", {-2}, Direction::Max);
    auto a = solve_linemso(family_tree(Family::Path, 3), any);
    CHECK(a.feasible);
    CHECK(a.value == 0);
    auto b = solve_linemso(family_tree(Family::Path, 3), problem("Ax x. (X(x) | !X(x))", {-2}, Direction::Min));
    CHECK(b.value == -6);

    CHECK_THROWS(solve_linemso(family_tree(Family::Path, 3), problem("X(x)", {1}, Direction::Max)));
    CHECK_THROWS(solve_linemso(family_tree(Family::Path, 3), problem("Ex x. X(x)", {1, 2}, Direction::Max)));
    CHECK_THROWS(solve_linemso(family_tree(Family::Path, 3),
                               LinEMSOProblem{parse_formula("Ex x. X(x)", 1), {1}, Direction::Max, {"Y"}}));
}

TEST_CASE("two set variables: a weighted partition")
{
    // X and Y partition V, X independent; maximise 3|X| + |Y|
    auto p = problem("(Ax x. ((X(x) | Y(x)) & !(X(x) & Y(x)))) & Ax x. Ax y. (!adj(x,y) | !X(x) | !X(y))",
                     {3, 1}, Direction::Max);
    CHECK(linemso_variables(p) == std::vector<std::string>{"X", "Y"});
    auto tree = family_tree(Family::Path, 5);
    auto r = solve_linemso(tree, p);
    CHECK(r.value == 3 * 3 + 2);
    CHECK(witness_valid(generate_graph(tree), p, r.witness, r.value));
    CHECK(r.q == 4);

    LinEMSOProblem swapped = p;
    swapped.set_variables = {"Y", "X"};
    swapped.weights = {1, 3};
    CHECK(solve_linemso(tree, swapped).value == r.value);
}

TEST_CASE("agrees with brute force on small random graphs")
{
    std::mt19937 rng(47);
    struct Case {
        const char* text;
        bool maximise;
    };
    const std::vector<Case> cases{
        {support::kIndependentSet, true},
        {support::kDominatingSet, false},
        {support::kVertexCover, false},
        {"Ax x. (!X(x) | label1(x))", true},
        {"Ax x. Ax y. (!X(x) | !X(y) | x = y | adj(x,y))", true}, // clique
        {"Ex x. X(x) & Ax y. (!X(y) | x = y)", true},
    };
    CharTreeStore store;
    for (int trial = 0; trial < 48; ++trial) {
        auto tree = support::random_parse_tree(rng, 1 + trial % 6, 1 + trial % 2);
        auto g = generate_graph(tree);
        const auto& c = cases[trial % cases.size()];
        std::int64_t w = 1 + static_cast<std::int64_t>(rng() % 3);
        LinEMSOProblem p{parse_formula(c.text, tree.label_width()), {w},
                         c.maximise ? Direction::Max : Direction::Min, {}};
        CAPTURE(c.text);
        CAPTURE(parse_tree_to_text(tree));
        auto expected = support::brute_linemso(g, p.phi, {"X"}, p.weights, c.maximise);
        auto r = solve_linemso(store, tree, p);
        REQUIRE(r.feasible == expected.feasible);
        if (!r.feasible)
            continue;
        CHECK(r.value == expected.value);
        CHECK(witness_valid(g, p, r.witness, r.value));
        CHECK(r.root_classes <= r.max_classes);
    }
}

TEST_CASE("objective and witness checks")
{
    auto p = problem(support::kIndependentSet, {2}, Direction::Max);
    auto g = support::path(3);
    CHECK(objective_value(p, {make_set(3, {0, 2})}) == 4);
    CHECK(witness_valid(g, p, {make_set(3, {0, 2})}, 4));
    CHECK_FALSE(witness_valid(g, p, {make_set(3, {0, 1})}, 4));
    CHECK_FALSE(witness_valid(g, p, {make_set(3, {0, 2})}, 3));
}
