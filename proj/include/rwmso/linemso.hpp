#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rwmso/chartree.hpp"
#include "rwmso/formula.hpp"
#include "rwmso/parse_tree.hpp"
#include "rwmso/structure.hpp"

namespace rwmso {

enum class Direction { Max, Min };

// Optimise sum a_i |U_i| over tuples (U_1..U_l) with G |= phi[X_1/U_1, ...].
struct LinEMSOProblem {
    Formula phi;
    std::vector<std::int64_t> weights;
    Direction direction = Direction::Max;
    // Names of X_1..X_l. Empty means the free set variables in order of first
    // occurrence.
    std::vector<std::string> set_variables;
};

// One equivalence class of partial solutions: the characteristic tree of the
// processed subgraph with the chosen sets, and the best value reached in it.
struct WeightedClass {
    NodeId tree = 0;
    BigNat value;
    std::vector<ElementVector> witness; // one sorted vertex list per set
};

struct LinEMSOResult {
    bool feasible = false;
    BigNat value;
    std::vector<ElementSet> witness;
    std::size_t q = 0;
    std::size_t max_classes = 0; // largest class map at any parse-tree node
    std::size_t root_classes = 0;
};

struct LinEMSOOptions {
    CharTreeOptions char_tree;
    // Re-check the witness with evaluate when the graph is small enough for it.
    bool verify = true;
};

// The resolved set-variable names of a problem; throws if the problem is
// malformed (free object variables, weight count mismatch, ...).
auto linemso_variables(const LinEMSOProblem& problem) -> std::vector<std::string>;

auto solve_linemso(const ParseTree& tree, const LinEMSOProblem& problem,
                   LinEMSOOptions options = {}) -> LinEMSOResult;

auto solve_linemso(CharTreeStore& store, const ParseTree& tree, const LinEMSOProblem& problem,
                   LinEMSOOptions options = {}) -> LinEMSOResult;

// sum a_i |U_i|.
auto objective_value(const LinEMSOProblem& problem, const std::vector<ElementSet>& sets) -> BigNat;

// True if the sets satisfy phi on g (checked with evaluate) and attain value.
auto witness_valid(const Structure& g, const LinEMSOProblem& problem,
                   const std::vector<ElementSet>& sets, const BigNat& value) -> bool;

} // namespace rwmso
