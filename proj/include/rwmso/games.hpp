#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rwmso/chartree.hpp"
#include "rwmso/formula.hpp"
#include "rwmso/parse_tree.hpp"
#include "rwmso/structure.hpp"

namespace rwmso {

// Values for free variables. Later bindings of the same name shadow earlier ones.
struct Assignment {
    std::vector<std::pair<std::string, Element>> objects;
    std::vector<std::pair<std::string, ElementSet>> sets;

    auto bind(std::string x, Element a) -> Assignment&
    {
        objects.emplace_back(std::move(x), a);
        return *this;
    }
    auto bind_set(std::string x, ElementSet s) -> Assignment&
    {
        sets.emplace_back(std::move(x), std::move(s));
        return *this;
    }
};

// Direct satisfaction A |= phi[alpha], set equality included. Exponential in the
// number of set quantifiers. Throws on unbound free variables.
auto evaluate(const Structure& a, const Formula& phi, const Assignment& alpha = {}) -> bool;

// Winner of the model-checking game played on the structure itself (true when
// the verifier wins). phi must be in NNF.
auto game_on_structure(const Structure& a, const Formula& phi, const Assignment& alpha = {})
    -> bool;

struct GameStats {
    std::size_t visits = 0;      // (node, subformula) positions actually evaluated
    std::size_t memo_hits = 0;
    std::size_t subformulas = 0; // occurrences in the compiled formula
};

// The game on a reduced characteristic tree rooted at a node for (c, C). phi
// must be in NNF with free variables among x and X, where x_i names c_i and X_j
// names C_j; its quantifier rank must fit the remaining depth. Object moves
// follow point children, set moves follow set children. Set-equality atoms are
// not supported here.
auto game_on_tree(const CharTreeStore& store, NodeId root, const Formula& phi,
                  const std::vector<std::string>& x = {}, const std::vector<std::string>& sets = {},
                  GameStats* stats = nullptr) -> bool;

// The same game on a full characteristic tree.
auto game_on_tree(const FullCharTree& tree, const Formula& phi,
                  const std::vector<std::string>& x = {}, const std::vector<std::string>& sets = {},
                  GameStats* stats = nullptr) -> bool;

struct ModelCheckResult {
    bool value = false;
    std::size_t q = 0;
    NodeId root = 0;
    std::size_t distinct_nodes = 0;  // reachable from the root
    std::size_t interned_nodes = 0;  // everything in the store
    GameStats game;
};

// G |= phi for the graph generated by the parse tree: builds rc_q with
// q = qr(phi) and plays the game on it. phi must be a sentence.
auto model_check(const ParseTree& tree, const Formula& phi) -> bool;

auto model_check(CharTreeStore& store, const ParseTree& tree, const Formula& phi,
                 CharTreeOptions options = {}) -> ModelCheckResult;

} // namespace rwmso
