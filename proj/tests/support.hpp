#pragma once

// Independent oracles and fixtures shared by the test binaries. Nothing here
// calls the code under test to produce an expected value, apart from the
// Structure container itself.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rwmso/chartree.hpp"
#include "rwmso/formula.hpp"
#include "rwmso/games.hpp"
#include "rwmso/parse_tree.hpp"
#include "rwmso/structure.hpp"

namespace support {

using namespace rwmso;

inline auto graph(std::size_t n, int t, const std::vector<std::pair<Element, Element>>& edges,
                  const std::vector<LabelVec>& labels = {}) -> Structure
{
    Structure g(n, t);
    for (auto [u, v] : edges)
        g.add_edge(u, v);
    for (std::size_t v = 0; v < labels.size(); ++v)
        g.set_label(static_cast<Element>(v), labels[v]);
    return g;
}

inline auto path(std::size_t n) -> Structure
{
    Structure g(n, 0);
    for (Element v = 0; v + 1 < n; ++v)
        g.add_edge(v, v + 1);
    return g;
}

inline auto cycle(std::size_t n) -> Structure
{
    auto g = path(n);
    if (n >= 3)
        g.add_edge(0, static_cast<Element>(n - 1));
    return g;
}

inline auto complete(std::size_t n) -> Structure
{
    Structure g(n, 0);
    for (Element u = 0; u < n; ++u)
        for (Element v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

// Every t-labeled graph on n vertices (edge masks times label choices).
inline auto all_graphs(std::size_t n, int t) -> std::vector<Structure>
{
    std::vector<std::pair<Element, Element>> pairs;
    for (Element u = 0; u < n; ++u)
        for (Element v = u + 1; v < n; ++v)
            pairs.emplace_back(u, v);
    const std::uint64_t labelings = std::uint64_t{1} << (n * static_cast<std::size_t>(t));
    std::vector<Structure> out;
    for (std::uint64_t em = 0; em < (std::uint64_t{1} << pairs.size()); ++em)
        for (std::uint64_t lm = 0; lm < labelings; ++lm) {
            Structure g(n, t);
            for (std::size_t i = 0; i < pairs.size(); ++i)
                if ((em >> i) & 1)
                    g.add_edge(pairs[i].first, pairs[i].second);
            for (std::size_t v = 0; v < n; ++v)
                g.set_label(static_cast<Element>(v),
                            static_cast<LabelVec>((lm >> (v * static_cast<std::size_t>(t))) &
                                                  ((1u << t) - 1)));
            out.push_back(std::move(g));
        }
    return out;
}

// perm[v] is the new id of v.
inline auto permuted(const Structure& g, const std::vector<Element>& perm) -> Structure
{
    Structure h(g.size(), g.label_width());
    for (Element u = 0; u < g.size(); ++u) {
        h.set_label(perm[u], g.label(u));
        for (Element v = u + 1; v < g.size(); ++v)
            if (g.adjacent(u, v))
                h.add_edge(perm[u], perm[v]);
    }
    return h;
}

inline auto isomorphic(const Structure& a, const Structure& b) -> bool
{
    if (a.size() != b.size() || a.label_width() != b.label_width() ||
        a.edge_count() != b.edge_count())
        return false;
    std::vector<Element> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (permuted(a, perm) == b)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Position pattern of (A, c, C): which positions hold the same element, which
// are adjacent, their labels and their memberships. Two ordered induced
// structures coincide exactly when their patterns do.
struct Pattern {
    std::size_t m = 0, p = 0;
    std::function<bool(std::size_t, std::size_t)> same, adj;
    std::function<LabelVec(std::size_t)> label;
    std::function<bool(std::size_t, std::size_t)> member; // (set, position)

    auto str() const -> std::string
    {
        std::string s = std::to_string(m) + "/" + std::to_string(p) + ":";
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                s += same(i, j) ? '=' : (adj(i, j) ? 'E' : '.');
        s += ':';
        for (std::size_t i = 0; i < m; ++i)
            s += std::to_string(label(i)) + ",";
        s += ':';
        for (std::size_t k = 0; k < p; ++k)
            for (std::size_t i = 0; i < m; ++i)
                s += member(k, i) ? '1' : '0';
        return s;
    }
};

inline auto pattern(const Structure& a, const ElementVector& c, const SetVector& sets)
    -> std::string
{
    Pattern pt;
    pt.m = c.size();
    pt.p = sets.size();
    pt.same = [&](auto i, auto j) { return c[i] == c[j]; };
    pt.adj = [&](auto i, auto j) { return a.adjacent(c[i], c[j]); };
    pt.label = [&](auto i) { return a.label(c[i]); };
    pt.member = [&](auto k, auto i) { return bool(sets[k][c[i]]); };
    return pt.str();
}

inline auto pattern(const OrderedStructure& o) -> std::string
{
    Pattern pt;
    pt.m = o.element_count();
    pt.p = o.set_count();
    pt.same = [&](auto i, auto j) { return o.positions[i] == o.positions[j]; };
    pt.adj = [&](auto i, auto j) { return o.adjacent(o.positions[i], o.positions[j]); };
    pt.label = [&](auto i) { return o.labels[o.positions[i]]; };
    pt.member = [&](auto k, auto i) { return o.in_trace(k, o.positions[i]); };
    return pt.str();
}

inline auto pattern(const FullCharTree& n) -> std::string
{
    Pattern pt;
    pt.m = n.c.size();
    pt.p = n.traces.size();
    pt.same = [&](auto i, auto j) { return n.c[i] == n.c[j]; };
    pt.adj = [&](auto i, auto j) {
        return n.induced.adjacent(n.induced_index(n.c[i]), n.induced_index(n.c[j]));
    };
    pt.label = [&](auto i) { return n.induced.label(n.induced_index(n.c[i])); };
    pt.member = [&](auto k, auto i) { return bool(n.traces[k][n.c[i]]); };
    return pt.str();
}

// Canonical string of the tree obtained from a full tree by replacing labels
// with patterns and merging equal siblings.
inline auto merged_signature(const FullCharTree& n) -> std::string
{
    std::set<std::string> kids;
    for (const auto& child : n.children)
        kids.insert(merged_signature(child));
    std::string s = pattern(n) + "{";
    for (const auto& k : kids)
        s += k + ";";
    return s + "}";
}

// Same canonical string for an interned node, by full unfolding.
inline auto unfolded_signature(const CharTreeStore& store, NodeId id,
                               std::map<NodeId, std::string>& memo) -> std::string
{
    if (auto it = memo.find(id); it != memo.end())
        return it->second;
    const auto& n = store.node(id);
    std::set<std::string> kids;
    for (const auto* list : {&n.point_children, &n.set_children})
        for (auto c : *list)
            kids.insert(unfolded_signature(store, c, memo));
    std::string s = pattern(store.ord(n.ord)) + "{";
    for (const auto& k : kids)
        s += k + ";";
    s += "}";
    memo.emplace(id, s);
    return s;
}

inline auto unfolded_signature(const CharTreeStore& store, NodeId id) -> std::string
{
    std::map<NodeId, std::string> memo;
    return unfolded_signature(store, id, memo);
}

// All compositions (g, f1, f2) for width t; 2^(3 t^2) of them.
inline auto all_ops(int t) -> std::vector<CompositionOp>
{
    const std::size_t cells = static_cast<std::size_t>(t * t);
    const std::uint64_t per = std::uint64_t{1} << cells;
    auto matrix = [&](std::uint64_t bits) {
        std::vector<LabelVec> rows(static_cast<std::size_t>(t));
        for (std::size_t r = 0; r < rows.size(); ++r)
            rows[r] = static_cast<LabelVec>((bits >> (r * static_cast<std::size_t>(t))) &
                                            ((1u << t) - 1));
        return Relabeling(t, rows);
    };
    std::vector<CompositionOp> out;
    for (std::uint64_t g = 0; g < per; ++g)
        for (std::uint64_t f1 = 0; f1 < per; ++f1)
            for (std::uint64_t f2 = 0; f2 < per; ++f2)
                out.push_back({matrix(g), matrix(f1), matrix(f2)});
    return out;
}

inline auto random_op(std::mt19937& rng, int t) -> CompositionOp
{
    std::uniform_int_distribution<LabelVec> cell(0, (1u << t) - 1);
    auto matrix = [&] {
        std::vector<LabelVec> rows(static_cast<std::size_t>(t));
        for (auto& r : rows)
            r = cell(rng);
        return Relabeling(t, rows);
    };
    auto g = matrix();
    auto f1 = matrix();
    auto f2 = matrix();
    return {g, f1, f2};
}

// Text of every parse tree with the given number of leaves, all shapes and
// every op from the list at each internal node.
inline auto all_parse_tree_texts(std::size_t leaves, const std::vector<CompositionOp>& ops)
    -> std::vector<std::string>
{
    std::vector<std::vector<std::string>> by_size(leaves + 1);
    by_size[1] = {"(v)"};
    for (std::size_t k = 2; k <= leaves; ++k)
        for (std::size_t i = 1; i < k; ++i)
            for (const auto& l : by_size[i])
                for (const auto& r : by_size[k - i])
                    for (const auto& op : ops)
                        by_size[k].push_back("(o " + op.g.to_string() + " " + op.f1.to_string() +
                                             " " + op.f2.to_string() + " " + l + " " + r + ")");
    return by_size[leaves];
}

inline auto random_parse_tree(std::mt19937& rng, std::size_t leaves, int t) -> ParseTree
{
    ParseTreeBuilder b(t);
    std::vector<ParseTreeBuilder::Handle> pool;
    for (std::size_t i = 0; i < leaves; ++i)
        pool.push_back(b.leaf());
    // combine adjacent handles so leaf order is kept
    while (pool.size() > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 2);
        auto i = pick(rng);
        auto h = b.compose(random_op(rng, t), pool[i], pool[i + 1]);
        pool[i] = h;
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    return b.finish(pool.front());
}

inline auto random_graph(std::mt19937& rng, std::size_t n, int t, double p = 0.5) -> Structure
{
    std::bernoulli_distribution edge(p);
    std::uniform_int_distribution<LabelVec> lab(0, t > 0 ? (1u << t) - 1 : 0);
    Structure g(n, t);
    for (Element u = 0; u < n; ++u) {
        g.set_label(u, lab(rng));
        for (Element v = u + 1; v < n; ++v)
            if (edge(rng))
                g.add_edge(u, v);
    }
    return g;
}

struct CatalogSentence {
    std::string name;
    std::string text;
    int needs_labels = 0;
};

// Sentences of quantifier rank at most 3.
inline auto sentence_catalog() -> std::vector<CatalogSentence>
{
    return {
        {"has-edge", "Ex x. Ex y. adj(x,y)"},
        {"edgeless", "Ax x. Ax y. !adj(x,y)"},
        {"has-isolated-vertex", "Ex x. Ax y. !adj(x,y)"},
        {"two-colorable",
         "EX X. Ax x. Ax y. (!adj(x,y) | (X(x) & !X(y)) | (!X(x) & X(y)))"},
        {"independent-set-meeting-all-edges",
         "EX X. Ax x. Ax y. (!adj(x,y) | !(X(x) & X(y))) & (!adj(x,y) | X(x) | X(y))"},
        {"disconnected", "EX X. (Ex x. X(x)) & (Ex y. !X(y)) & Ax x. Ax y. (!X(x) | X(y) | !adj(x,y))"},
        {"has-triangle", "Ex x. Ex y. Ex z. adj(x,y) & adj(y,z) & adj(x,z)"},
        {"has-induced-p3", "Ex x. Ex y. Ex z. adj(x,y) & adj(y,z) & !adj(x,z) & !(x = z)"},
        {"at-least-three-vertices", "Ex x. Ex y. Ex z. !(x = y) & !(y = z) & !(x = z)"},
        {"dominating-vertex", "Ex x. Ax y. (x = y | adj(x,y))"},
        {"some-label1", "Ex x. label1(x)", 1},
        {"all-label1", "Ax x. label1(x)", 1},
        {"neighbour-with-label1", "Ax x. Ex y. adj(x,y) & label1(y)", 1},
        {"label1-set-dominates", "EX X. Ax x. (X(x) | label1(x)) & Ex y. (!X(y))", 1},
        {"label2-edge", "Ex x. Ex y. adj(x,y) & label1(x) & label2(y)", 2},
        {"label2-somewhere", "Ex x. label2(x) & !label1(x)", 2},
    };
}

// Formulas with free variables among x, y, X for the game-chain checks.
struct OpenFormula {
    std::string text;
    std::vector<std::string> objects; // free object variables, in the order given to the game
    std::vector<std::string> sets;
};

inline auto open_catalog() -> std::vector<OpenFormula>
{
    return {
        {"adj(x,y)", {"x", "y"}, {}},
        {"x = y | !adj(x,y)", {"x", "y"}, {}},
        {"label1(x)", {"x"}, {}},
        {"X(x)", {"x"}, {"X"}},
        {"!X(x) & label1(x)", {"x"}, {"X"}},
        {"Ex y. adj(x,y)", {"x"}, {}},
        {"Ax y. (x = y | adj(x,y))", {"x"}, {}},
        {"Ex y. X(y)", {}, {"X"}},
        {"Ax y. (X(y) | label1(y))", {}, {"X"}},
        {"EX Y. Y(x)", {"x"}, {}},
        {"Ex x. Ex y. adj(x,y)", {}, {}},
        {"Ax x. Ex y. (x = y | adj(x,y))", {}, {}},
        {"EX X. Ax x. X(x)", {}, {}},
        {"AX X. Ex x. (X(x) | !X(x))", {}, {}},
        {"EX X. Ex x. X(x) & label1(x)", {}, {}},
        {"Ex x. Ax y. !adj(x,y)", {}, {}},
    };
}

// Every subset of {0..n-1}.
inline auto all_subsets(std::size_t n) -> std::vector<ElementSet>
{
    std::vector<ElementSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        ElementSet s(n);
        for (std::size_t v = 0; v < n; ++v)
            if ((mask >> v) & 1)
                s.set(v);
        out.push_back(std::move(s));
    }
    return out;
}

struct BruteOptimum {
    bool feasible = false;
    long long value = 0;
};

// Optimum of sum a_i |U_i| over all tuples accepted by evaluate.
inline auto brute_linemso(const Structure& g, const Formula& phi,
                          const std::vector<std::string>& names,
                          const std::vector<std::int64_t>& weights, bool maximise) -> BruteOptimum
{
    const auto subsets = all_subsets(g.size());
    BruteOptimum best;
    std::vector<std::size_t> pick(names.size(), 0);
    while (true) {
        Assignment alpha;
        long long value = 0;
        for (std::size_t i = 0; i < names.size(); ++i) {
            alpha.bind_set(names[i], subsets[pick[i]]);
            value += weights[i] * static_cast<long long>(subsets[pick[i]].count());
        }
        if (evaluate(g, phi, alpha) &&
            (!best.feasible || (maximise ? value > best.value : value < best.value))) {
            best.feasible = true;
            best.value = value;
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == subsets.size())
            pick[i++] = 0;
        if (i == pick.size())
            break;
    }
    return best;
}

inline const char* kIndependentSet = "Ax x. Ax y. (!adj(x,y) | !X(x) | !X(y))";
inline const char* kDominatingSet = "Ax x. (X(x) | Ex y. (X(y) & adj(x,y)))";
inline const char* kVertexCover = "Ax x. Ax y. (!adj(x,y) | X(x) | X(y))";

} // namespace support
