#include "rwmso/rankdec.hpp"

#include <limits>
#include <unordered_map>
#include <utility>

#include "rwmso/error.hpp"
#include "rwmso/gf2.hpp"

namespace rwmso {

auto cut_rank(const Structure& g, const ElementSet& y) -> std::size_t
{
    if (y.size() != g.size())
        throw Error("cut_rank: set over a different universe");
    std::vector<Element> rest;
    for (Element v = 0; v < g.size(); ++v)
        if (!y[v])
            rest.push_back(v);
    std::vector<boost::dynamic_bitset<>> rows;
    for (auto u = y.find_first(); u != ElementSet::npos; u = y.find_next(u)) {
        boost::dynamic_bitset<> row(rest.size());
        for (std::size_t j = 0; j < rest.size(); ++j)
            row[j] = g.adjacent(static_cast<Element>(u), rest[j]);
        rows.push_back(std::move(row));
    }
    return gf2_rank(std::move(rows));
}

namespace {

using Edge = std::pair<std::size_t, std::size_t>;

// Leaves (as vertex sets) on the 'to' side of the tree edge from -> to.
auto side_of(const BranchDecomposition& d, const std::vector<Element>& vertex_at,
             std::size_t from, std::size_t to, std::size_t n) -> ElementSet
{
    ElementSet side(n);
    std::vector<Edge> stack{{from, to}};
    while (!stack.empty()) {
        auto [parent, node] = stack.back();
        stack.pop_back();
        if (vertex_at[node] != std::numeric_limits<Element>::max())
            side.set(vertex_at[node]);
        for (auto next : d.tree[node])
            if (next != parent)
                stack.emplace_back(node, next);
    }
    return side;
}

auto vertex_index(const BranchDecomposition& d) -> std::vector<Element>
{
    std::vector<Element> vertex_at(d.tree.size(), std::numeric_limits<Element>::max());
    for (Element v = 0; v < d.leaf_of.size(); ++v)
        vertex_at[d.leaf_of[v]] = v;
    return vertex_at;
}

} // namespace

void validate_decomposition(const Structure& g, const BranchDecomposition& d)
{
    const std::size_t nodes = d.tree.size();
    if (d.leaf_of.size() != g.size())
        throw Error("decomposition: leaf map must cover every vertex");
    if (g.size() == 0)
        return;
    std::size_t degree_sum = 0;
    for (const auto& adj : d.tree) {
        if (adj.size() > 3)
            throw Error("decomposition: tree is not subcubic");
        degree_sum += adj.size();
    }
    if (degree_sum != 2 * (nodes - 1))
        throw Error("decomposition: not a tree");
    std::vector<bool> seen(nodes, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (auto y : d.tree[x]) {
            if (y >= nodes)
                throw Error("decomposition: bad tree node");
            if (!seen[y]) {
                seen[y] = true;
                ++reached;
                stack.push_back(y);
            }
        }
    }
    if (reached != nodes)
        throw Error("decomposition: tree is disconnected");
    std::vector<bool> hit(nodes, false);
    for (auto leaf : d.leaf_of) {
        if (leaf >= nodes || d.tree[leaf].size() > 1 || hit[leaf])
            throw Error("decomposition: leaf map is not a bijection onto leaves");
        hit[leaf] = true;
    }
    for (std::size_t x = 0; x < nodes; ++x)
        if (d.tree[x].size() <= 1 && !hit[x])
            throw Error("decomposition: leaf without a vertex");
}

auto decomposition_width(const Structure& g, const BranchDecomposition& d) -> std::size_t
{
    validate_decomposition(g, d);
    const auto vertex_at = vertex_index(d);
    std::size_t width = 0;
    for (std::size_t x = 0; x < d.tree.size(); ++x)
        for (auto y : d.tree[x])
            if (x < y)
                width = std::max(width, cut_rank(g, side_of(d, vertex_at, x, y, g.size())));
    return width;
}

namespace {

// Exhaustive search state: a cubic tree with leaves 0..k-1 as nodes 0..k-1 and
// internal nodes numbered from n on, stored as an edge list.
class RankwidthSearch {
  public:
    explicit RankwidthSearch(const Structure& g) : g_(g), n_(g.size()) {}

    auto run() -> RankwidthResult
    {
        std::vector<Edge> edges{{0, 1}};
        extend(edges, 2);
        return {best_width_, to_decomposition(best_edges_)};
    }

  private:
    // cut rank of a leaf set, normalised so vertex 0 is outside
    auto rank_of(std::uint32_t mask) -> std::size_t
    {
        const std::uint32_t all = (std::uint32_t{1} << n_) - 1;
        if (mask & 1)
            mask = all & ~mask;
        auto it = memo_.find(mask);
        if (it != memo_.end())
            return it->second;
        ElementSet y(n_);
        for (std::size_t v = 0; v < n_; ++v)
            if ((mask >> v) & 1)
                y.set(v);
        auto r = cut_rank(g_, y);
        memo_.emplace(mask, r);
        return r;
    }

    auto width_of(const std::vector<Edge>& edges, std::size_t leaves) -> std::size_t
    {
        // adjacency over leaves 0..leaves-1 and internal nodes n_..
        const std::size_t internal = leaves >= 2 ? leaves - 2 : 0;
        std::vector<std::vector<std::size_t>> adj(n_ + internal);
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::size_t width = 0;
        for (auto [a, b] : edges) {
            std::uint32_t mask = 0;
            std::vector<Edge> stack{{a, b}};
            while (!stack.empty()) {
                auto [p, x] = stack.back();
                stack.pop_back();
                if (x < n_)
                    mask |= std::uint32_t{1} << x;
                for (auto y : adj[x])
                    if (y != p)
                        stack.emplace_back(x, y);
            }
            width = std::max(width, rank_of(mask));
            if (width >= best_width_)
                return width;
        }
        return width;
    }

    void extend(std::vector<Edge>& edges, std::size_t next_leaf)
    {
        if (next_leaf == n_) {
            auto w = width_of(edges, n_);
            if (w < best_width_) {
                best_width_ = w;
                best_edges_ = edges;
            }
            return;
        }
        const std::size_t new_internal = n_ + (next_leaf - 2);
        const std::size_t count = edges.size();
        for (std::size_t i = 0; i < count && best_width_ > 0; ++i) {
            // subdivide edge i and hang the new leaf off the new node
            auto [a, b] = edges[i];
            edges[i] = {a, new_internal};
            edges.emplace_back(new_internal, b);
            edges.emplace_back(new_internal, next_leaf);
            extend(edges, next_leaf + 1);
            edges.pop_back();
            edges.pop_back();
            edges[i] = {a, b};
        }
    }

    auto to_decomposition(const std::vector<Edge>& edges) const -> BranchDecomposition
    {
        BranchDecomposition d;
        const std::size_t internal = n_ >= 2 ? n_ - 2 : 0;
        d.tree.assign(n_ + internal, {});
        for (auto [a, b] : edges) {
            d.tree[a].push_back(b);
            d.tree[b].push_back(a);
        }
        d.leaf_of.resize(n_);
        for (std::size_t v = 0; v < n_; ++v)
            d.leaf_of[v] = v;
        return d;
    }

    const Structure& g_;
    std::size_t n_;
    std::unordered_map<std::uint32_t, std::size_t> memo_;
    std::size_t best_width_ = std::numeric_limits<std::size_t>::max();
    std::vector<Edge> best_edges_;
};

} // namespace

auto exact_rankwidth(const Structure& g) -> RankwidthResult
{
    const std::size_t n = g.size();
    if (n > kMaxExactRankwidthVertices)
        throw ScaleGuardError("exact_rankwidth supports at most " +
                              std::to_string(kMaxExactRankwidthVertices) + " vertices, got " +
                              std::to_string(n));
    if (n <= 1) {
        RankwidthResult r;
        r.witness.tree.assign(n, {});
        r.witness.leaf_of.assign(n, 0);
        return r;
    }
    return RankwidthSearch(g).run();
}

} // namespace rwmso
