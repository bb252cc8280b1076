#include "doctest.h"

#include "rwmso/error.hpp"
#include "rwmso/parse_tree.hpp"
#include "rwmso/rankdec.hpp"
#include "support.hpp"

using namespace rwmso;

namespace {

// rank by Gaussian elimination on vector<vector<int>> (independent of gf2.cpp)
auto naive_rank(std::vector<std::vector<int>> m) -> std::size_t
{
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][c] == 0)
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r)
            if (r != rank && m[r][c])
                for (std::size_t k = 0; k < cols; ++k)
                    m[r][k] ^= m[rank][k];
        ++rank;
    }
    return rank;
}

auto naive_cut_rank(const Structure& g, std::uint32_t mask) -> std::size_t
{
    std::vector<std::vector<int>> m;
    for (Element u = 0; u < g.size(); ++u) {
        if (!((mask >> u) & 1))
            continue;
        std::vector<int> row;
        for (Element v = 0; v < g.size(); ++v)
            if (!((mask >> v) & 1))
                row.push_back(g.adjacent(u, v));
        m.push_back(row);
    }
    return naive_rank(m);
}

auto as_set(std::size_t n, std::uint32_t mask) -> ElementSet
{
    ElementSet s(n);
    for (std::size_t v = 0; v < n; ++v)
        s[v] = (mask >> v) & 1;
    return s;
}

// caterpillar decomposition: leaves in order along a spine
auto caterpillar(std::size_t n) -> BranchDecomposition
{
    BranchDecomposition d;
    d.tree.assign(2 * n - 2, {});
    d.leaf_of.resize(n);
    auto link = [&](std::size_t a, std::size_t b) {
        d.tree[a].push_back(b);
        d.tree[b].push_back(a);
    };
    for (std::size_t v = 0; v < n; ++v)
        d.leaf_of[v] = v;
    // spine nodes n .. 2n-3
    for (std::size_t i = 0; i + 2 < n; ++i)
        link(n + i, i + 1);
    link(n, 0);
    for (std::size_t i = 0; i + 3 < n; ++i)
        link(n + i, n + i + 1);
    link(2 * n - 3, n - 1);
    return d;
}

} // namespace

TEST_CASE("cut rank")
{
    auto p4 = support::path(4);
    CHECK(cut_rank(p4, as_set(4, 0)) == 0);
    CHECK(cut_rank(p4, as_set(4, 0b0011)) == 1);
    CHECK(cut_rank(p4, as_set(4, 0b0101)) == 2);
    for (std::size_t n = 2; n <= 6; ++n) {
        auto k = support::complete(n);
        for (std::uint32_t m = 1; m + 1 < (1u << n); ++m)
            CHECK(cut_rank(k, as_set(n, m)) == 1);
    }
    CHECK_THROWS(cut_rank(p4, as_set(3, 1)));
}

TEST_CASE("cut rank agrees with an independent rank and is symmetric")
{
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& g : support::all_graphs(n, 0)) {
            const std::uint32_t all = (1u << n) - 1;
            for (std::uint32_t m = 0; m <= all; ++m) {
                const auto r = cut_rank(g, as_set(n, m));
                CHECK(r == naive_cut_rank(g, m));
                CHECK(r == cut_rank(g, as_set(n, all & ~m)));
                CHECK(r <= std::min<std::size_t>(std::popcount(m), n - std::popcount(m)));
            }
        }
}

TEST_CASE("width of given decompositions")
{
    BranchDecomposition edge{{{1}, {0}}, {0, 1}};
    CHECK(decomposition_width(support::complete(2), edge) == 1);
    CHECK(decomposition_width(Structure(2, 0), edge) == 0);
    CHECK(decomposition_width(support::path(4), caterpillar(4)) == 1);
    CHECK(decomposition_width(Structure(6, 0), caterpillar(6)) == 0);

    BranchDecomposition bad{{{1}, {0}}, {0, 0}};
    CHECK_THROWS(decomposition_width(support::complete(2), bad));
    BranchDecomposition cyclic{{{1, 2}, {0, 2}, {0, 1}}, {0, 1, 2}};
    CHECK_THROWS(decomposition_width(support::complete(3), cyclic));
}

TEST_CASE("exact rankwidth")
{
    for (std::size_t n = 2; n <= 6; ++n) {
        CAPTURE(n);
        auto k = exact_rankwidth(support::complete(n));
        CHECK(k.width == 1);
        CHECK(decomposition_width(support::complete(n), k.witness) == 1);
        CHECK(exact_rankwidth(support::path(n)).width == 1);
    }
    auto c5 = exact_rankwidth(support::cycle(5));
    CHECK(c5.width == 2);
    CHECK(decomposition_width(support::cycle(5), c5.witness) == 2);
    CHECK(exact_rankwidth(Structure(5, 0)).width == 0);
    CHECK(exact_rankwidth(Structure(1, 0)).width == 0);
    CHECK(exact_rankwidth(Structure(0, 0)).width == 0);
    CHECK_THROWS_AS(exact_rankwidth(Structure(9, 0)), ScaleGuardError);
}

TEST_CASE("family graphs have rankwidth at most the tree width t")
{
    for (auto fam : {Family::Path, Family::Complete, Family::Star, Family::CographUnion,
                     Family::CographJoin, Family::Cycle})
        for (std::size_t n = 3; n <= 8; ++n) {
            auto tree = family_tree(fam, n);
            auto r = exact_rankwidth(generate_graph(tree));
            CHECK(r.width <= static_cast<std::size_t>(tree.label_width()));
            CHECK(decomposition_width(generate_graph(tree), r.witness) == r.width);
        }
}
