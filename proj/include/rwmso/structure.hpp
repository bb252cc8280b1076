#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "rwmso/gf2.hpp"

namespace rwmso {

using Element = std::uint32_t;
using ElementSet = boost::dynamic_bitset<>;
using ElementVector = std::vector<Element>;
using SetVector = std::vector<ElementSet>;

// A t-labeled graph viewed as a structure over {E, L_1..L_t}. The universe is
// 0..n-1; adjacency is symmetric and loop-free; every element carries a label
// row in GF(2)^t (all zero for "unlabeled" graphs).
class Structure {
  public:
    Structure() = default;
    Structure(std::size_t n, int t);

    auto size() const -> std::size_t { return labels_.size(); }
    auto label_width() const -> int { return t_; }

    auto adjacent(Element u, Element v) const -> bool { return adj_[u][v]; }
    auto neighbours(Element v) const -> const ElementSet& { return adj_[v]; }
    void add_edge(Element u, Element v);
    auto edge_count() const -> std::size_t;

    auto label(Element v) const -> LabelVec { return labels_[v]; }
    void set_label(Element v, LabelVec lab);
    auto has_label(Element v, int i) const -> bool { return (labels_[v] >> (i - 1)) & 1; }
    auto labels() const -> const std::vector<LabelVec>& { return labels_; }

    auto empty_set() const -> ElementSet { return ElementSet(size()); }
    auto full_set() const -> ElementSet { return ElementSet(size()).set(); }

    friend auto operator==(const Structure&, const Structure&) -> bool = default;

  private:
    int t_ = 0;
    std::vector<ElementSet> adj_;
    std::vector<LabelVec> labels_;
};

// Labels become lab x T_f; edges are untouched.
auto relabel(const Structure& g, const Relabeling& f) -> Structure;

// Disjoint union (G1 first) plus an edge for every cross pair with odd label
// intersection. The result is unlabeled.
auto join(const Structure& g1, const Structure& g2) -> Structure;

// Labeled composition: join of G1 with g(G2), then f1 on G1's part and f2 on G2's.
auto compose(const Structure& g1, const Structure& g2, const Relabeling& g, const Relabeling& f1,
             const Relabeling& f2) -> Structure;

// Substructure on the distinct entries of c, renumbered in increasing id order.
auto induced(const Structure& a, const ElementVector& c) -> Structure;

// A partial map dom -> range, given as pairs.
using PartialMap = std::vector<std::pair<Element, Element>>;

// Partial isomorphism between (A, Abar) and (B, Bbar).
auto is_partial_isomorphism(const Structure& a, const Structure& b, const SetVector& abar,
                            const SetVector& bbar, const PartialMap& pi) -> bool;

// Row-echelon basis of the span of {lab(u) | u in X}.
auto generated_subspace(const Structure& g, const ElementSet& x) -> std::vector<LabelVec>;

auto subspaces_orthogonal(const std::vector<LabelVec>& b1, const std::vector<LabelVec>& b2)
    -> bool;

auto make_set(std::size_t n, std::initializer_list<Element> members) -> ElementSet;

// Graph text format:
//   p graph <n> <m> <t>
//   v <id> <t-bit label>     (optional, default all zero)
//   e <u> <v>
// Lines starting with 'c' or '#' are comments.
auto read_graph(std::string_view text) -> Structure;
auto write_graph(const Structure& g) -> std::string;

} // namespace rwmso
