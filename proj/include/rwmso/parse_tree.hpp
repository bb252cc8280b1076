#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rwmso/gf2.hpp"
#include "rwmso/structure.hpp"

namespace rwmso {

// The three relabelings of a labeled composition G1 (x)[g,f1,f2] G2.
struct CompositionOp {
    Relabeling g;
    Relabeling f1;
    Relabeling f2;

    auto width() const -> int { return g.width(); }
    friend auto operator==(const CompositionOp&, const CompositionOp&) -> bool = default;
};

// A t-labeled parse tree. Leaves create one vertex labeled {1}; internal nodes
// compose their two children.
//
// Nodes are stored in post-order (left subtree, right subtree, node), so the
// root is last, every subtree occupies a contiguous index range, and the i-th
// leaf in storage order is the i-th leaf from the left, which becomes vertex i.
class ParseTree {
  public:
    using Index = std::uint32_t;
    static constexpr Index kNone = ~Index{0};

    struct Node {
        Index left = kNone; // kNone for leaves
        Index right = kNone;
        CompositionOp op;   // unused for leaves
        auto is_leaf() const -> bool { return left == kNone; }
        friend auto operator==(const Node&, const Node&) -> bool = default;
    };

    auto label_width() const -> int { return t_; }
    auto nodes() const -> const std::vector<Node>& { return nodes_; }
    auto node(Index i) const -> const Node& { return nodes_[i]; }
    auto root() const -> Index { return static_cast<Index>(nodes_.size() - 1); }
    auto size() const -> std::size_t { return nodes_.size(); }
    auto leaf_count() const -> std::size_t;

    friend auto operator==(const ParseTree&, const ParseTree&) -> bool = default;

  private:
    friend class ParseTreeBuilder;
    int t_ = 1;
    std::vector<Node> nodes_;
};

// Builds parse trees bottom-up. Handles returned by leaf()/compose() may be used
// as a child exactly once.
class ParseTreeBuilder {
  public:
    using Handle = std::uint32_t;

    explicit ParseTreeBuilder(int t);

    auto leaf() -> Handle;
    auto compose(const CompositionOp& op, Handle left, Handle right) -> Handle;
    auto finish(Handle root) const -> ParseTree;

  private:
    int t_;
    std::vector<ParseTree::Node> nodes_;
    std::vector<bool> used_;
};

// Reads "t=<width>" followed by tree := "(v)" | "(o" MAT MAT MAT tree tree ")",
// MAT := bitrow (";" bitrow)*, row i of MAT being the image of label i.
auto parse_tree_from_text(std::string_view text) -> ParseTree;
auto parse_tree_to_text(const ParseTree& tree) -> std::string;

// The graph the tree generates, with its final labels.
auto generate_graph(const ParseTree& tree) -> Structure;

// Same tree with every matrix zero-padded to the larger width.
auto widen(const ParseTree& tree, int t) -> ParseTree;

enum class Family { Path, Cycle, Complete, CographUnion, CographJoin, Star };

auto family_from_string(std::string_view name) -> Family;
auto to_string(Family family) -> std::string;

// Parse trees of standard graph families. Paths, complete graphs, cographs and
// stars use t = 1; cycles use t = 2.
auto family_tree(Family family, std::size_t n) -> ParseTree;

} // namespace rwmso
