#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rwmso/ordered_structure.hpp"
#include "rwmso/parse_tree.hpp"
#include "rwmso/structure.hpp"

namespace rwmso {

// Records, for each entry of a merged element sequence c, which factor it came
// from and its index within that factor's subsequence: d_j = (i, k) iff c_j is
// the k-th element of c[A_i]. Since the side-i entries are numbered 1, 2, ...
// in order, the sides alone determine the vector.
class IndicatorVector {
  public:
    static constexpr std::size_t kMaxLength = 32;

    IndicatorVector() = default;

    // Validates that each side's indices run 1, 2, 3, ... without gaps.
    static auto from_entries(const std::vector<std::pair<int, std::size_t>>& entries)
        -> IndicatorVector;

    auto size() const -> std::size_t { return length_; }
    auto empty() const -> bool { return length_ == 0; }
    auto side(std::size_t j) const -> int { return ((side2_ >> j) & 1) ? 2 : 1; }
    // 1-based index of entry j within its side.
    auto index(std::size_t j) const -> std::size_t;
    auto count(int side) const -> std::size_t;
    auto entries() const -> std::vector<std::pair<int, std::size_t>>;

    // d(i, k) with k = count(i) + 1.
    auto extended(int side) const -> IndicatorVector;

    // Bit j set iff entry j is on side 2.
    auto side_mask() const -> std::uint32_t { return side2_; }

    auto to_string() const -> std::string;

    friend auto operator==(const IndicatorVector&, const IndicatorVector&) -> bool = default;

  private:
    std::uint32_t side2_ = 0;
    std::uint8_t length_ = 0;
};

// ind(A_1, A_2, c). side_of[e] must be 1 or 2 for every entry e of c.
auto indicator_vector(const std::vector<int>& side_of, const ElementVector& c) -> IndicatorVector;

// The renaming combinator: Ord(H_1 (x) H_2, f(1)..f(m), C_1' u C_2') where
// f(j) is the class of the d_j-th element on its side. Cross edges come from
// lab_1(u) . (lab_2(v) x T_g); labels become f_1 / f_2 images.
auto rename_combine(const OrderedStructure& o1, const OrderedStructure& o2,
                    const IndicatorVector& d, const CompositionOp& op) -> OrderedStructure;

using NodeId = std::uint32_t;
using OrdId = std::uint32_t;

// Interned node of a reduced characteristic tree. Point-move and set-move
// children are kept apart (they always differ in m or p, so the split loses
// nothing); each list is sorted by id and duplicate-free, which makes the child
// set canonical and id equality equivalent to deep equality.
struct RCNode {
    OrdId ord = 0;
    std::vector<NodeId> point_children;
    std::vector<NodeId> set_children;

    auto has_children() const -> bool { return !point_children.empty() || !set_children.empty(); }
    friend auto operator==(const RCNode&, const RCNode&) -> bool = default;
};

struct RCNodeHash {
    auto operator()(const RCNode& n) const noexcept -> std::size_t;
};

struct BuildStats {
    std::size_t cross_product_calls = 0;
    std::size_t cross_product_memo_hits = 0;
    std::size_t combine_calls = 0;
};

// Hash-consing store for ordered structures and characteristic-tree nodes, plus
// the memo tables of the cross product. Ids are only meaningful within one
// store. Not thread-safe: confine a store to one thread.
class CharTreeStore {
  public:
    CharTreeStore() = default;
    CharTreeStore(const CharTreeStore&) = delete;
    auto operator=(const CharTreeStore&) -> CharTreeStore& = delete;

    auto intern_ord(OrderedStructure o) -> OrdId;
    auto ord(OrdId id) const -> const OrderedStructure& { return *ords_[id]; }

    // Sorts and deduplicates the child lists, then interns.
    auto intern(RCNode n) -> NodeId;
    auto node(NodeId id) const -> const RCNode& { return nodes_[id]; }
    auto ord_of(NodeId id) const -> const OrderedStructure& { return ord(nodes_[id].ord); }

    auto op_id(const CompositionOp& op) -> std::uint32_t;
    auto op(std::uint32_t id) const -> const CompositionOp& { return ops_[id]; }

    auto node_count() const -> std::size_t { return nodes_.size(); }
    auto ord_count() const -> std::size_t { return ords_.size(); }

    // Memoised rename_combine on interned operands.
    auto combine(OrdId o1, OrdId o2, const IndicatorVector& d, std::uint32_t op) -> OrdId;

    void clear_cross_product_memo();

    auto stats() const -> const BuildStats& { return stats_; }
    auto stats() -> BuildStats& { return stats_; }

    // memo table access for the cross product
    struct CrossKey {
        NodeId a, b;
        std::uint32_t sides;
        std::uint8_t length;
        std::uint32_t op;
        std::uint32_t q;
        friend auto operator==(const CrossKey&, const CrossKey&) -> bool = default;
    };
    struct CrossKeyHash {
        auto operator()(const CrossKey& k) const noexcept -> std::size_t;
    };
    auto cross_memo() -> std::unordered_map<CrossKey, NodeId, CrossKeyHash>& { return cross_memo_; }

    auto leaf_cache() -> std::map<std::pair<std::size_t, int>, NodeId>& { return leaf_cache_; }

  private:
    struct CombineKey {
        OrdId a, b;
        std::uint32_t sides;
        std::uint8_t length;
        std::uint32_t op;
        friend auto operator==(const CombineKey&, const CombineKey&) -> bool = default;
    };
    struct CombineKeyHash {
        auto operator()(const CombineKey& k) const noexcept -> std::size_t;
    };

    std::unordered_map<OrderedStructure, OrdId, OrderedStructureHash> ord_index_;
    std::vector<const OrderedStructure*> ords_;
    std::unordered_map<RCNode, NodeId, RCNodeHash> node_index_;
    std::deque<RCNode> nodes_;
    std::vector<CompositionOp> ops_;
    std::unordered_map<CombineKey, OrdId, CombineKeyHash> combine_memo_;
    std::unordered_map<CrossKey, NodeId, CrossKeyHash> cross_memo_;
    std::map<std::pair<std::size_t, int>, NodeId> leaf_cache_;
    BuildStats stats_;
};

// Full characteristic tree: every node records A[c], c and C n c. Children,
// when m + p + 1 <= q, are the point moves in element order followed by the set
// moves in subset-bitmask order.
struct FullCharTree {
    Structure induced;      // A[c], elements renumbered in increasing id order
    ElementVector universe; // sorted distinct entries of c (induced element i = universe[i])
    ElementVector c;
    SetVector traces;       // C_j n c, over the universe of A
    std::size_t point_children = 0;
    std::vector<FullCharTree> children;

    auto node_count() const -> std::size_t;
    auto induced_index(Element e) const -> Element;
};

struct DirectLimits {
    std::size_t max_elements = 4;
    std::size_t max_depth = 3;
};

// Full characteristic tree by definition. Oracle scale only: |A| <= 3, q <= 3.
auto full_char_tree(const Structure& a, std::size_t q, const ElementVector& c = {},
                    const SetVector& sets = {}) -> FullCharTree;

// Reduced characteristic tree by definition, interned into the store.
// Oracle scale: throws ScaleGuardError beyond the limits.
auto reduced_char_tree_direct(CharTreeStore& store, const Structure& a, std::size_t q,
                              const ElementVector& c = {}, const SetVector& sets = {},
                              DirectLimits limits = {}) -> NodeId;

// rc_q of the single vertex created by a parse-tree leaf (label {1}), memoised
// per (q, t).
auto leaf_char_tree(CharTreeStore& store, std::size_t q, int t) -> NodeId;

// redchar_q of a single labeled vertex with the given set memberships; used
// for leaves that carry pre-chosen sets.
auto leaf_char_tree_with_sets(CharTreeStore& store, std::size_t q, int t,
                              const std::vector<bool>& member_of) -> NodeId;

// R_1 x_{q, op, d} R_2. R_i must be reduced characteristic trees of the
// factors for the subsequences c[A_i] (same p) with enough depth left.
auto tree_cross_product(CharTreeStore& store, NodeId r1, NodeId r2, std::size_t q,
                        const CompositionOp& op, const IndicatorVector& d = {}) -> NodeId;

struct CharTreeOptions {
    // Keep cross-product memo entries across parse-tree nodes. Off by default:
    // each composition then does the full combination work, which keeps the
    // running time an honest f(q, t) per parse-tree node.
    bool share_cross_product_memo = false;
};

// rc_q of the graph generated by the parse tree, bottom-up.
auto char_tree_from_parse_tree(CharTreeStore& store, const ParseTree& tree, std::size_t q,
                               CharTreeOptions options = {}) -> NodeId;

// Distinct nodes reachable from root (root included), in BFS order.
auto reachable_nodes(const CharTreeStore& store, NodeId root) -> std::vector<NodeId>;

// Number of nodes of the tree with merged siblings, counted as a tree
// (a node shared by two parents counts twice).
auto tree_size(const CharTreeStore& store, NodeId root) -> boost::multiprecision::cpp_int;

// One line per distinct reachable node: "id kind m p |children| childIds..."
// followed by the ordered structure. kind is the move that first reached the
// node in BFS order (root, point, set).
auto dump_char_tree(const CharTreeStore& store, NodeId root) -> std::string;

using BigNat = boost::multiprecision::cpp_int;

// exp^(i)(x): exp^(0)(x) = x, exp^(1)(x) = 2^x, exp^(i)(x) = 2^(2 exp^(i-1)(x)).
// nullopt once the result would exceed max_bits bits.
auto tower(std::size_t i, const BigNat& x, std::size_t max_bits = 1u << 24) -> std::optional<BigNat>;

struct SizeBound {
    BigNat f; // |tau| q^r + ceil(q log2 q) + q^2
    std::optional<BigNat> num_trees; // exp^(q+1)(f)
    std::optional<BigNat> tree_size; // exp^(q)(f)^4
};

// Bounds on the number and the size of reduced characteristic trees. Entries
// that would not fit in memory are nullopt; throws if both overflow.
auto size_bound(std::size_t q, std::size_t tau_size, std::size_t arity) -> SizeBound;

} // namespace rwmso
