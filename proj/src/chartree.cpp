#include "rwmso/chartree.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "rwmso/error.hpp"

namespace rwmso {

namespace {

auto mix(std::size_t h, std::size_t v) -> std::size_t
{
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

} // namespace

// --- indicator vectors ------------------------------------------------------

auto IndicatorVector::from_entries(const std::vector<std::pair<int, std::size_t>>& entries)
    -> IndicatorVector
{
    if (entries.size() > kMaxLength)
        throw Error("indicator vector longer than " + std::to_string(kMaxLength));
    IndicatorVector d;
    std::size_t next[3] = {0, 1, 1};
    for (std::size_t j = 0; j < entries.size(); ++j) {
        auto [side, k] = entries[j];
        if (side != 1 && side != 2)
            throw Error("indicator vector: side must be 1 or 2");
        if (k != next[side])
            throw Error("indicator vector: side " + std::to_string(side) + " expects index " +
                        std::to_string(next[side]) + ", got " + std::to_string(k));
        ++next[side];
        if (side == 2)
            d.side2_ |= std::uint32_t{1} << j;
    }
    d.length_ = static_cast<std::uint8_t>(entries.size());
    return d;
}

auto IndicatorVector::index(std::size_t j) const -> std::size_t
{
    const std::uint32_t below = j == 0 ? 0 : (side2_ & ((std::uint32_t{1} << j) - 1));
    const auto twos = static_cast<std::size_t>(std::popcount(below));
    return side(j) == 2 ? twos + 1 : (j - twos) + 1;
}

auto IndicatorVector::count(int s) const -> std::size_t
{
    const auto twos = static_cast<std::size_t>(std::popcount(side2_));
    return s == 2 ? twos : length_ - twos;
}

auto IndicatorVector::entries() const -> std::vector<std::pair<int, std::size_t>>
{
    std::vector<std::pair<int, std::size_t>> out;
    for (std::size_t j = 0; j < length_; ++j)
        out.emplace_back(side(j), index(j));
    return out;
}

auto IndicatorVector::extended(int s) const -> IndicatorVector
{
    if (length_ >= kMaxLength)
        throw Error("indicator vector longer than " + std::to_string(kMaxLength));
    IndicatorVector d = *this;
    if (s == 2)
        d.side2_ |= std::uint32_t{1} << length_;
    ++d.length_;
    return d;
}

auto IndicatorVector::to_string() const -> std::string
{
    std::string s;
    for (auto [side, k] : entries())
        s += "(" + std::to_string(side) + "," + std::to_string(k) + ")";
    return s;
}

auto indicator_vector(const std::vector<int>& side_of, const ElementVector& c) -> IndicatorVector
{
    std::vector<std::pair<int, std::size_t>> entries;
    std::size_t seen[3] = {0, 0, 0};
    for (auto e : c) {
        if (e >= side_of.size() || (side_of[e] != 1 && side_of[e] != 2))
            throw Error("indicator vector: element " + std::to_string(e) +
                        " belongs to neither factor");
        int s = side_of[e];
        entries.emplace_back(s, ++seen[s]);
    }
    return IndicatorVector::from_entries(entries);
}

// --- renaming combinator ----------------------------------------------------

auto rename_combine(const OrderedStructure& o1, const OrderedStructure& o2,
                    const IndicatorVector& d, const CompositionOp& op) -> OrderedStructure
{
    const int t = op.width();
    if (o1.t != t || o2.t != t)
        throw WidthMismatch("rename_combine: label widths " + std::to_string(o1.t) + ", " +
                            std::to_string(o2.t) + " and operator width " + std::to_string(t));
    if (o1.set_count() != o2.set_count())
        throw Error("rename_combine: factors carry different numbers of sets");
    if (d.count(1) != o1.element_count() || d.count(2) != o2.element_count())
        throw Error("rename_combine: indicator vector " + d.to_string() +
                    " does not match factor sequences of length " +
                    std::to_string(o1.element_count()) + " and " +
                    std::to_string(o2.element_count()));

    const std::size_t u1 = o1.universe_size();
    const std::size_t u2 = o2.universe_size();
    const std::size_t m = d.size();

    // f(j) in the disjoint union, then renumber by first occurrence
    constexpr std::uint8_t unseen = 0xff;
    std::vector<std::uint8_t> renamed(u1 + u2, unseen);
    std::vector<std::size_t> old_of;
    OrderedStructure out;
    out.t = t;
    out.positions.resize(m);
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t old = d.side(j) == 1 ? o1.positions[k1++] : u1 + o2.positions[k2++];
        if (renamed[old] == unseen) {
            renamed[old] = static_cast<std::uint8_t>(old_of.size());
            old_of.push_back(old);
        }
        out.positions[j] = renamed[old];
    }
    if (old_of.size() != u1 + u2)
        throw Error("rename_combine: ordered structure has classes outside its sequence");

    const std::size_t u = old_of.size();
    out.labels.resize(u);
    out.adjacency.assign(u, 0);
    std::vector<LabelVec> raw(u1 + u2);
    for (std::size_t a = 0; a < u1; ++a)
        raw[a] = o1.labels[a];
    for (std::size_t b = 0; b < u2; ++b)
        raw[u1 + b] = op.g.apply(o2.labels[b]);

    for (std::size_t x = 0; x < u; ++x) {
        const std::size_t ox = old_of[x];
        const bool left = ox < u1;
        out.labels[x] = left ? op.f1.apply(o1.labels[ox]) : op.f2.apply(o2.labels[ox - u1]);
        for (std::size_t y = x + 1; y < u; ++y) {
            const std::size_t oy = old_of[y];
            const bool left_y = oy < u1;
            bool edge;
            if (left && left_y)
                edge = o1.adjacent(ox, oy);
            else if (!left && !left_y)
                edge = o2.adjacent(ox - u1, oy - u1);
            else
                edge = dot(raw[ox], raw[oy]); // one side already carries lab x T_g
            if (edge) {
                out.adjacency[x] |= ClassMask{1} << y;
                out.adjacency[y] |= ClassMask{1} << x;
            }
        }
    }

    out.traces.assign(o1.set_count(), 0);
    for (std::size_t x = 0; x < u; ++x) {
        const std::size_t ox = old_of[x];
        for (std::size_t s = 0; s < out.traces.size(); ++s) {
            const bool member = ox < u1 ? o1.in_trace(s, ox) : o2.in_trace(s, ox - u1);
            if (member)
                out.traces[s] |= ClassMask{1} << x;
        }
    }
    return out;
}

// --- store ------------------------------------------------------------------

auto RCNodeHash::operator()(const RCNode& n) const noexcept -> std::size_t
{
    std::size_t h = n.ord;
    for (auto c : n.point_children)
        h = mix(h, c);
    h = mix(h, 0xabcdefULL);
    for (auto c : n.set_children)
        h = mix(h, c);
    return h;
}

auto CharTreeStore::CrossKeyHash::operator()(const CrossKey& k) const noexcept -> std::size_t
{
    std::size_t h = k.a;
    h = mix(h, k.b);
    h = mix(h, k.sides);
    h = mix(h, k.length);
    h = mix(h, k.op);
    return mix(h, k.q);
}

auto CharTreeStore::CombineKeyHash::operator()(const CombineKey& k) const noexcept -> std::size_t
{
    std::size_t h = k.a;
    h = mix(h, k.b);
    h = mix(h, k.sides);
    h = mix(h, k.length);
    return mix(h, k.op);
}

auto CharTreeStore::intern_ord(OrderedStructure o) -> OrdId
{
    auto [it, inserted] = ord_index_.try_emplace(std::move(o), static_cast<OrdId>(ords_.size()));
    if (inserted)
        ords_.push_back(&it->first); // node-based map: key addresses are stable
    return it->second;
}

auto CharTreeStore::intern(RCNode n) -> NodeId
{
    for (auto* list : {&n.point_children, &n.set_children}) {
        std::sort(list->begin(), list->end());
        list->erase(std::unique(list->begin(), list->end()), list->end());
    }
    auto it = node_index_.find(n);
    if (it != node_index_.end())
        return it->second;
    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(n);
    node_index_.emplace(std::move(n), id);
    return id;
}

auto CharTreeStore::op_id(const CompositionOp& op) -> std::uint32_t
{
    for (std::uint32_t i = 0; i < ops_.size(); ++i)
        if (ops_[i] == op)
            return i;
    ops_.push_back(op);
    return static_cast<std::uint32_t>(ops_.size() - 1);
}

auto CharTreeStore::combine(OrdId o1, OrdId o2, const IndicatorVector& d, std::uint32_t op)
    -> OrdId
{
    CombineKey key{o1, o2, d.side_mask(), static_cast<std::uint8_t>(d.size()), op};
    auto it = combine_memo_.find(key);
    if (it != combine_memo_.end())
        return it->second;
    ++stats_.combine_calls;
    auto id = intern_ord(rename_combine(ord(o1), ord(o2), d, ops_[op]));
    combine_memo_.emplace(key, id);
    return id;
}

void CharTreeStore::clear_cross_product_memo()
{
    cross_memo_.clear();
}

// --- full trees -------------------------------------------------------------

auto FullCharTree::node_count() const -> std::size_t
{
    std::size_t n = 1;
    for (const auto& child : children)
        n += child.node_count();
    return n;
}

auto FullCharTree::induced_index(Element e) const -> Element
{
    auto it = std::lower_bound(universe.begin(), universe.end(), e);
    if (it == universe.end() || *it != e)
        throw Error("element " + std::to_string(e) + " is not in the induced structure");
    return static_cast<Element>(it - universe.begin());
}

namespace {

void check_sets(const Structure& a, const SetVector& sets)
{
    for (const auto& s : sets)
        if (s.size() != a.size())
            throw Error("set over a universe of size " + std::to_string(s.size()) +
                        ", structure has " + std::to_string(a.size()));
}

void check_sequence(const Structure& a, const ElementVector& c)
{
    for (auto e : c)
        if (e >= a.size())
            throw Error("element " + std::to_string(e) + " outside the universe");
}

auto full_tree(const Structure& a, std::size_t q, ElementVector& c, SetVector& sets)
    -> FullCharTree
{
    FullCharTree node;
    node.universe = c;
    std::sort(node.universe.begin(), node.universe.end());
    node.universe.erase(std::unique(node.universe.begin(), node.universe.end()),
                        node.universe.end());
    node.induced = induced(a, c);
    node.c = c;
    for (const auto& s : sets) {
        ElementSet trace(a.size());
        for (auto e : c)
            if (s[e])
                trace.set(e);
        node.traces.push_back(std::move(trace));
    }
    if (c.size() + sets.size() + 1 > q)
        return node;
    const std::size_t n = a.size();
    for (Element d = 0; d < n; ++d) {
        c.push_back(d);
        node.children.push_back(full_tree(a, q, c, sets));
        c.pop_back();
    }
    node.point_children = node.children.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        ElementSet s(n);
        for (std::size_t v = 0; v < n; ++v)
            if ((mask >> v) & 1)
                s.set(v);
        sets.push_back(std::move(s));
        node.children.push_back(full_tree(a, q, c, sets));
        sets.pop_back();
    }
    return node;
}

auto reduced_tree(CharTreeStore& store, const Structure& a, std::size_t q, ElementVector& c,
                  SetVector& sets) -> NodeId
{
    RCNode node;
    node.ord = store.intern_ord(ordered_induced(a, c, sets));
    if (c.size() + sets.size() + 1 <= q) {
        const std::size_t n = a.size();
        for (Element d = 0; d < n; ++d) {
            c.push_back(d);
            node.point_children.push_back(reduced_tree(store, a, q, c, sets));
            c.pop_back();
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            ElementSet s(n);
            for (std::size_t v = 0; v < n; ++v)
                if ((mask >> v) & 1)
                    s.set(v);
            sets.push_back(std::move(s));
            node.set_children.push_back(reduced_tree(store, a, q, c, sets));
            sets.pop_back();
        }
    }
    return store.intern(std::move(node));
}

auto single_vertex(int t) -> Structure
{
    Structure a(1, t);
    if (t > 0)
        a.set_label(0, unit_label(1));
    return a;
}

} // namespace

auto full_char_tree(const Structure& a, std::size_t q, const ElementVector& c,
                    const SetVector& sets) -> FullCharTree
{
    if (a.size() > 3 || q > 3)
        throw ScaleGuardError("full_char_tree is limited to |A| <= 3 and q <= 3, got |A| = " +
                              std::to_string(a.size()) + ", q = " + std::to_string(q));
    check_sequence(a, c);
    check_sets(a, sets);
    ElementVector cc = c;
    SetVector ss = sets;
    return full_tree(a, q, cc, ss);
}

auto reduced_char_tree_direct(CharTreeStore& store, const Structure& a, std::size_t q,
                              const ElementVector& c, const SetVector& sets,
                              DirectLimits limits) -> NodeId
{
    if (a.size() > limits.max_elements || q > limits.max_depth)
        throw ScaleGuardError("reduced_char_tree_direct is limited to |A| <= " +
                              std::to_string(limits.max_elements) +
                              " and q <= " + std::to_string(limits.max_depth) +
                              ", got |A| = " + std::to_string(a.size()) +
                              ", q = " + std::to_string(q));
    check_sequence(a, c);
    check_sets(a, sets);
    ElementVector cc = c;
    SetVector ss = sets;
    return reduced_tree(store, a, q, cc, ss);
}

auto leaf_char_tree(CharTreeStore& store, std::size_t q, int t) -> NodeId
{
    auto key = std::make_pair(q, t);
    auto it = store.leaf_cache().find(key);
    if (it != store.leaf_cache().end())
        return it->second;
    const auto a = single_vertex(t);
    ElementVector c;
    SetVector sets;
    auto id = reduced_tree(store, a, q, c, sets);
    store.leaf_cache().emplace(key, id);
    return id;
}

auto leaf_char_tree_with_sets(CharTreeStore& store, std::size_t q, int t,
                              const std::vector<bool>& member_of) -> NodeId
{
    const auto a = single_vertex(t);
    ElementVector c;
    SetVector sets;
    for (bool in : member_of) {
        ElementSet s(1);
        s[0] = in;
        sets.push_back(std::move(s));
    }
    return reduced_tree(store, a, q, c, sets);
}

// --- cross product ----------------------------------------------------------

namespace {

auto cross(CharTreeStore& store, NodeId r1, NodeId r2, std::size_t q, std::uint32_t op,
           const IndicatorVector& d) -> NodeId
{
    ++store.stats().cross_product_calls;
    const CharTreeStore::CrossKey key{r1, r2, d.side_mask(), static_cast<std::uint8_t>(d.size()),
                                      op, static_cast<std::uint32_t>(q)};
    auto& memo = store.cross_memo();
    if (auto it = memo.find(key); it != memo.end()) {
        ++store.stats().cross_product_memo_hits;
        return it->second;
    }

    // deque storage keeps these references valid while we intern below
    const RCNode& n1 = store.node(r1);
    const RCNode& n2 = store.node(r2);
    RCNode out;
    out.ord = store.combine(n1.ord, n2.ord, d, op);
    const auto& o = store.ord(out.ord);
    if (o.element_count() + o.set_count() + 1 <= q) {
        // D = {} always exists, so missing set children means the factor ran out of depth
        if (n1.set_children.empty() || n2.set_children.empty())
            throw BudgetError("tree_cross_product: factor tree too shallow for q = " +
                              std::to_string(q));
        const auto d1 = d.extended(1);
        const auto d2 = d.extended(2);
        for (auto u : n1.point_children)
            out.point_children.push_back(cross(store, u, r2, q, op, d1));
        for (auto u : n2.point_children)
            out.point_children.push_back(cross(store, r1, u, q, op, d2));
        for (auto u1 : n1.set_children)
            for (auto u2 : n2.set_children)
                out.set_children.push_back(cross(store, u1, u2, q, op, d));
    }
    auto id = store.intern(std::move(out));
    memo.emplace(key, id);
    return id;
}

} // namespace

auto tree_cross_product(CharTreeStore& store, NodeId r1, NodeId r2, std::size_t q,
                        const CompositionOp& op, const IndicatorVector& d) -> NodeId
{
    return cross(store, r1, r2, q, store.op_id(op), d);
}

auto char_tree_from_parse_tree(CharTreeStore& store, const ParseTree& tree, std::size_t q,
                               CharTreeOptions options) -> NodeId
{
    if (tree.size() == 0)
        throw Error("empty parse tree");
    const auto leaf = leaf_char_tree(store, q, tree.label_width());
    std::vector<NodeId> result(tree.size());
    for (ParseTree::Index i = 0; i < tree.size(); ++i) {
        const auto& node = tree.node(i);
        if (node.is_leaf()) {
            result[i] = leaf;
            continue;
        }
        if (!options.share_cross_product_memo)
            store.clear_cross_product_memo();
        result[i] = cross(store, result[node.left], result[node.right], q,
                          store.op_id(node.op), IndicatorVector{});
    }
    return result[tree.root()];
}

// --- inspection -------------------------------------------------------------

auto reachable_nodes(const CharTreeStore& store, NodeId root) -> std::vector<NodeId>
{
    std::vector<NodeId> order{root};
    std::unordered_set<NodeId> seen{root};
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& n = store.node(order[i]);
        for (const auto* list : {&n.point_children, &n.set_children})
            for (auto c : *list)
                if (seen.insert(c).second)
                    order.push_back(c);
    }
    return order;
}

auto tree_size(const CharTreeStore& store, NodeId root) -> boost::multiprecision::cpp_int
{
    const auto order = reachable_nodes(store, root);
    std::unordered_map<NodeId, BigNat> size;
    // children are discovered after parents, so reverse BFS order is bottom-up
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto& n = store.node(*it);
        BigNat s = 1;
        for (const auto* list : {&n.point_children, &n.set_children})
            for (auto c : *list)
                s += size.at(c);
        size[*it] = s;
    }
    return size.at(root);
}

auto dump_char_tree(const CharTreeStore& store, NodeId root) -> std::string
{
    std::ostringstream out;
    std::unordered_map<NodeId, const char*> kind{{root, "root"}};
    std::vector<NodeId> order{root};
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& n = store.node(order[i]);
        for (auto c : n.point_children)
            if (kind.emplace(c, "point").second)
                order.push_back(c);
        for (auto c : n.set_children)
            if (kind.emplace(c, "set").second)
                order.push_back(c);
    }
    for (auto id : order) {
        const auto& n = store.node(id);
        const auto& o = store.ord(n.ord);
        out << id << ' ' << kind[id] << ' ' << o.element_count() << ' ' << o.set_count() << ' '
            << n.point_children.size() + n.set_children.size();
        for (const auto* list : {&n.point_children, &n.set_children})
            for (auto c : *list)
                out << ' ' << c;
        out << " | " << o.to_string() << '\n';
    }
    return out.str();
}

// --- size bound -------------------------------------------------------------

auto tower(std::size_t i, const BigNat& x, std::size_t max_bits) -> std::optional<BigNat>
{
    if (i == 0)
        return x;
    auto inner = tower(i - 1, x, max_bits);
    if (!inner)
        return std::nullopt;
    const BigNat exponent = i == 1 ? *inner : 2 * *inner;
    if (exponent >= max_bits)
        return std::nullopt;
    BigNat r = 1;
    r <<= static_cast<unsigned>(exponent);
    return r;
}

auto size_bound(std::size_t q, std::size_t tau_size, std::size_t arity) -> SizeBound
{
    SizeBound b;
    BigNat qpow = boost::multiprecision::pow(BigNat(q), static_cast<unsigned>(arity));
    std::size_t qlogq = 0;
    if (q > 1) {
        // exact when q is a power of two, rounded up otherwise
        const double v = static_cast<double>(q) * std::log2(static_cast<double>(q));
        qlogq = static_cast<std::size_t>(std::ceil(v - 1e-9));
    }
    b.f = tau_size * qpow + qlogq + BigNat(q) * q;
    b.num_trees = tower(q + 1, b.f);
    if (auto inner = tower(q, b.f); inner && boost::multiprecision::msb(*inner + 1) < (1u << 22))
        b.tree_size = boost::multiprecision::pow(*inner, 4);
    if (!b.num_trees && !b.tree_size)
        throw Error("size_bound: both bounds overflow at q = " + std::to_string(q));
    return b;
}

} // namespace rwmso
