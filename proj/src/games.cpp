#include "rwmso/games.hpp"

#include <cstdint>
#include <string_view>
#include <unordered_map>

#include "rwmso/error.hpp"

namespace rwmso {

namespace {

void check_label(const Structure& a, int i)
{
    if (i < 1 || i > a.label_width())
        throw WidthMismatch("label " + std::to_string(i) + " outside 1.." +
                            std::to_string(a.label_width()));
}

// Environment with shadowing; lookups scan from the most recent binding.
class Environment {
  public:
    Environment(const Structure& a, const Assignment& alpha) : a_(a)
    {
        for (const auto& [x, e] : alpha.objects) {
            if (e >= a.size())
                throw Error("assignment maps " + x + " outside the universe");
            objects_.emplace_back(x, e);
        }
        for (const auto& [x, s] : alpha.sets) {
            if (s.size() != a.size())
                throw Error("assignment for " + x + " is over a different universe");
            sets_.emplace_back(x, s);
        }
    }

    auto object(const std::string& x) const -> Element
    {
        for (auto it = objects_.rbegin(); it != objects_.rend(); ++it)
            if (it->first == x)
                return it->second;
        throw Error("unbound object variable " + x);
    }

    auto set(const std::string& x) const -> const ElementSet&
    {
        for (auto it = sets_.rbegin(); it != sets_.rend(); ++it)
            if (it->first == x)
                return it->second;
        throw Error("unbound set variable " + x);
    }

    auto atom(const Formula& f) const -> bool
    {
        switch (f.kind()) {
        case FormulaKind::Equal:
            return object(f.first()) == object(f.second());
        case FormulaKind::SetEqual:
            return set(f.first()) == set(f.second());
        case FormulaKind::Adj:
            return a_.adjacent(object(f.first()), object(f.second()));
        case FormulaKind::Label:
            check_label(a_, f.label());
            return a_.has_label(object(f.first()), f.label());
        case FormulaKind::In:
            return set(f.first())[object(f.second())];
        default:
            throw Error("not an atomic formula");
        }
    }

    std::vector<std::pair<std::string_view, Element>> objects_;
    std::vector<std::pair<std::string_view, ElementSet>> sets_;
    const Structure& a_;
};

auto subset(std::size_t n, std::uint64_t mask) -> ElementSet
{
    ElementSet s(n);
    for (std::size_t v = 0; v < n; ++v)
        if ((mask >> v) & 1)
            s.set(v);
    return s;
}

void check_subset_enumeration(const Structure& a)
{
    if (a.size() >= 63)
        throw ScaleGuardError("set quantification over " + std::to_string(a.size()) +
                              " elements");
}

auto eval(Environment& env, const Formula& f) -> bool
{
    const auto& a = env.a_;
    switch (f.kind()) {
    case FormulaKind::Not:
        return !eval(env, f.left());
    case FormulaKind::And:
        return eval(env, f.left()) && eval(env, f.right());
    case FormulaKind::Or:
        return eval(env, f.left()) || eval(env, f.right());
    case FormulaKind::ExistsObj:
    case FormulaKind::ForallObj: {
        const bool exists = f.kind() == FormulaKind::ExistsObj;
        env.objects_.emplace_back(f.first(), 0);
        bool result = !exists;
        for (Element v = 0; v < a.size() && result != exists; ++v) {
            env.objects_.back().second = v;
            result = eval(env, f.body());
        }
        env.objects_.pop_back();
        return result;
    }
    case FormulaKind::ExistsSet:
    case FormulaKind::ForallSet: {
        check_subset_enumeration(a);
        const bool exists = f.kind() == FormulaKind::ExistsSet;
        env.sets_.emplace_back(f.first(), ElementSet(a.size()));
        bool result = !exists;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << a.size()) && result != exists;
             ++mask) {
            env.sets_.back().second = subset(a.size(), mask);
            result = eval(env, f.body());
        }
        env.sets_.pop_back();
        return result;
    }
    default:
        return env.atom(f);
    }
}

// Hintikka game on the structure: the verifier owns disjunctions and existential
// positions, the falsifier the rest; terminal positions are literals.
enum class Owner { Verifier, Falsifier, None };

auto owner(const Formula& f) -> Owner
{
    switch (f.kind()) {
    case FormulaKind::Or:
    case FormulaKind::ExistsObj:
    case FormulaKind::ExistsSet:
        return Owner::Verifier;
    case FormulaKind::And:
    case FormulaKind::ForallObj:
    case FormulaKind::ForallSet:
        return Owner::Falsifier;
    default:
        return Owner::None;
    }
}

auto verifier_wins(Environment& env, const Formula& f) -> bool
{
    const auto who = owner(f);
    if (who == Owner::None) {
        if (f.kind() == FormulaKind::Not)
            return !env.atom(f.left());
        return env.atom(f);
    }
    // the owner wins if some move leads to a position they win
    const bool want = who == Owner::Verifier;
    auto try_move = [&](auto&& play) { return play() == want; };
    const auto& a = env.a_;
    bool found = false;
    switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
        found = try_move([&] { return verifier_wins(env, f.left()); }) ||
                try_move([&] { return verifier_wins(env, f.right()); });
        break;
    case FormulaKind::ExistsObj:
    case FormulaKind::ForallObj:
        env.objects_.emplace_back(f.first(), 0);
        for (Element v = 0; v < a.size() && !found; ++v) {
            env.objects_.back().second = v;
            found = try_move([&] { return verifier_wins(env, f.body()); });
        }
        env.objects_.pop_back();
        break;
    default:
        check_subset_enumeration(a);
        env.sets_.emplace_back(f.first(), ElementSet(a.size()));
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << a.size()) && !found; ++mask) {
            env.sets_.back().second = subset(a.size(), mask);
            found = try_move([&] { return verifier_wins(env, f.body()); });
        }
        env.sets_.pop_back();
        break;
    }
    return found == want;
}

// --- games on characteristic trees ------------------------------------------

// A subformula occurrence with its variables resolved to slots: object slot i is
// the i-th element of the node's sequence, set slot j its j-th set.
struct Occurrence {
    FormulaKind kind;
    bool negated = false;
    int a = -1;
    int b = -1;
    int label = 0;
    int left = -1;
    int right = -1;
};

class Compiler {
  public:
    Compiler(const std::vector<std::string>& x, const std::vector<std::string>& sets)
        : objects_(x), sets_(sets) {}

    auto compile(const Formula& f) -> int
    {
        Occurrence o{f.kind()};
        switch (f.kind()) {
        case FormulaKind::Not:
            if (!f.left().is_atomic())
                throw Error("game evaluation needs a formula in negation normal form");
            o = atom(f.left());
            o.negated = true;
            break;
        case FormulaKind::And:
        case FormulaKind::Or:
            o.left = compile(f.left());
            o.right = compile(f.right());
            break;
        case FormulaKind::ExistsObj:
        case FormulaKind::ForallObj:
            objects_.push_back(f.first());
            o.left = compile(f.body());
            objects_.pop_back();
            break;
        case FormulaKind::ExistsSet:
        case FormulaKind::ForallSet:
            sets_.push_back(f.first());
            o.left = compile(f.body());
            sets_.pop_back();
            break;
        default:
            o = atom(f);
        }
        occurrences.push_back(o);
        return static_cast<int>(occurrences.size() - 1);
    }

    std::vector<Occurrence> occurrences;

  private:
    static auto slot(const std::vector<std::string>& scope, const std::string& x) -> int
    {
        for (auto i = scope.size(); i-- > 0;)
            if (scope[i] == x)
                return static_cast<int>(i);
        throw Error("free variable " + x + " is not among the tree's variables");
    }

    auto atom(const Formula& f) -> Occurrence
    {
        Occurrence o{f.kind()};
        switch (f.kind()) {
        case FormulaKind::Equal:
        case FormulaKind::Adj:
            o.a = slot(objects_, f.first());
            o.b = slot(objects_, f.second());
            break;
        case FormulaKind::Label:
            o.a = slot(objects_, f.first());
            o.label = f.label();
            break;
        case FormulaKind::In:
            o.a = slot(sets_, f.first());
            o.b = slot(objects_, f.second());
            break;
        case FormulaKind::SetEqual:
            throw Error("set equality atoms are not supported by the tree game");
        default:
            throw Error("not an atomic formula");
        }
        return o;
    }

    std::vector<std::string> objects_;
    std::vector<std::string> sets_;
};

struct ReducedTree {
    using Node = NodeId;
    const CharTreeStore& store;

    auto key(Node n) const -> std::uint64_t { return n; }
    auto has_moves(Node n) const -> bool { return !store.node(n).set_children.empty(); }
    auto children(Node n, bool set_move) const -> const std::vector<NodeId>&
    {
        const auto& node = store.node(n);
        return set_move ? node.set_children : node.point_children;
    }

    auto atom(Node n, const Occurrence& o) const -> bool
    {
        const auto& h = store.ord_of(n);
        auto cls = [&](int i) {
            if (static_cast<std::size_t>(i) >= h.element_count())
                throw Error("tree game: object slot beyond the node's sequence");
            return h.positions[static_cast<std::size_t>(i)];
        };
        switch (o.kind) {
        case FormulaKind::Equal:
            return cls(o.a) == cls(o.b);
        case FormulaKind::Adj:
            return h.adjacent(cls(o.a), cls(o.b));
        case FormulaKind::Label:
            if (o.label < 1 || o.label > h.t)
                throw WidthMismatch("label " + std::to_string(o.label) + " outside 1.." +
                                    std::to_string(h.t));
            return (h.labels[cls(o.a)] >> (o.label - 1)) & 1;
        default:
            return h.in_trace(static_cast<std::size_t>(o.a), cls(o.b));
        }
    }
};

struct FullTree {
    using Node = const FullCharTree*;

    auto key(Node n) const -> std::uint64_t { return reinterpret_cast<std::uintptr_t>(n); }
    auto has_moves(Node n) const -> bool { return !n->children.empty(); }
    auto children(Node n, bool set_move) const -> std::vector<Node>
    {
        std::vector<Node> out;
        const std::size_t from = set_move ? n->point_children : 0;
        const std::size_t to = set_move ? n->children.size() : n->point_children;
        for (std::size_t i = from; i < to; ++i)
            out.push_back(&n->children[i]);
        return out;
    }

    auto atom(Node n, const Occurrence& o) const -> bool
    {
        auto elem = [&](int i) { return n->c.at(static_cast<std::size_t>(i)); };
        switch (o.kind) {
        case FormulaKind::Equal:
            return elem(o.a) == elem(o.b);
        case FormulaKind::Adj:
            return n->induced.adjacent(n->induced_index(elem(o.a)), n->induced_index(elem(o.b)));
        case FormulaKind::Label:
            check_label(n->induced, o.label);
            return n->induced.has_label(n->induced_index(elem(o.a)), o.label);
        default:
            return n->traces.at(static_cast<std::size_t>(o.a))[elem(o.b)];
        }
    }
};

template <class Tree>
class TreeGame {
  public:
    TreeGame(Tree tree, const std::vector<Occurrence>& occ, GameStats& stats)
        : tree_(tree), occ_(occ), stats_(stats) {}

    auto wins(typename Tree::Node n, int i) -> bool
    {
        const auto key = std::make_pair(tree_.key(n), i);
        if (auto it = memo_.find(key); it != memo_.end()) {
            ++stats_.memo_hits;
            return it->second;
        }
        ++stats_.visits;
        const auto& o = occ_[static_cast<std::size_t>(i)];
        bool result = false;
        switch (o.kind) {
        case FormulaKind::And:
            result = wins(n, o.left) && wins(n, o.right);
            break;
        case FormulaKind::Or:
            result = wins(n, o.left) || wins(n, o.right);
            break;
        case FormulaKind::ExistsObj:
        case FormulaKind::ForallObj:
        case FormulaKind::ExistsSet:
        case FormulaKind::ForallSet: {
            if (!tree_.has_moves(n))
                throw BudgetError("tree game: quantifier rank exceeds the tree depth");
            const bool set_move =
                o.kind == FormulaKind::ExistsSet || o.kind == FormulaKind::ForallSet;
            const bool exists =
                o.kind == FormulaKind::ExistsObj || o.kind == FormulaKind::ExistsSet;
            result = !exists;
            for (auto child : tree_.children(n, set_move))
                if (wins(child, o.left) == exists) {
                    result = exists;
                    break;
                }
            break;
        }
        default:
            result = tree_.atom(n, o) != o.negated;
        }
        memo_.emplace(key, result);
        return result;
    }

  private:
    struct KeyHash {
        auto operator()(const std::pair<std::uint64_t, int>& k) const noexcept -> std::size_t
        {
            return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL +
                                              static_cast<std::uint64_t>(k.second));
        }
    };

    Tree tree_;
    const std::vector<Occurrence>& occ_;
    GameStats& stats_;
    std::unordered_map<std::pair<std::uint64_t, int>, bool, KeyHash> memo_;
};

template <class Tree>
auto play(Tree tree, typename Tree::Node root, const Formula& phi,
          const std::vector<std::string>& x, const std::vector<std::string>& sets,
          GameStats* stats) -> bool
{
    Compiler compiler(x, sets);
    const int top = compiler.compile(phi);
    GameStats local;
    local.subformulas = compiler.occurrences.size();
    TreeGame<Tree> game(tree, compiler.occurrences, local);
    const bool result = game.wins(root, top);
    if (stats)
        *stats = local;
    return result;
}

} // namespace

auto evaluate(const Structure& a, const Formula& phi, const Assignment& alpha) -> bool
{
    Environment env(a, alpha);
    return eval(env, phi);
}

auto game_on_structure(const Structure& a, const Formula& phi, const Assignment& alpha) -> bool
{
    if (!is_nnf(phi))
        throw Error("game_on_structure needs a formula in negation normal form");
    Environment env(a, alpha);
    return verifier_wins(env, phi);
}

auto game_on_tree(const CharTreeStore& store, NodeId root, const Formula& phi,
                  const std::vector<std::string>& x, const std::vector<std::string>& sets,
                  GameStats* stats) -> bool
{
    const auto& o = store.ord_of(root);
    if (o.element_count() != x.size() || o.set_count() != sets.size())
        throw Error("game_on_tree: node carries " + std::to_string(o.element_count()) +
                    " elements and " + std::to_string(o.set_count()) + " sets, got " +
                    std::to_string(x.size()) + " and " + std::to_string(sets.size()) +
                    " variables");
    return play(ReducedTree{store}, root, phi, x, sets, stats);
}

auto game_on_tree(const FullCharTree& tree, const Formula& phi, const std::vector<std::string>& x,
                  const std::vector<std::string>& sets, GameStats* stats) -> bool
{
    if (tree.c.size() != x.size() || tree.traces.size() != sets.size())
        throw Error("game_on_tree: node carries " + std::to_string(tree.c.size()) +
                    " elements and " + std::to_string(tree.traces.size()) + " sets, got " +
                    std::to_string(x.size()) + " and " + std::to_string(sets.size()) +
                    " variables");
    return play(FullTree{}, &tree, phi, x, sets, stats);
}

auto model_check(CharTreeStore& store, const ParseTree& tree, const Formula& phi,
                 CharTreeOptions options) -> ModelCheckResult
{
    if (!is_sentence(phi))
        throw Error("model_check needs a sentence");
    if (max_label_index(phi) > tree.label_width())
        throw WidthMismatch("formula uses label " + std::to_string(max_label_index(phi)) +
                            " but the parse tree has width " +
                            std::to_string(tree.label_width()));
    ModelCheckResult r;
    r.q = quantifier_rank(phi);
    r.root = char_tree_from_parse_tree(store, tree, r.q, options);
    r.value = game_on_tree(store, r.root, to_nnf(phi), {}, {}, &r.game);
    r.distinct_nodes = reachable_nodes(store, r.root).size();
    r.interned_nodes = store.node_count();
    return r;
}

auto model_check(const ParseTree& tree, const Formula& phi) -> bool
{
    CharTreeStore store;
    return model_check(store, tree, phi).value;
}

} // namespace rwmso
