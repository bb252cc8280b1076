#include "rwmso/linemso.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "rwmso/error.hpp"
#include "rwmso/games.hpp"

namespace rwmso {

namespace {

using ClassMap = std::vector<WeightedClass>;

auto better(const BigNat& candidate, const BigNat& incumbent, Direction dir) -> bool
{
    return dir == Direction::Max ? candidate > incumbent : candidate < incumbent;
}

auto set_quantifier_count(const Formula& f) -> std::size_t
{
    if (!f)
        return 0;
    std::size_t n = f.is_set_quantifier() ? 1 : 0;
    if (f.kind() == FormulaKind::Not || f.is_quantifier())
        return n + set_quantifier_count(f.left());
    if (f.kind() == FormulaKind::And || f.kind() == FormulaKind::Or)
        return n + set_quantifier_count(f.left()) + set_quantifier_count(f.right());
    return n;
}

} // namespace

auto linemso_variables(const LinEMSOProblem& problem) -> std::vector<std::string>
{
    if (!problem.phi)
        throw Error("LinEMSO problem without a formula");
    const auto free = free_variables(problem.phi);
    if (!free.objects.empty())
        throw Error("LinEMSO formula has free object variable " + free.objects.front());
    auto names = problem.set_variables.empty() ? free.sets : problem.set_variables;
    for (const auto& x : free.sets)
        if (std::find(names.begin(), names.end(), x) == names.end())
            throw Error("free set variable " + x + " is not among the optimised sets");
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                throw Error("set variable " + names[i] + " listed twice");
    if (problem.weights.size() != names.size())
        throw Error("LinEMSO problem has " + std::to_string(names.size()) + " set variables but " +
                    std::to_string(problem.weights.size()) + " weights");
    if (has_set_equality(problem.phi))
        throw Error("set equality atoms are not supported by the tree game");
    return names;
}

auto objective_value(const LinEMSOProblem& problem, const std::vector<ElementSet>& sets) -> BigNat
{
    BigNat v = 0;
    for (std::size_t i = 0; i < sets.size() && i < problem.weights.size(); ++i)
        v += BigNat(problem.weights[i]) * sets[i].count();
    return v;
}

auto witness_valid(const Structure& g, const LinEMSOProblem& problem,
                   const std::vector<ElementSet>& sets, const BigNat& value) -> bool
{
    const auto names = linemso_variables(problem);
    if (sets.size() != names.size())
        return false;
    Assignment alpha;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (sets[i].size() != g.size())
            return false;
        alpha.bind_set(names[i], sets[i]);
    }
    return objective_value(problem, sets) == value && evaluate(g, problem.phi, alpha);
}

auto solve_linemso(CharTreeStore& store, const ParseTree& tree, const LinEMSOProblem& problem,
                   LinEMSOOptions options) -> LinEMSOResult
{
    const auto names = linemso_variables(problem);
    if (max_label_index(problem.phi) > tree.label_width())
        throw WidthMismatch("formula uses label " + std::to_string(max_label_index(problem.phi)) +
                            " but the parse tree has width " +
                            std::to_string(tree.label_width()));
    const std::size_t l = names.size();
    if (l >= 16)
        throw ScaleGuardError("LinEMSO with " + std::to_string(l) + " set variables");

    LinEMSOResult result;
    result.q = quantifier_rank(problem.phi) + l;
    const std::size_t q = result.q;
    const int t = tree.label_width();

    // classes of a single vertex: one per choice of memberships
    struct LeafChoice {
        NodeId tree;
        BigNat value;
        std::vector<bool> member;
    };
    std::vector<LeafChoice> leaf_choices;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << l); ++mask) {
        LeafChoice c;
        c.value = 0;
        for (std::size_t i = 0; i < l; ++i) {
            c.member.push_back((mask >> i) & 1);
            if (c.member.back())
                c.value += problem.weights[i];
        }
        c.tree = leaf_char_tree_with_sets(store, q, t, c.member);
        leaf_choices.push_back(std::move(c));
    }

    std::vector<std::optional<ClassMap>> maps(tree.size());
    Element next_vertex = 0;
    for (ParseTree::Index i = 0; i < tree.size(); ++i) {
        const auto& node = tree.node(i);
        ClassMap out;
        std::unordered_map<NodeId, std::size_t> where;
        auto offer = [&](NodeId id, BigNat value, auto&& make_witness) {
            auto [it, inserted] = where.try_emplace(id, out.size());
            if (inserted)
                out.push_back({id, std::move(value), make_witness()});
            else if (better(value, out[it->second].value, problem.direction)) {
                out[it->second].value = std::move(value);
                out[it->second].witness = make_witness();
            }
        };
        if (node.is_leaf()) {
            const Element v = next_vertex++;
            for (const auto& c : leaf_choices)
                offer(c.tree, c.value, [&] {
                    std::vector<ElementVector> w(l);
                    for (std::size_t s = 0; s < l; ++s)
                        if (c.member[s])
                            w[s].push_back(v);
                    return w;
                });
        } else {
            if (!options.char_tree.share_cross_product_memo)
                store.clear_cross_product_memo();
            const ClassMap left = std::move(*maps[node.left]);
            const ClassMap right = std::move(*maps[node.right]);
            maps[node.left].reset();
            maps[node.right].reset();
            for (const auto& a : left)
                for (const auto& b : right) {
                    const auto id = tree_cross_product(store, a.tree, b.tree, q, node.op);
                    // left-subtree vertices have the smaller ids, so concatenation stays sorted
                    offer(id, a.value + b.value, [&] {
                        std::vector<ElementVector> w(l);
                        for (std::size_t s = 0; s < l; ++s) {
                            w[s] = a.witness[s];
                            w[s].insert(w[s].end(), b.witness[s].begin(), b.witness[s].end());
                        }
                        return w;
                    });
                }
        }
        result.max_classes = std::max(result.max_classes, out.size());
        maps[i] = std::move(out);
    }

    const auto& root = *maps[tree.root()];
    result.root_classes = root.size();
    const auto nnf = to_nnf(problem.phi);
    const WeightedClass* best = nullptr;
    for (const auto& c : root) {
        if (best && !better(c.value, best->value, problem.direction))
            continue;
        if (game_on_tree(store, c.tree, nnf, {}, names))
            best = &c;
    }
    if (!best)
        return result;

    const std::size_t n = next_vertex;
    result.feasible = true;
    result.value = best->value;
    for (const auto& w : best->witness) {
        ElementSet s(n);
        for (auto v : w)
            s.set(v);
        result.witness.push_back(std::move(s));
    }
    if (objective_value(problem, result.witness) != result.value)
        throw Error("LinEMSO witness does not reproduce its value");
    if (options.verify) {
        const auto g = generate_graph(tree);
        const bool small = n <= 16 || (set_quantifier_count(problem.phi) == 0 && n <= 256);
        if (small && !witness_valid(g, problem, result.witness, result.value))
            throw Error("LinEMSO witness fails the formula");
    }
    return result;
}

auto solve_linemso(const ParseTree& tree, const LinEMSOProblem& problem, LinEMSOOptions options)
    -> LinEMSOResult
{
    CharTreeStore store;
    return solve_linemso(store, tree, problem, options);
}

} // namespace rwmso
