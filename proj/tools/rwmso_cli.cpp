// rwmso: MSO model checking and LinEMSO optimisation over parse trees.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rwmso/bench.hpp"
#include "rwmso/chartree.hpp"
#include "rwmso/error.hpp"
#include "rwmso/games.hpp"
#include "rwmso/linemso.hpp"
#include "rwmso/rankdec.hpp"

using namespace rwmso;
using json = nlohmann::json;

namespace {

constexpr const char* kSchema = "rwmso-report/1";

enum Exit { kTrue = 0, kFalse = 1, kError = 2 };

auto read_file(const std::string& path) -> std::string
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// inline text, or the contents of the file it names
auto formula_text(const std::string& arg) -> std::string
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec))
        return read_file(arg);
    return arg;
}

auto max_q() -> std::size_t
{
    if (const char* env = std::getenv("RWMSO_MAX_Q")) {
        try {
            return std::stoul(env);
        } catch (const std::exception&) {
            throw Error(std::string("RWMSO_MAX_Q is not a number: ") + env);
        }
    }
    return 4;
}

void guard_q(std::size_t q, bool force)
{
    const auto cap = max_q();
    if (q <= cap)
        return;
    if (!force)
        throw ScaleGuardError("q = " + std::to_string(q) + " exceeds RWMSO_MAX_Q = " +
                              std::to_string(cap) + " (use --force to override)");
    std::cerr << "warning: q = " << q << " exceeds RWMSO_MAX_Q = " << cap << ", continuing\n";
}

auto count_set_quantifiers(const Formula& f) -> std::size_t
{
    if (!f || f.is_atomic())
        return 0;
    if (f.is_quantifier())
        return (f.is_set_quantifier() ? 1 : 0) + count_set_quantifiers(f.body());
    if (f.kind() == FormulaKind::Not)
        return count_set_quantifiers(f.left());
    return count_set_quantifiers(f.left()) + count_set_quantifiers(f.right());
}

auto elapsed(std::chrono::steady_clock::time_point start) -> double
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

auto report(const std::string& command) -> json
{
    return json{{"schema", kSchema}, {"command", command}};
}

auto set_json(const ElementSet& s) -> json
{
    json a = json::array();
    for (auto v = s.find_first(); v != ElementSet::npos; v = s.find_next(v))
        a.push_back(v);
    return a;
}

struct Options {
    std::string parse_tree, graph, formula, family, output, n_list, weights;
    std::size_t n = 0, q = 2, repeats = 5;
    int t = 0;
    bool json = false, force = false, minimise = false, dump = false, as_graph = false;
};

auto cmd_check(const Options& o) -> int
{
    const auto start = std::chrono::steady_clock::now();
    auto tree = parse_tree_from_text(read_file(o.parse_tree));
    auto phi = parse_formula(formula_text(o.formula), tree.label_width());
    guard_q(quantifier_rank(phi), o.force);
    CharTreeStore store;
    auto r = model_check(store, tree, phi);
    if (o.json) {
        auto j = report("check");
        j["answer"] = r.value;
        j["q"] = r.q;
        j["charTreeNodes"] = r.distinct_nodes;
        j["parseTreeNodes"] = tree.size();
        j["peakInterned"] = r.interned_nodes;
        j["gameVisits"] = r.game.visits;
        j["wallTime"] = elapsed(start);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << (r.value ? "true" : "false") << '\n';
    }
    return r.value ? kTrue : kFalse;
}

auto cmd_oracle(const Options& o) -> int
{
    const auto start = std::chrono::steady_clock::now();
    auto g = read_graph(read_file(o.graph));
    auto phi = parse_formula(formula_text(o.formula), g.label_width());
    if (!is_sentence(phi))
        throw Error("oracle needs a sentence");
    const auto sets = count_set_quantifiers(phi);
    if (g.size() > 12 || sets > 2) {
        const auto msg = "oracle guard: " + std::to_string(g.size()) + " vertices, " +
                         std::to_string(sets) + " set quantifiers (limits 12 and 2)";
        if (!o.force)
            throw ScaleGuardError(msg + "; use --force to override");
        std::cerr << "warning: " << msg << ", continuing\n";
    }
    const bool value = evaluate(g, phi);
    if (o.json) {
        auto j = report("oracle");
        j["answer"] = value;
        j["vertices"] = g.size();
        j["wallTime"] = elapsed(start);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << (value ? "true" : "false") << '\n';
    }
    return value ? kTrue : kFalse;
}

auto parse_weights(const std::string& text, std::size_t count) -> std::vector<std::int64_t>
{
    std::vector<std::int64_t> w;
    if (text.empty())
        return std::vector<std::int64_t>(count, 1);
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        w.push_back(std::stoll(item));
    return w;
}

auto cmd_optimize(const Options& o) -> int
{
    const auto start = std::chrono::steady_clock::now();
    auto tree = parse_tree_from_text(read_file(o.parse_tree));
    LinEMSOProblem p;
    p.phi = parse_formula(formula_text(o.formula), tree.label_width());
    p.direction = o.minimise ? Direction::Min : Direction::Max;
    const auto names = free_variables(p.phi).sets;
    p.weights = parse_weights(o.weights, names.size());
    linemso_variables(p);
    guard_q(quantifier_rank(p.phi) + names.size(), o.force);
    CharTreeStore store;
    auto r = solve_linemso(store, tree, p);
    if (o.json) {
        auto j = report("optimize");
        j["feasible"] = r.feasible;
        j["answer"] = r.feasible ? json(r.value.str()) : json(nullptr);
        json w = json::object();
        for (std::size_t i = 0; i < r.witness.size(); ++i)
            w[names[i]] = set_json(r.witness[i]);
        j["witness"] = w;
        j["q"] = r.q;
        j["maxClasses"] = r.max_classes;
        j["parseTreeNodes"] = tree.size();
        j["peakInterned"] = store.node_count();
        j["wallTime"] = elapsed(start);
        std::cout << j.dump(2) << '\n';
    } else if (!r.feasible) {
        std::cout << "infeasible\n";
    } else {
        std::cout << r.value.str() << '\n';
        for (std::size_t i = 0; i < r.witness.size(); ++i) {
            std::cout << names[i] << " =";
            for (auto v = r.witness[i].find_first(); v != ElementSet::npos; v = r.witness[i].find_next(v))
                std::cout << ' ' << v;
            std::cout << '\n';
        }
    }
    return r.feasible ? kTrue : kFalse;
}

auto cmd_rankwidth(const Options& o) -> int
{
    auto g = read_graph(read_file(o.graph));
    auto r = exact_rankwidth(g);
    if (o.json) {
        auto j = report("rankwidth");
        j["answer"] = r.width;
        j["vertices"] = g.size();
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << r.width << '\n';
    }
    return kTrue;
}

auto cmd_chartree(const Options& o) -> int
{
    const auto start = std::chrono::steady_clock::now();
    auto tree = parse_tree_from_text(read_file(o.parse_tree));
    guard_q(o.q, o.force);
    CharTreeStore store;
    auto root = char_tree_from_parse_tree(store, tree, o.q);
    const auto distinct = reachable_nodes(store, root).size();
    if (o.json) {
        auto j = report("chartree");
        j["q"] = o.q;
        j["root"] = root;
        j["charTreeNodes"] = distinct;
        j["treeSize"] = tree_size(store, root).str();
        j["parseTreeNodes"] = tree.size();
        j["peakInterned"] = store.node_count();
        j["wallTime"] = elapsed(start);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "q " << o.q << " root " << root << " distinct " << distinct << " tree-size "
                  << tree_size(store, root) << " interned " << store.node_count() << '\n';
    }
    if (o.dump)
        std::cout << dump_char_tree(store, root);
    return kTrue;
}

auto cmd_gen(const Options& o) -> int
{
    if (o.parse_tree.empty() && (o.family.empty() || o.n == 0))
        throw Error("gen needs --family and --n, or --parse-tree");
    auto tree = o.parse_tree.empty() ? family_tree(family_from_string(o.family), o.n)
                                     : parse_tree_from_text(read_file(o.parse_tree));
    if (o.t > tree.label_width())
        tree = widen(tree, o.t);
    const auto text = o.as_graph ? write_graph(generate_graph(tree)) : parse_tree_to_text(tree);
    if (o.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.output);
        if (!(out << text))
            throw Error("cannot write " + o.output);
    }
    return kTrue;
}

auto cmd_qrank(const Options& o) -> int
{
    auto phi = parse_formula(formula_text(o.formula), o.t > 0 ? o.t : 32);
    std::cout << quantifier_rank(phi) << '\n';
    return kTrue;
}

auto cmd_bench(const Options& o) -> int
{
    BenchConfig config;
    config.family = family_from_string(o.family);
    config.q = o.q;
    config.t = o.t;
    config.repeats = o.repeats;
    std::stringstream in(o.n_list);
    std::string item;
    while (std::getline(in, item, ','))
        config.sizes.push_back(std::stoul(item));
    if (config.sizes.empty())
        throw Error("bench needs --n-list");
    if (!o.formula.empty()) {
        const int width = std::max(o.t, family_tree(config.family, config.sizes.front()).label_width());
        config.formula = parse_formula(formula_text(o.formula), width);
    }
    guard_q(config.formula ? quantifier_rank(*config.formula) : config.q, o.force);
    auto rows = run_bench(config);
    std::cout << bench_csv(rows);
    if (rows.size() >= 2) {
        std::vector<double> x, y;
        for (const auto& r : rows) {
            x.push_back(static_cast<double>(r.parse_nodes));
            y.push_back(r.seconds);
        }
        auto fit = fit_linear(x, y);
        std::cout << "# fit seconds = " << fit.slope << " * parse_nodes + " << fit.intercept
                  << ", r = " << fit.correlation << '\n';
    }
    return kTrue;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"MSO model checking and LinEMSO on parse trees of bounded rankwidth"};
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "decide G |= phi from a parse tree (exit 0 true, 1 false)");
    check->add_option("--parse-tree", o.parse_tree, "parse-tree file")->required();
    check->add_option("--formula", o.formula, "sentence, inline or a file")->required();

    auto* oracle = app.add_subcommand("oracle", "brute-force evaluation on a graph file");
    oracle->add_option("--graph", o.graph, "graph file")->required();
    oracle->add_option("--formula", o.formula, "sentence, inline or a file")->required();

    auto* optimize = app.add_subcommand("optimize", "optimise sum a_i |X_i| subject to phi");
    optimize->add_option("--parse-tree", o.parse_tree, "parse-tree file")->required();
    optimize->add_option("--formula", o.formula, "formula with free set variables")->required();
    optimize->add_option("--weights", o.weights, "comma-separated weights, one per free set (default 1)");
    optimize->add_flag("--min", o.minimise, "minimise instead of maximise");

    auto* rankwidth = app.add_subcommand("rankwidth", "exact rankwidth of a small graph");
    rankwidth->add_option("--graph", o.graph, "graph file")->required();

    auto* chartree = app.add_subcommand("chartree", "build rc_q from a parse tree");
    chartree->add_option("--parse-tree", o.parse_tree, "parse-tree file")->required();
    chartree->add_option("--q", o.q, "depth");
    chartree->add_flag("--dump", o.dump, "print every distinct node");

    auto* gen = app.add_subcommand("gen", "write the parse tree of a family graph");
    gen->add_option("--family", o.family, "path, cycle, complete, star, cograph-union, cograph-join");
    gen->add_option("--n", o.n, "number of vertices");
    gen->add_option("--parse-tree", o.parse_tree, "convert this parse-tree file instead of a family");
    gen->add_option("--t", o.t, "widen to this label width");
    gen->add_option("-o,--output", o.output, "output file (default stdout)");
    gen->add_flag("--graph", o.as_graph, "write the generated graph instead of the tree");

    auto* qrank = app.add_subcommand("qrank", "quantifier rank of a formula");
    qrank->add_option("formula", o.formula, "formula, inline or a file")->required();
    qrank->add_option("--t", o.t, "label width for label atoms");

    auto* bench = app.add_subcommand("bench", "time rc_q construction over a size sweep (CSV)");
    bench->add_option("--family", o.family, "graph family")->required();
    bench->add_option("--n-list", o.n_list, "comma-separated sizes")->required();
    bench->add_option("--q", o.q, "depth (ignored with --formula)");
    bench->add_option("--t", o.t, "label width");
    bench->add_option("--formula", o.formula, "also model-check this sentence");
    bench->add_option("--repeats", o.repeats, "timing repeats per size (median reported)");

    for (auto* sub : {check, oracle, optimize, rankwidth, chartree, bench}) {
        sub->add_flag("--json", o.json, "JSON report");
        sub->add_flag("--force", o.force, "override scale guards");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    try {
        if (*check)
            return cmd_check(o);
        if (*oracle)
            return cmd_oracle(o);
        if (*optimize)
            return cmd_optimize(o);
        if (*rankwidth)
            return cmd_rankwidth(o);
        if (*chartree)
            return cmd_chartree(o);
        if (*gen)
            return cmd_gen(o);
        if (*qrank)
            return cmd_qrank(o);
        if (*bench)
            return cmd_bench(o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " (at offset " << e.offset() << ")\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
