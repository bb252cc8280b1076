#include "rwmso/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "rwmso/error.hpp"
#include "rwmso/games.hpp"

namespace rwmso {

auto run_bench(const BenchConfig& config) -> std::vector<BenchRow>
{
    if (config.repeats == 0)
        throw Error("bench needs at least one repeat");
    const std::size_t q = config.formula ? quantifier_rank(*config.formula) : config.q;
    CharTreeStore shared;
    std::vector<BenchRow> rows;
    for (auto n : config.sizes) {
        auto tree = family_tree(config.family, n);
        if (config.t > tree.label_width())
            tree = widen(tree, config.t);

        BenchRow row;
        row.n = n;
        row.parse_nodes = tree.size();
        std::vector<double> times;
        for (std::size_t r = 0; r < config.repeats; ++r) {
            CharTreeStore store;
            const auto start = std::chrono::steady_clock::now();
            if (config.formula) {
                auto result = model_check(store, tree, *config.formula, config.char_tree);
                row.answer = result.value;
            } else {
                char_tree_from_parse_tree(store, tree, q, config.char_tree);
            }
            const auto stop = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double>(stop - start).count());
            row.interned_nodes = store.node_count();
        }
        std::sort(times.begin(), times.end());
        row.seconds = times[times.size() / 2];

        row.root = char_tree_from_parse_tree(shared, tree, q, config.char_tree);
        row.distinct_nodes = reachable_nodes(shared, row.root).size();
        rows.push_back(row);
    }
    return rows;
}

auto fit_linear(const std::vector<double>& x, const std::vector<double>& y) -> LinearFit
{
    if (x.size() != y.size() || x.size() < 2)
        throw Error("fit_linear needs at least two paired samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit fit;
    if (sxx == 0)
        return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.correlation = syy == 0 ? 0 : sxy / std::sqrt(sxx * syy);
    return fit;
}

auto bench_csv(const std::vector<BenchRow>& rows) -> std::string
{
    std::ostringstream out;
    out << "n,parse_nodes,distinct_nodes,root,interned_nodes,seconds";
    const bool answers = std::any_of(rows.begin(), rows.end(), [](auto& r) { return r.answer; });
    if (answers)
        out << ",answer";
    out << '\n';
    for (const auto& r : rows) {
        out << r.n << ',' << r.parse_nodes << ',' << r.distinct_nodes << ',' << r.root << ','
            << r.interned_nodes << ',' << r.seconds;
        if (answers)
            out << ',' << (r.answer ? (*r.answer ? "true" : "false") : "");
        out << '\n';
    }
    return out.str();
}

} // namespace rwmso
