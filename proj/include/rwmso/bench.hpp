#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rwmso/chartree.hpp"
#include "rwmso/formula.hpp"
#include "rwmso/parse_tree.hpp"

namespace rwmso {

struct BenchConfig {
    Family family = Family::Path;
    std::vector<std::size_t> sizes;
    std::size_t q = 2;
    int t = 0; // 0 keeps the family's own width, larger values widen the tree
    std::optional<Formula> formula; // if set, q = qr(formula) and the game is timed too
    std::size_t repeats = 5;
    CharTreeOptions char_tree;
};

struct BenchRow {
    std::size_t n = 0;
    std::size_t parse_nodes = 0;
    std::size_t distinct_nodes = 0; // reachable from rc_q's root
    NodeId root = 0;                // id in one store shared by the whole sweep
    std::size_t interned_nodes = 0; // in the fresh store used for timing
    double seconds = 0;             // median over the repeats
    std::optional<bool> answer;
};

auto run_bench(const BenchConfig& config) -> std::vector<BenchRow>;

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double correlation = 0;
};

// Least squares y = slope x + intercept with Pearson correlation.
auto fit_linear(const std::vector<double>& x, const std::vector<double>& y) -> LinearFit;

// Header plus one line per row.
auto bench_csv(const std::vector<BenchRow>& rows) -> std::string;

} // namespace rwmso
