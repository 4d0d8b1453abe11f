#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "semiopt/formula.hpp"

namespace testsupport {

/// SplitMix64: deterministic across platforms, unlike the standard library's
/// distributions.  Fixed seeds keep every suite reproducible.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }
};

/// Random CNF with clauses over distinct variables (never tautological).
inline semiopt::CnfFormula random_cnf(SplitMix64& rng, int n, int m, int max_arity) {
    std::vector<std::vector<int>> clauses;
    std::vector<int> vars(n);
    std::iota(vars.begin(), vars.end(), 1);
    for (int i = 0; i < m; ++i) {
        const int arity = rng.range(1, std::min(max_arity, n));
        for (int j = 0; j < arity; ++j)
            std::swap(vars[j], vars[rng.range(j, n - 1)]);
        std::vector<int> clause;
        for (int j = 0; j < arity; ++j) clause.push_back(rng.chance(0.5) ? vars[j] : -vars[j]);
        clauses.push_back(std::move(clause));
    }
    return semiopt::CnfFormula::from_clauses(n, std::move(clauses));
}

/// Random CNF where every clause has exactly k distinct variables.
inline semiopt::CnfFormula random_kcnf(SplitMix64& rng, int n, int m, int k) {
    std::vector<std::vector<int>> clauses;
    std::vector<int> vars(n);
    std::iota(vars.begin(), vars.end(), 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < k; ++j)
            std::swap(vars[j], vars[rng.range(j, n - 1)]);
        std::vector<int> clause;
        for (int j = 0; j < k; ++j) clause.push_back(rng.chance(0.5) ? vars[j] : -vars[j]);
        clauses.push_back(std::move(clause));
    }
    return semiopt::CnfFormula::from_clauses(n, std::move(clauses));
}

namespace detail {

inline void random_nnf_node(SplitMix64& rng, std::vector<semiopt::FormulaNode>& nodes, int max_vars,
                            int leaf_budget, int& or_budget, int depth, bool allow_constants) {
    using semiopt::FormulaNode;
    using semiopt::NodeKind;
    const bool leaf = leaf_budget <= 1 || depth >= 4 || rng.chance(0.35);
    if (leaf) {
        if (allow_constants && rng.chance(0.05)) {
            nodes.push_back({rng.chance(0.5) ? NodeKind::const_true : NodeKind::const_false, 0, {}});
        } else {
            nodes.push_back({rng.chance(0.5) ? NodeKind::pos_lit : NodeKind::neg_lit,
                             rng.range(1, max_vars),
                             {}});
        }
        return;
    }
    const bool use_or = or_budget > 0 && rng.chance(0.45);
    if (use_or) --or_budget;
    const int self = static_cast<int>(nodes.size());
    nodes.push_back({use_or ? NodeKind::or_node : NodeKind::and_node, 0, {}});
    const int child_count = rng.range(use_or ? 2 : 1, std::min(3, leaf_budget));
    // Split the leaf budget into child_count parts, each at least 1.
    std::vector<int> parts(child_count, 1);
    for (int extra = leaf_budget - child_count; extra > 0; --extra)
        ++parts[static_cast<size_t>(rng.below(static_cast<std::uint64_t>(child_count)))];
    for (int part : parts) {
        nodes[self].children.push_back(static_cast<int>(nodes.size()));
        random_nnf_node(rng, nodes, max_vars, part, or_budget, depth + 1, allow_constants);
    }
}

} // namespace detail

/// Random NNF tree with at most max_literals literal occurrences, variables
/// drawn from 1..max_vars and at most max_ors OR nodes.
inline semiopt::Formula random_nnf(SplitMix64& rng, int max_vars, int max_literals, int max_ors,
                                   bool allow_constants = false) {
    std::vector<semiopt::FormulaNode> nodes;
    int or_budget = max_ors;
    detail::random_nnf_node(rng, nodes, max_vars, std::max(1, max_literals), or_budget, 0,
                            allow_constants);
    return semiopt::Formula::from_nodes(std::move(nodes));
}

/// Random Viterbi interpretation with denominators up to max_den.
inline semiopt::Interpretation random_viterbi(SplitMix64& rng, int n, int max_den = 16) {
    std::vector<semiopt::BigRational> values;
    for (int i = 0; i < n; ++i) {
        const int den = rng.range(1, max_den);
        values.emplace_back(rng.range(0, den), den);
    }
    return semiopt::Interpretation::viterbi(std::move(values));
}

} // namespace testsupport
