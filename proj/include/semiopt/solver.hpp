#pragma once

#include <cstdint>
#include <span>

#include "semiopt/prooftree.hpp"

namespace semiopt {

/// Search-size bounds derived from a formula with n variables and size m.
/// The optimum is a member of the Farey sequence of order 2^n_log2, and two
/// distinct members of that sequence differ by at least 2^-gap_log2.
struct FareyBound {
    long n_log2 = 0;   // bits of the Farey order
    long gap_log2 = 0; // = 2 * n_log2

    BigInt order() const;     // 2^n_log2
    BigRational gap() const;  // 2^-gap_log2

    /// Order ceil(n*m*log2 m): the bound that comes out of the per-variable
    /// exponent analysis.
    static FareyBound paper(const Formula& f);

    /// Order ceil(m*log2 m): the denominator of any tree optimum divides
    /// prod_i (a_i+b_i)^(a_i+b_i) and sum_i (a_i+b_i) <= m, so m^m already
    /// bounds it.  Strictly tighter than paper() for n > 1; the solver uses
    /// this one.
    static FareyBound effective(const Formula& f);
};

struct SolveStats {
    std::uint64_t oracle_queries = 0;        // all threshold queries answered
    std::uint64_t binary_search_queries = 0; // queries made by the bisection loop
    std::uint64_t trees_enumerated = 0;
    std::uint64_t nodes_expanded = 0;
};

struct SolveOptions {
    enum class Strategy { automatic, exhaustive, branch_and_bound };

    Strategy strategy = Strategy::automatic;
    /// automatic picks exhaustive enumeration when the proof-tree count fits
    /// under this cap and branch-and-bound otherwise.
    std::uint64_t tree_cap = std::uint64_t{1} << 20;
    /// Hard limit on branch-and-bound node expansions; exceeding it raises
    /// ResourceError rather than returning anything approximate.
    std::uint64_t node_budget = std::uint64_t{1} << 28;
};

/// Decides "does some proof tree of the formula reach value >= v" exactly.
/// Monotone in v by construction.
class ThresholdOracle {
public:
    explicit ThresholdOracle(const Formula& f, SolveOptions options = {});

    /// Exact answer to tree_opt_val(T) >= v for some proof tree T.
    /// Requires 0 <= v <= 1.
    bool query(const BigRational& v);

    /// Same question restricted to proof trees whose canonical encoding
    /// starts with the given prefix.
    bool query_with_prefix(const BigRational& v, std::span<const int> prefix);

    SolveOptions::Strategy effective_strategy() const { return strategy_; }
    const SolveStats& stats() const { return stats_; }
    SolveStats& stats() { return stats_; }

private:
    bool exhaustive_query(const BigRational& v);
    bool branch_and_bound_query(const BigRational& v, std::span<const int> prefix);

    const Formula* formula_;
    SolveOptions options_;
    SolveOptions::Strategy strategy_;
    SolveStats stats_;
};

/// The unique fraction with denominator <= max_den inside [lo, hi], located
/// by Stern-Brocot mediant descent (continued-fraction accelerated).  The
/// caller guarantees at most one such fraction exists; an interval holding
/// none raises ArgumentError ("empty interval").  The integer endpoints 0 and
/// 1 count as denominator-1 fractions.
BigRational farey_recover(const BigRational& lo, const BigRational& hi, const BigInt& max_den);

/// Exact optimum of the formula's value over all Viterbi interpretations:
/// bisection on exact rational midpoints against a threshold oracle, then
/// Farey recovery on the final sub-gap interval.  Satisfiable formulas short
/// circuit to 1 via the v = 1 query.
BigRational opt_conf_val(const Formula& f, const SolveOptions& options = {},
                         SolveStats* stats = nullptr);

struct OptConfResult {
    Interpretation interpretation;
    BigRational value;
    ProofTree tree;
};

/// Optimum value plus a witness: the lexicographically smallest optimal proof
/// tree (found by prefix search over canonical encodings) and its maximizing
/// interpretation, extended with 1/2 on unconstrained variables.
OptConfResult opt_conf(const Formula& f, const SolveOptions& options = {},
                       SolveStats* stats = nullptr);

} // namespace semiopt
