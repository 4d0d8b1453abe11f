#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semiopt/semiring.hpp"

namespace semiopt {

/// CNF formula over variables 1..n.  Clauses are kept non-empty,
/// non-tautological, deduplicated, and sorted in the canonical literal order
/// x1 < ~x1 < x2 < ~x2 < ...  Literals use the DIMACS signed convention.
class CnfFormula {
public:
    static CnfFormula from_clauses(int var_count, std::vector<std::vector<int>> clauses);

    int var_count() const { return var_count_; }
    int clause_count() const { return static_cast<int>(clauses_.size()); }
    const std::vector<std::vector<int>>& clauses() const { return clauses_; }
    const std::vector<int>& clause(int i) const { return clauses_[i]; }

    /// Total number of literal occurrences, i.e. the size of the formula tree
    /// this CNF expands to.
    int literal_count() const;

private:
    int var_count_ = 0;
    std::vector<std::vector<int>> clauses_;
};

/// Canonical order x1 < ~x1 < x2 < ~x2 < ... used for tie-breaking.
int literal_order_key(int lit);

enum class NodeKind : unsigned char { and_node, or_node, pos_lit, neg_lit, const_true, const_false };

struct FormulaNode {
    NodeKind kind;
    int var = 0;               // pos_lit / neg_lit only
    std::vector<int> children; // and_node / or_node only
};

/// Formula tree in negation normal form: negation appears only on leaves,
/// every leaf is a literal or a constant, every internal node is AND/OR with
/// at least one child.  Nodes are stored in pre-order; node 0 is the root.
class Formula {
public:
    const FormulaNode& node(int id) const { return nodes_[id]; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int root() const { return 0; }

    int var_count() const { return var_count_; }

    /// Size m: total number of literal occurrences.
    int literal_count() const { return literal_count_; }

    /// Clause count of the originating CNF, when this tree came from one.
    std::optional<int> clause_count() const { return clause_count_; }

    /// Ids of OR nodes in pre-order.
    const std::vector<int>& or_nodes() const { return or_nodes_; }

    /// Assembles a tree from pre-order nodes.  Validates all NNF invariants.
    static Formula from_nodes(std::vector<FormulaNode> nodes, std::optional<int> clause_count = {},
                              std::optional<int> declared_var_count = {});

private:
    std::vector<FormulaNode> nodes_;
    int var_count_ = 0;
    int literal_count_ = 0;
    std::optional<int> clause_count_;
    std::vector<int> or_nodes_;
};

/// Parses standard DIMACS CNF ("p cnf n m", clauses terminated by 0,
/// comment lines starting with 'c').  Duplicate literals inside a clause are
/// dropped; empty or tautological clauses, indices above n, and count
/// mismatches are parse errors naming the offending line.
CnfFormula parse_dimacs(std::string_view text);

/// Parses the NNF s-expression format: (and ...), (or ...), (var I),
/// (not I), true, false.  Whitespace-insensitive.  Negation of a non-leaf is
/// a parse error by construction of the grammar.
Formula parse_nnf(std::string_view text);

/// AND-of-ORs tree for a CNF; the clause count is preserved separately from
/// the literal-occurrence size.
Formula cnf_to_formula(const CnfFormula& cnf);

/// Renders back to the s-expression format; parse_nnf(render_nnf(f)) is
/// structurally identical to f.
std::string render_nnf(const Formula& f);

std::string render_dimacs(const CnfFormula& cnf);

/// Recovers a CNF view from an AND-of-ORs-of-literals tree, if it has that
/// shape (used to route CNF-shaped trees to clause-based algorithms).
std::optional<CnfFormula> cnf_view(const Formula& f);

/// Bottom-up evaluation: + at OR nodes, * at AND nodes, negation on leaves.
/// Exact in every carrier.  The interpretation must be total on the formula's
/// variables and lie inside the spec's carrier.
SemiringValue eval_sem(const Formula& f, const Interpretation& pi, const SemiringSpec& spec);

} // namespace semiopt
