#pragma once

#include <cstdint>
#include <vector>

#include "semiopt/formula.hpp"

namespace semiopt {

/// Maximum number of simultaneously satisfiable clauses plus a witnessing
/// assignment (lexicographically smallest among the winners, with false < true
/// and x1 most significant).
struct MaxSatResult {
    int best_count = 0;
    std::vector<bool> assignment;
};

/// Exact MaxSAT by full enumeration of all 2^n assignments.  Raises
/// ResourceError when 2^n exceeds max_assignments.
MaxSatResult maxsat_exhaustive(const CnfFormula& cnf,
                               std::uint64_t max_assignments = std::uint64_t{1} << 24);

/// Number of clauses the assignment satisfies.
int satisfied_clause_count(const CnfFormula& cnf, const std::vector<bool>& assignment);

/// 1/4^(m-r): the ceiling the optimum confidence of an m-clause CNF with
/// MaxSAT value r can never exceed.
BigRational conf_upper_bound(int m, int r);

/// The relaxed instance over n+m variables: (C_i v y_i) for every source
/// clause plus the unit clauses (~y_i), with y_i numbered y_offset + i.
/// Its optimum confidence is exactly 1/4^(m-r).
struct ReducedInstance {
    CnfFormula phi_prime;
    int y_offset = 0;
    int source_m = 0;
};

ReducedInstance reduce_to_optconf(const CnfFormula& cnf);

/// Recovers r = m - log4(1/v) by exact integer power matching.  Raises
/// ArgumentError unless v is exactly 4^-d for some 0 <= d <= m.
int maxsatval_from_confval(const BigRational& v, int m);

/// Reads a MaxSAT assignment for the source formula off an optimal
/// interpretation of the reduced instance: x_i false iff pi(x_i) = 0.
std::vector<bool> extract_maxsat_assignment(const Interpretation& pi, const ReducedInstance& inst);

/// The literal of the clause attaining the maximum value under pi, smallest
/// first in the canonical order x1 < ~x1 < x2 < ... on ties.
int maximizing_literal(const std::vector<int>& clause, const Interpretation& pi);

} // namespace semiopt
