#pragma once

#include <optional>
#include <span>
#include <vector>

#include "semiopt/formula.hpp"

namespace semiopt {

/// Number of distinct literals per clause.
std::vector<int> clause_arities(const CnfFormula& cnf);

/// k when every clause has exactly k distinct literals, nullopt otherwise.
std::optional<int> uniform_arity(const CnfFormula& cnf);

/// Interpretation seeded from a boolean assignment satisfying r of m clauses:
/// pi(x_i) = 1-eps on true variables and eps on false ones with
/// eps = (m-r)/m, which guarantees Conf >= (r/m)^r ((m-r)/m)^(m-r).
/// Assignments satisfying no clause are rejected (eps would degenerate to 1).
struct SeededInterpretation {
    Interpretation interpretation;
    BigRational guarantee;
};

SeededInterpretation interp_from_assignment(const CnfFormula& cnf,
                                            const std::vector<bool>& assignment);

/// The random-interpretation floor exp(-sum_i 1/k_i): exact rational exponent
/// plus its float image.  Documentation value; derandomize is the
/// constructive counterpart.
struct RandomBound {
    BigRational exponent; // sum_i 1/k_i
    double value = 0;     // exp(-exponent)
};

RandomBound random_bound(const CnfFormula& cnf);

/// E[log Conf(phi, pi)] when the first prefix.size() variables are fixed to
/// the given values and the remaining ones are uniform on [0,1].  A clause
/// with every literal fixed contributes log of its fixed value (-inf at 0).
double conditional_expectation(const CnfFormula& cnf, std::span<const double> prefix);

/// Derandomized approximation by the method of conditional expectations:
/// fixes pi(x_1), pi(x_2), ... in turn to a near-maximizer of the conditional
/// expectation, located on clause breakpoints plus a uniform grid and refined
/// by golden-section search.  The result satisfies
/// Conf(phi, pi) >= exp(-sum 1/k_i) - tolerance.
struct DerandomizeResult {
    Interpretation interpretation; // exact dyadic rationals
    BigRational conf_exact;        // Conf(phi, pi), exact
    double conf = 0;               // float image of conf_exact
    double guarantee = 0;          // exp(-sum 1/k_i)
    double tolerance = 0;
    std::vector<double> step_expectations; // E[log Conf | prefix] after each fix
};

DerandomizeResult derandomize(const CnfFormula& cnf, int grid = 64, int refine_iters = 40);

} // namespace semiopt
