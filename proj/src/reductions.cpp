#include "semiopt/reductions.hpp"

#include "semiopt/errors.hpp"

namespace semiopt {

int satisfied_clause_count(const CnfFormula& cnf, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) < cnf.var_count())
        throw ArgumentError("assignment is not total");
    int count = 0;
    for (const auto& clause : cnf.clauses()) {
        for (int lit : clause) {
            const int var = lit < 0 ? -lit : lit;
            if (assignment[var - 1] == (lit > 0)) {
                ++count;
                break;
            }
        }
    }
    return count;
}

MaxSatResult maxsat_exhaustive(const CnfFormula& cnf, std::uint64_t max_assignments) {
    const int n = cnf.var_count();
    if (n >= 64 || (std::uint64_t{1} << n) > max_assignments)
        throw ResourceError("assignment cap exceeded: 2^" + std::to_string(n) + " assignments");

    MaxSatResult best;
    best.best_count = -1;
    std::vector<bool> assignment(n);
    const std::uint64_t total = std::uint64_t{1} << n;
    // Counting with x1 in the most significant bit enumerates assignments in
    // lexicographic order (false < true), so the first strict improvement is
    // the lexicographically smallest witness.
    for (std::uint64_t word = 0; word < total; ++word) {
        for (int i = 0; i < n; ++i) assignment[i] = (word >> (n - 1 - i)) & 1;
        const int count = satisfied_clause_count(cnf, assignment);
        if (count > best.best_count) {
            best.best_count = count;
            best.assignment = assignment;
        }
    }
    return best;
}

BigRational conf_upper_bound(int m, int r) {
    if (r < 0 || r > m) throw ArgumentError("need 0 <= r <= m");
    return BigRational(1, 4).pow(static_cast<unsigned long>(m - r));
}

ReducedInstance reduce_to_optconf(const CnfFormula& cnf) {
    const int n = cnf.var_count();
    const int m = cnf.clause_count();
    std::vector<std::vector<int>> clauses;
    clauses.reserve(2 * static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        std::vector<int> widened = cnf.clause(i);
        widened.push_back(n + 1 + i); // y_i
        clauses.push_back(std::move(widened));
    }
    for (int i = 0; i < m; ++i) clauses.push_back({-(n + 1 + i)});
    return ReducedInstance{CnfFormula::from_clauses(n + m, std::move(clauses)), n, m};
}

int maxsatval_from_confval(const BigRational& v, int m) {
    BigRational candidate(1);
    const BigRational quarter(1, 4);
    for (int d = 0; d <= m; ++d) {
        if (v == candidate) return m - d;
        candidate *= quarter;
    }
    throw ArgumentError("malformed reduction value: " + v.str() + " is not 4^-d with 0 <= d <= " +
                        std::to_string(m));
}

std::vector<bool> extract_maxsat_assignment(const Interpretation& pi, const ReducedInstance& inst) {
    const int n = inst.y_offset;
    if (pi.var_count() < inst.phi_prime.var_count())
        throw ArgumentError("interpretation is not total on the reduced instance");
    std::vector<bool> assignment(n);
    for (int i = 0; i < n; ++i) assignment[i] = !pi.rational(i + 1).is_zero();
    return assignment;
}

int maximizing_literal(const std::vector<int>& clause, const Interpretation& pi) {
    if (clause.empty()) throw ArgumentError("empty clause");
    int best_lit = 0;
    BigRational best_val(-1);
    for (int lit : clause) { // clauses are stored in canonical literal order
        const int var = lit < 0 ? -lit : lit;
        const BigRational val =
            lit > 0 ? pi.rational(var) : BigRational(1) - pi.rational(var);
        if (val > best_val) {
            best_val = val;
            best_lit = lit;
        }
    }
    return best_lit;
}

} // namespace semiopt
