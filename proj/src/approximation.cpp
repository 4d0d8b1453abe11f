#include "semiopt/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semiopt/errors.hpp"
#include "semiopt/reductions.hpp"

namespace semiopt {

namespace {

constexpr double kTolerance = 1e-6;

} // namespace

std::vector<int> clause_arities(const CnfFormula& cnf) {
    std::vector<int> arities;
    arities.reserve(cnf.clauses().size());
    for (const auto& clause : cnf.clauses()) arities.push_back(static_cast<int>(clause.size()));
    return arities;
}

std::optional<int> uniform_arity(const CnfFormula& cnf) {
    const auto arities = clause_arities(cnf);
    if (arities.empty()) return std::nullopt;
    for (int k : arities)
        if (k != arities.front()) return std::nullopt;
    return arities.front();
}

SeededInterpretation interp_from_assignment(const CnfFormula& cnf,
                                            const std::vector<bool>& assignment) {
    const int m = cnf.clause_count();
    const int r = satisfied_clause_count(cnf, assignment);
    if (r == 0) throw ArgumentError("assignment satisfies no clause");

    const BigRational high(r, m);      // 1 - eps
    const BigRational low(m - r, m);   // eps
    std::vector<BigRational> values;
    values.reserve(cnf.var_count());
    for (int i = 0; i < cnf.var_count(); ++i) values.push_back(assignment[i] ? high : low);

    const BigRational guarantee = high.pow(static_cast<unsigned long>(r)) *
                                  low.pow(static_cast<unsigned long>(m - r));
    return SeededInterpretation{Interpretation::viterbi(std::move(values)), guarantee};
}

RandomBound random_bound(const CnfFormula& cnf) {
    BigRational exponent(0);
    for (int k : clause_arities(cnf)) exponent += BigRational(1, k);
    return RandomBound{exponent, std::exp(-exponent.to_double())};
}

double conditional_expectation(const CnfFormula& cnf, std::span<const double> prefix) {
    const int fixed = static_cast<int>(prefix.size());
    double total = 0;
    for (const auto& clause : cnf.clauses()) {
        double alpha = 0; // max over fixed literals; empty max is absorbed by 0
        int later = 0;
        for (int lit : clause) {
            const int var = lit < 0 ? -lit : lit;
            if (var <= fixed)
                alpha = std::max(alpha, lit > 0 ? prefix[var - 1] : 1.0 - prefix[var - 1]);
            else
                ++later;
        }
        if (later > 0)
            total += -(1.0 - std::pow(alpha, later)) / later;
        else
            total += std::log(alpha); // -inf when the clause is pinned to 0
    }
    return total;
}

namespace {

// Per-clause view at the step that fixes x_i: the best already-fixed literal
// value, the number of literals on later variables, and how x_i occurs.
struct ClauseAtStep {
    double alpha = 0;
    int later = 0;
    bool has_pos = false;
    bool has_neg = false;
    bool dead = false; // fully fixed at value 0; constant -inf, excluded from argmax
};

std::vector<ClauseAtStep> clause_states(const CnfFormula& cnf, std::span<const double> prefix,
                                        int current_var) {
    std::vector<ClauseAtStep> states;
    states.reserve(cnf.clauses().size());
    for (const auto& clause : cnf.clauses()) {
        ClauseAtStep st;
        for (int lit : clause) {
            const int var = lit < 0 ? -lit : lit;
            if (var == current_var) {
                (lit > 0 ? st.has_pos : st.has_neg) = true;
            } else if (var < current_var) {
                st.alpha = std::max(st.alpha, lit > 0 ? prefix[var - 1] : 1.0 - prefix[var - 1]);
            } else {
                ++st.later;
            }
        }
        st.dead = !st.has_pos && !st.has_neg && st.later == 0 && st.alpha == 0;
        states.push_back(st);
    }
    return states;
}

// Conditional expectation as a function of p = pi(x_i), with constant-dead
// clauses left out so the argmax stays meaningful.
double step_objective(const std::vector<ClauseAtStep>& states, double p) {
    double total = 0;
    for (const auto& st : states) {
        if (st.dead) continue;
        double a = st.alpha;
        if (st.has_pos) a = std::max(a, p);
        if (st.has_neg) a = std::max(a, 1.0 - p);
        total += st.later > 0 ? -(1.0 - std::pow(a, st.later)) / st.later : std::log(a);
    }
    return total;
}

} // namespace

DerandomizeResult derandomize(const CnfFormula& cnf, int grid, int refine_iters) {
    if (grid < 1) throw ArgumentError("grid must be >= 1");
    if (refine_iters < 0) throw ArgumentError("refine_iters must be >= 0");

    const int n = cnf.var_count();
    std::vector<double> prefix;
    prefix.reserve(n);
    DerandomizeResult result;

    for (int var = 1; var <= n; ++var) {
        const auto states = clause_states(cnf, prefix, var);

        // Candidate points: uniform grid, interval ends, and the breakpoints
        // where max(alpha, .) switches regime for some clause.
        std::vector<double> candidates;
        candidates.reserve(static_cast<size_t>(grid) + 2 * states.size() + 2);
        for (int j = 0; j <= grid; ++j) candidates.push_back(static_cast<double>(j) / grid);
        for (const auto& st : states) {
            if (st.has_pos) candidates.push_back(st.alpha);
            if (st.has_neg) candidates.push_back(1.0 - st.alpha);
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        double best_p = 0;
        double best_val = -std::numeric_limits<double>::infinity();
        size_t best_idx = 0;
        auto consider = [&](double p, double val, std::optional<size_t> idx) {
            if (val > best_val || (val == best_val && p < best_p)) {
                best_val = val;
                best_p = p;
                if (idx) best_idx = *idx;
            }
        };
        for (size_t j = 0; j < candidates.size(); ++j)
            consider(candidates[j], step_objective(states, candidates[j]), j);

        // Golden-section refinement inside the bracket around the best grid
        // point; keeps whichever evaluated point ends up best (smaller p on
        // ties, for deterministic output).
        double a = candidates[best_idx > 0 ? best_idx - 1 : best_idx];
        double b = candidates[std::min(best_idx + 1, candidates.size() - 1)];
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - invphi * (b - a);
        double d = a + invphi * (b - a);
        double fc = step_objective(states, c);
        double fd = step_objective(states, d);
        consider(c, fc, std::nullopt);
        consider(d, fd, std::nullopt);
        for (int it = 0; it < refine_iters; ++it) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - invphi * (b - a);
                fc = step_objective(states, c);
                consider(c, fc, std::nullopt);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + invphi * (b - a);
                fd = step_objective(states, d);
                consider(d, fd, std::nullopt);
            }
        }

        prefix.push_back(best_p);
        result.step_expectations.push_back(conditional_expectation(cnf, prefix));
    }

    std::vector<BigRational> values;
    values.reserve(n);
    for (double p : prefix) values.push_back(BigRational::from_double(p));
    result.interpretation = Interpretation::viterbi(std::move(values));
    result.conf_exact =
        eval_sem(cnf_to_formula(cnf), result.interpretation, SemiringSpec::viterbi()).rational();
    result.conf = result.conf_exact.to_double();
    result.guarantee = random_bound(cnf).value;
    result.tolerance = kTolerance;
    return result;
}

} // namespace semiopt
