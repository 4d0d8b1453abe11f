#include <algorithm>

#include "doctest.h"

#include "semiopt/errors.hpp"
#include "semiopt/reductions.hpp"
#include "semiopt/solver.hpp"
#include "support/generators.hpp"

using namespace semiopt;
using testsupport::SplitMix64;

namespace {

const char* kExampleDimacs = "p cnf 2 3\n1 0\n2 0\n-1 -2 0\n";

// Independent oracle: best satisfied-clause count over every assignment,
// computed directly here rather than through the library's enumeration.
int maxsat_reference(const CnfFormula& cnf) {
    const int n = cnf.var_count();
    int best = 0;
    for (std::uint64_t word = 0; word < (std::uint64_t{1} << n); ++word) {
        std::vector<bool> a(n);
        for (int i = 0; i < n; ++i) a[i] = (word >> i) & 1;
        best = std::max(best, satisfied_clause_count(cnf, a));
    }
    return best;
}

} // namespace

TEST_CASE("maxsat_exhaustive finds the exact optimum and the lex-least witness") {
    const CnfFormula example = parse_dimacs(kExampleDimacs);
    const MaxSatResult r = maxsat_exhaustive(example);
    CHECK(r.best_count == 2);
    CHECK(satisfied_clause_count(example, r.assignment) == 2);
    // Lexicographically first among the winners: (F,T) satisfies clauses 2,3.
    CHECK(r.assignment == std::vector<bool>{false, true});

    const CnfFormula unit = parse_dimacs("p cnf 1 1\n1 0\n");
    const MaxSatResult u = maxsat_exhaustive(unit);
    CHECK(u.best_count == 1);
    CHECK(u.assignment == std::vector<bool>{true});

    // {x1}, {~x1}, {x1 v x2}: enumeration over all four assignments gives 2.
    const CnfFormula three = parse_dimacs("p cnf 2 3\n1 0\n-1 0\n1 2 0\n");
    CHECK(maxsat_reference(three) == 2);
    CHECK(maxsat_exhaustive(three).best_count == 2);

    CHECK_THROWS_AS(maxsat_exhaustive(unit, 1), ResourceError);
}

TEST_CASE("maxsat_exhaustive matches the reference on random instances") {
    SplitMix64 rng(103);
    for (int iter = 0; iter < 60; ++iter) {
        const CnfFormula cnf = testsupport::random_cnf(rng, rng.range(1, 6), rng.range(1, 8), 3);
        const MaxSatResult r = maxsat_exhaustive(cnf);
        CHECK(r.best_count == maxsat_reference(cnf));
        CHECK(satisfied_clause_count(cnf, r.assignment) == r.best_count);
    }
}

TEST_CASE("conf_upper_bound is the exact power of 1/4") {
    CHECK(conf_upper_bound(3, 2) == BigRational(1, 4));
    CHECK(conf_upper_bound(5, 5) == BigRational(1));
    CHECK(conf_upper_bound(4, 1) == BigRational(1, 64));
    CHECK_THROWS_AS(conf_upper_bound(3, 4), ArgumentError);
    CHECK_THROWS_AS(conf_upper_bound(3, -1), ArgumentError);
}

TEST_CASE("reduce_to_optconf builds the widened clauses plus unit negations") {
    const CnfFormula source = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
    const ReducedInstance inst = reduce_to_optconf(source);
    CHECK(inst.y_offset == 1);
    CHECK(inst.source_m == 2);
    CHECK(inst.phi_prime.var_count() == 3);
    CHECK(inst.phi_prime.clause_count() == 4);
    CHECK(inst.phi_prime.clause(0) == std::vector<int>{1, 2});  // x1 v y1
    CHECK(inst.phi_prime.clause(1) == std::vector<int>{-1, 3}); // ~x1 v y2
    CHECK(inst.phi_prime.clause(2) == std::vector<int>{-2});
    CHECK(inst.phi_prime.clause(3) == std::vector<int>{-3});

    // r = 1, so the reduced optimum must be 1/4^(2-1).
    CHECK(opt_conf_val(cnf_to_formula(inst.phi_prime)) == BigRational(1, 4));

    // Satisfiable source: optimum 1.
    const ReducedInstance sat = reduce_to_optconf(parse_dimacs("p cnf 1 1\n1 0\n"));
    CHECK(opt_conf_val(cnf_to_formula(sat.phi_prime)) == BigRational(1));

    // Worked example: m = 3, r = 2.
    const ReducedInstance ex = reduce_to_optconf(parse_dimacs(kExampleDimacs));
    CHECK(opt_conf_val(cnf_to_formula(ex.phi_prime)) == BigRational(1, 4));
}

TEST_CASE("maxsatval_from_confval inverts exact powers of 1/4") {
    CHECK(maxsatval_from_confval(BigRational(1, 4), 2) == 1);
    CHECK(maxsatval_from_confval(BigRational(1), 7) == 7);
    CHECK(maxsatval_from_confval(BigRational(1, 16), 5) == 3);
    CHECK_THROWS_WITH_AS(maxsatval_from_confval(BigRational(1, 3), 5),
                         doctest::Contains("malformed reduction value"), ArgumentError);
    CHECK_THROWS_AS(maxsatval_from_confval(BigRational(1, 64), 2), ArgumentError);
}

TEST_CASE("extract_maxsat_assignment reads the assignment off the witness") {
    const CnfFormula source = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
    const ReducedInstance inst = reduce_to_optconf(source);
    const OptConfResult witness = opt_conf(cnf_to_formula(inst.phi_prime));
    CHECK(witness.value == BigRational(1, 4));
    const auto assignment = extract_maxsat_assignment(witness.interpretation, inst);
    REQUIRE(assignment.size() == 1);
    CHECK(satisfied_clause_count(source, assignment) == 1);

    // pi(x1) = 1/2 thresholds to true per the strictly-at-zero rule.
    if (witness.interpretation.rational(1) == BigRational(1, 2)) CHECK(assignment[0] == true);

    const CnfFormula sat_source = parse_dimacs("p cnf 1 1\n1 0\n");
    const ReducedInstance sat_inst = reduce_to_optconf(sat_source);
    const OptConfResult sat_witness = opt_conf(cnf_to_formula(sat_inst.phi_prime));
    const auto sat_assignment = extract_maxsat_assignment(sat_witness.interpretation, sat_inst);
    CHECK(sat_assignment == std::vector<bool>{true});
    CHECK(satisfied_clause_count(sat_source, sat_assignment) == 1);

    const CnfFormula ex = parse_dimacs(kExampleDimacs);
    const ReducedInstance ex_inst = reduce_to_optconf(ex);
    const auto ex_witness = opt_conf(cnf_to_formula(ex_inst.phi_prime));
    CHECK(satisfied_clause_count(ex, extract_maxsat_assignment(ex_witness.interpretation,
                                                               ex_inst)) == 2);
}

TEST_CASE("bound, reduction value, extraction and structure claims on a random suite") {
    SplitMix64 rng(107);
    for (int iter = 0; iter < 25; ++iter) {
        const CnfFormula cnf = testsupport::random_cnf(rng, rng.range(1, 4), rng.range(1, 5), 3);
        const int m = cnf.clause_count();
        const int r = maxsat_exhaustive(cnf).best_count;

        // Upper bound on the source formula.
        const BigRational opt = opt_conf_val(cnf_to_formula(cnf));
        CHECK(opt <= conf_upper_bound(m, r));

        const ReducedInstance inst = reduce_to_optconf(cnf);

        // Shifted MaxSAT value of the widened instance.
        CHECK(maxsat_exhaustive(inst.phi_prime).best_count == m + r);

        // Exact reduced optimum and its inversion.
        const OptConfResult witness = opt_conf(cnf_to_formula(inst.phi_prime));
        CHECK(witness.value == conf_upper_bound(m, r));
        CHECK(maxsatval_from_confval(witness.value, m) == r);

        // Extraction recovers a maximum assignment.
        const auto assignment = extract_maxsat_assignment(witness.interpretation, inst);
        CHECK(satisfied_clause_count(cnf, assignment) == r);

        // Structure of the optimal interpretation on phi'.
        const Interpretation& pi = witness.interpretation;
        for (int i = 1; i <= m; ++i) {
            const BigRational y = pi.rational(inst.y_offset + i);
            CHECK((y == BigRational(0) || y == BigRational(1, 2)));
        }
        std::vector<bool> maximizing(static_cast<size_t>(inst.y_offset), false);
        for (const auto& clause : inst.phi_prime.clauses()) {
            const int lit = maximizing_literal(clause, pi);
            const int var = lit < 0 ? -lit : lit;
            if (var <= inst.y_offset) maximizing[var - 1] = true;
        }
        for (int v = 1; v <= inst.y_offset; ++v) {
            if (!maximizing[v - 1]) continue;
            const BigRational x = pi.rational(v);
            CHECK((x == BigRational(0) || x == BigRational(1, 2) || x == BigRational(1)));
        }
    }
}

TEST_CASE("witness-level claims from the bound proof hold on random CNFs") {
    SplitMix64 rng(109);
    for (int iter = 0; iter < 25; ++iter) {
        const CnfFormula cnf = testsupport::random_cnf(rng, rng.range(1, 5), rng.range(1, 6), 3);
        const int r = maxsat_exhaustive(cnf).best_count;
        const OptConfResult witness = opt_conf(cnf_to_formula(cnf));
        const Interpretation& pi = witness.interpretation;

        const BigRational half(1, 2);
        int neutral = 0, high = 0;
        // a_lit / b_lit, keyed by canonical literal order.
        std::vector<int> low_max(2 * cnf.var_count(), 0);
        std::vector<int> high_max(2 * cnf.var_count(), 0);
        for (const auto& clause : cnf.clauses()) {
            const int lit = maximizing_literal(clause, pi);
            const int var = lit < 0 ? -lit : lit;
            const BigRational val =
                lit > 0 ? pi.rational(var) : BigRational(1) - pi.rational(var);
            if (val == half) ++neutral;
            if (val > half) {
                ++high;
                ++high_max[literal_order_key(lit)];
            }
            if (val < half) ++low_max[literal_order_key(lit)];
        }
        // N/2 + H <= r, in integers: N + 2H <= 2r.
        CHECK(neutral + 2 * high <= 2 * r);
        // a_lit <= b_lit: low clauses maximized at lit never outnumber high
        // clauses maximized at its negation.
        for (int var = 1; var <= cnf.var_count(); ++var) {
            for (int lit : {var, -var}) {
                const int a = low_max[literal_order_key(lit)];
                const int b = high_max[literal_order_key(-lit)];
                CHECK(a <= b);
            }
        }
    }
}
