#pragma once

#include <cstdint>
#include <vector>

#include "semiopt/formula.hpp"

namespace semiopt {

struct SatResult {
    bool satisfiable = false;
    std::vector<bool> model; // meaningful only when satisfiable
};

/// DPLL with unit propagation.
SatResult sat_check(const CnfFormula& cnf);

/// Satisfiability of a general NNF tree.  CNF-shaped trees go through DPLL;
/// everything else is a branch-and-bound search for a proof tree whose
/// profile is conflict-free (no variable with both polarities) and carries no
/// constant-false leaf — exactly the satisfying witnesses.
SatResult sat_check(const Formula& f, std::uint64_t node_budget = std::uint64_t{1} << 28);

/// Access-control semiring ([0..k], max, min, 0, k) with its negation.
struct AccessSemiring {
    int k = 1;
    NegationFn negation = NegationFn::modular(1);

    static AccessSemiring modular(int k);
    static AccessSemiring with_table(int k, std::vector<int> mapping);

    SemiringSpec spec() const;
};

/// Largest l such that some level a has both a >= l and neg(a) >= l,
/// i.e. max_a min(a, neg(a)).
int negation_index(const AccessSemiring& sr);

/// The level a attaining the negation index (smallest such a on ties).
int negation_index_witness(const AccessSemiring& sr);

/// k when satisfiable, the negation index otherwise.
int opt_access_val(const Formula& f, const AccessSemiring& sr);

struct OptAccessResult {
    Interpretation interpretation;
    int value = 0;
};

/// Witnessing interpretation: levels k / neg(k) read off a model when
/// satisfiable, the constant negation-index witness otherwise.
OptAccessResult opt_access(const Formula& f, const AccessSemiring& sr);

/// 1 when satisfiable, else 1/2 (the continuous analogue of the negation
/// index: max_x min(x, 1-x)).
BigRational opt_fuzzy_val(const Formula& f);

/// Image of a Viterbi value under x -> -ln x, with the exact source carried
/// alongside.  0 maps to +infinity.
struct TropicalValue {
    double cost = 0;
    BigRational confidence;
};

TropicalValue tropical_adapt(const BigRational& viterbi_val);

/// Runs both directions of the SAT <-> optAccessVal equivalence and checks
/// they tell the same story.
struct AccessRoundTrip {
    bool satisfiable = false;
    int value = 0;
    bool consistent = false;
};

AccessRoundTrip access_round_trip(const Formula& f, const AccessSemiring& sr);

} // namespace semiopt
