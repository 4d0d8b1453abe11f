#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semiopt/formula.hpp"

namespace semiopt {

/// Per-variable leaf counts of a proof tree: pos[i] positive and neg[i]
/// negated occurrences of x_{i+1}.  forces_zero is set when the tree contains
/// a constant-false leaf, which pins its value to 0 regardless of exponents.
struct ExponentProfile {
    std::vector<std::int64_t> pos;
    std::vector<std::int64_t> neg;
    bool forces_zero = false;

    std::int64_t leaf_count() const;
};

/// Subtree of a formula tree that keeps all children of every AND node and
/// exactly one child of every reachable OR node.  Canonically encoded as the
/// sequence of chosen child indices over OR nodes in pre-order, which is also
/// the serialized form ("0,2,1").
class ProofTree {
public:
    ProofTree(const Formula& source, std::vector<int> encoding, std::map<int, int> choices)
        : source_(&source), encoding_(std::move(encoding)), choices_(std::move(choices)) {}

    const Formula& source() const { return *source_; }
    const std::vector<int>& encoding() const { return encoding_; }
    const std::map<int, int>& choices() const { return choices_; }

    std::string encode() const;

private:
    const Formula* source_;
    std::vector<int> encoding_;
    std::map<int, int> choices_; // or-node id -> chosen child index
};

ExponentProfile profile_of(const ProofTree& tree);

/// Largest value x^a (1-x)^b can take on [0,1], as an exact rational:
/// (a/(a+b))^a (b/(a+b))^b, with the 0^0 = 1 convention.
BigRational exponent_pair_optimum(std::int64_t a, std::int64_t b);

/// Closed-form optimum of the tree's polynomial over all interpretations.
BigRational tree_opt_val(const ExponentProfile& profile);

/// The maximizing interpretation: x_i = a_i/(a_i+b_i), unconstrained
/// variables get 1/2.  Errors when the profile forces value 0.
Interpretation tree_opt_interpretation(const ExponentProfile& profile);

/// Number of distinct proof trees (can be exponential, hence exact bigint).
BigInt count_proof_trees(const Formula& f);

/// The proof tree as a standalone formula over the same variable set.
Formula materialize(const ProofTree& tree);

/// Streams every distinct proof tree exactly once, in lexicographic order of
/// the canonical encoding.  No materialization of the full set.
class ProofTreeEnumerator {
public:
    explicit ProofTreeEnumerator(const Formula& f) : formula_(&f) {}

    std::optional<ProofTree> next();

private:
    const Formula* formula_;
    bool started_ = false;
    bool done_ = false;
    std::vector<int> encoding_;
    std::vector<int> child_counts_;
};

namespace detail {

/// Resolves a choice prefix against the formula: walks the tree taking
/// prefix[j] at the j-th reachable OR node and child 0 past the end of the
/// prefix.  Returns the full encoding, the per-position child counts, the
/// explicit choice map and the resulting profile.
struct PrefixWalk {
    std::vector<int> encoding;
    std::vector<int> child_counts;
    std::map<int, int> choices;
    ExponentProfile profile;
};

PrefixWalk walk_with_prefix(const Formula& f, std::span<const int> prefix);

} // namespace detail

} // namespace semiopt
