#include "semiopt/solver.hpp"

#include <algorithm>

#include "semiopt/errors.hpp"

namespace semiopt {

namespace {

// ceil(log2(base^exp)) = ceil(exp * log2 base), computed exactly.
long ceil_log2_pow(unsigned long base, unsigned long exp) {
    if (base <= 1 || exp == 0) return 0;
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), base, exp);
    const size_t bits = mpz_sizeinbase(p.get_mpz_t(), 2); // floor(log2 p) + 1
    const bool exact_power = mpz_popcount(p.get_mpz_t()) == 1;
    return static_cast<long>(exact_power ? bits - 1 : bits);
}

} // namespace

BigInt FareyBound::order() const {
    BigInt n;
    mpz_ui_pow_ui(n.get_mpz_t(), 2, static_cast<unsigned long>(n_log2));
    return n;
}

BigRational FareyBound::gap() const { return BigRational::pow2(-gap_log2); }

FareyBound FareyBound::paper(const Formula& f) {
    const unsigned long n = static_cast<unsigned long>(f.var_count());
    const unsigned long m = static_cast<unsigned long>(f.literal_count());
    FareyBound b;
    b.n_log2 = ceil_log2_pow(m, n * m);
    b.gap_log2 = 2 * b.n_log2;
    return b;
}

FareyBound FareyBound::effective(const Formula& f) {
    const unsigned long m = static_cast<unsigned long>(f.literal_count());
    FareyBound b;
    b.n_log2 = ceil_log2_pow(m, m);
    b.gap_log2 = 2 * b.n_log2;
    return b;
}

ThresholdOracle::ThresholdOracle(const Formula& f, SolveOptions options)
    : formula_(&f), options_(options), strategy_(options.strategy) {
    if (strategy_ == SolveOptions::Strategy::automatic) {
        const BigInt count = count_proof_trees(f);
        strategy_ = mpz_cmp_ui(count.get_mpz_t(), options_.tree_cap) <= 0
                        ? SolveOptions::Strategy::exhaustive
                        : SolveOptions::Strategy::branch_and_bound;
    }
}

bool ThresholdOracle::query(const BigRational& v) {
    if (v.sign() < 0 || v > BigRational(1)) throw ArgumentError("threshold must lie in [0,1]");
    ++stats_.oracle_queries;
    if (strategy_ == SolveOptions::Strategy::exhaustive) return exhaustive_query(v);
    return branch_and_bound_query(v, {});
}

bool ThresholdOracle::query_with_prefix(const BigRational& v, std::span<const int> prefix) {
    if (v.sign() < 0 || v > BigRational(1)) throw ArgumentError("threshold must lie in [0,1]");
    ++stats_.oracle_queries;
    return branch_and_bound_query(v, prefix);
}

bool ThresholdOracle::exhaustive_query(const BigRational& v) {
    ProofTreeEnumerator trees(*formula_);
    while (auto tree = trees.next()) {
        if (++stats_.trees_enumerated > options_.tree_cap)
            throw ResourceError("proof-tree cap exceeded during exhaustive search");
        if (tree_opt_val(profile_of(*tree)) >= v) return true;
    }
    return false;
}

namespace {

// Depth-first search over proof-tree choices with exact pruning.  The upper
// bound for any completion of a partial tree is the product of per-variable
// optima over the exponents committed so far: appending more leaves can only
// multiply in further factors <= 1 (x^(a+1)(1-x)^b <= x^a(1-x)^b pointwise on
// [0,1]), and untouched subtrees are bounded by 1.
class BnbSearch {
public:
    BnbSearch(const Formula& f, const BigRational& v, std::span<const int> prefix,
              std::uint64_t budget, std::uint64_t& nodes_expanded)
        : f_(f), v_(v), prefix_(prefix), budget_(budget), nodes_(nodes_expanded) {
        pos_.assign(f.var_count(), 0);
        neg_.assign(f.var_count(), 0);
        factor_.assign(f.var_count(), BigRational(1));
        pending_.push_back(f.root());
    }

    bool run() { return dfs(); }

private:
    bool viable() const { return zero_leaves_ == 0 && ub_ >= v_; }

    // Applies one literal leaf to the committed profile; returns the undo
    // record (the variable's previous factor).
    BigRational apply_leaf(int var, bool positive) {
        const int i = var - 1;
        BigRational previous = factor_[i];
        if (positive)
            ++pos_[i];
        else
            ++neg_[i];
        BigRational updated = exponent_pair_optimum(pos_[i], neg_[i]);
        ub_ *= updated;
        ub_ /= previous;
        factor_[i] = std::move(updated);
        return previous;
    }

    void undo_leaf(int var, bool positive, BigRational previous_factor) {
        const int i = var - 1;
        if (positive)
            --pos_[i];
        else
            --neg_[i];
        ub_ *= previous_factor;
        ub_ /= factor_[i];
        factor_[i] = std::move(previous_factor);
    }

    bool dfs() {
        struct Step {
            enum class Kind { popped, pushed, leaf, zero } kind;
            int node = 0;
            int var = 0;
            bool positive = false;
            BigRational previous_factor;
        };
        std::vector<Step> journal;
        bool result = false;
        bool pruned = false;
        bool branched = false;

        while (!pending_.empty()) {
            if (++nodes_ > budget_)
                throw ResourceError("branch-and-bound node budget exceeded");
            const int id = pending_.back();
            pending_.pop_back();
            journal.push_back({Step::Kind::popped, id, 0, false, {}});
            const FormulaNode& n = f_.node(id);
            bool branch = false;
            switch (n.kind) {
            case NodeKind::and_node:
                for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
                    pending_.push_back(*it);
                    journal.push_back({Step::Kind::pushed, *it, 0, false, {}});
                }
                break;
            case NodeKind::pos_lit:
            case NodeKind::neg_lit: {
                const bool positive = n.kind == NodeKind::pos_lit;
                BigRational prev = apply_leaf(n.var, positive);
                journal.push_back({Step::Kind::leaf, id, n.var, positive, std::move(prev)});
                if (!viable()) pruned = true;
                break;
            }
            case NodeKind::const_false:
                ++zero_leaves_;
                journal.push_back({Step::Kind::zero, id, 0, false, {}});
                if (!viable()) pruned = true;
                break;
            case NodeKind::const_true:
                break;
            case NodeKind::or_node:
                branch = true;
                break;
            }
            if (pruned) break;
            if (!branch) continue;

            const bool forced = static_cast<size_t>(or_position_) < prefix_.size();
            const int first = forced ? prefix_[static_cast<size_t>(or_position_)] : 0;
            const int last = forced ? first : static_cast<int>(n.children.size()) - 1;
            if (first < 0 || first >= static_cast<int>(n.children.size()))
                throw ArgumentError("proof-tree prefix choice out of range");
            ++or_position_;
            for (int choice = first; choice <= last && !result; ++choice) {
                pending_.push_back(n.children[choice]);
                result = dfs();
                pending_.pop_back();
            }
            --or_position_;
            branched = true;
            break;
        }

        if (!pruned && !branched && pending_.empty()) result = viable();

        for (auto it = journal.rbegin(); it != journal.rend(); ++it) {
            switch (it->kind) {
            case Step::Kind::popped: pending_.push_back(it->node); break;
            case Step::Kind::pushed: pending_.pop_back(); break;
            case Step::Kind::leaf: undo_leaf(it->var, it->positive, std::move(it->previous_factor)); break;
            case Step::Kind::zero: --zero_leaves_; break;
            }
        }
        return result;
    }

    const Formula& f_;
    const BigRational& v_;
    std::span<const int> prefix_;
    std::uint64_t budget_;
    std::uint64_t& nodes_;

    std::vector<int> pending_;
    std::vector<std::int64_t> pos_, neg_;
    std::vector<BigRational> factor_;
    BigRational ub_{1};
    int zero_leaves_ = 0;
    int or_position_ = 0;
};

} // namespace

bool ThresholdOracle::branch_and_bound_query(const BigRational& v, std::span<const int> prefix) {
    BnbSearch search(*formula_, v, prefix, options_.node_budget, stats_.nodes_expanded);
    return search.run();
}

namespace {

// Minimal-denominator fraction in the closed interval [lo, hi], by descending
// the Stern-Brocot tree with continued-fraction strides instead of one
// mediant at a time.
BigRational simplest_in(const BigRational& lo, const BigRational& hi) {
    if (lo == hi) return lo;
    const BigInt up = lo.ceil();
    if (BigRational(up, BigInt(1)) <= hi) return BigRational(up, BigInt(1));
    // No integer inside, so both endpoints share the same integer part and
    // neither is an integer.
    const BigInt base = lo.floor();
    const BigRational whole(base, BigInt(1));
    const BigRational inner = simplest_in((hi - whole).reciprocal(), (lo - whole).reciprocal());
    return whole + inner.reciprocal();
}

} // namespace

BigRational farey_recover(const BigRational& lo, const BigRational& hi, const BigInt& max_den) {
    if (lo.sign() < 0) throw ArgumentError("interval must lie in [0, inf)");
    if (hi < lo) throw ArgumentError("empty interval: hi < lo");
    if (max_den < 1) throw ArgumentError("Farey order must be >= 1");
    BigRational simplest = simplest_in(lo, hi);
    if (simplest.denominator() > max_den)
        throw ArgumentError("empty interval: no fraction of order N in [" + lo.str() + ", " +
                            hi.str() + "]");
    return simplest;
}

namespace {

BigRational solve_value(const Formula& f, ThresholdOracle& oracle) {
    if (oracle.query(BigRational(1))) return BigRational(1); // satisfiable

    const FareyBound bound = FareyBound::effective(f);
    // Any tree that does not force zero is worth at least 1/m^m >= 2^-n_log2,
    // so one query at that threshold separates the optimum from 0.
    BigRational lo = BigRational::pow2(-bound.n_log2);
    if (!oracle.query(lo)) return BigRational(0);

    BigRational hi(1);
    const BigRational gap = bound.gap();
    const BigRational half(1, 2);
    while (hi - lo > gap) {
        const BigRational mid = (lo + hi) * half;
        ++oracle.stats().binary_search_queries;
        if (oracle.query(mid))
            lo = mid;
        else
            hi = mid;
    }
    return farey_recover(lo, hi, bound.order());
}

} // namespace

BigRational opt_conf_val(const Formula& f, const SolveOptions& options, SolveStats* stats) {
    ThresholdOracle oracle(f, options);
    BigRational value = solve_value(f, oracle);
    if (stats) *stats = oracle.stats();
    return value;
}

OptConfResult opt_conf(const Formula& f, const SolveOptions& options, SolveStats* stats) {
    ThresholdOracle oracle(f, options);
    const BigRational target = solve_value(f, oracle);

    // Prefix search over canonical encodings: extend by the smallest child
    // index that still admits a completion of exactly the optimum value.  A
    // completion of value >= target is one of value == target, since target
    // is the maximum.
    std::vector<int> prefix;
    for (;;) {
        auto walk = detail::walk_with_prefix(f, prefix);
        if (walk.encoding.size() == prefix.size()) break; // every OR decided
        const int options_here = walk.child_counts[prefix.size()];
        bool extended = false;
        for (int choice = 0; choice < options_here && !extended; ++choice) {
            prefix.push_back(choice);
            if (oracle.query_with_prefix(target, prefix))
                extended = true;
            else
                prefix.pop_back();
        }
        if (!extended) throw Error("internal error: optimum not reachable from prefix");
    }

    auto walk = detail::walk_with_prefix(f, prefix);
    ProofTree tree(f, walk.encoding, walk.choices);
    Interpretation pi =
        target.is_zero()
            ? Interpretation::viterbi(std::vector<BigRational>(f.var_count(), BigRational(1, 2)))
            : tree_opt_interpretation(walk.profile);
    if (stats) *stats = oracle.stats();
    return OptConfResult{std::move(pi), target, std::move(tree)};
}

} // namespace semiopt
