#include "semiopt/minmax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semiopt/errors.hpp"

namespace semiopt {

namespace {

class Dpll {
public:
    explicit Dpll(const CnfFormula& cnf) : cnf_(cnf) {}

    SatResult solve() {
        std::vector<signed char> values(cnf_.var_count(), -1); // -1 free, 0 false, 1 true
        SatResult result;
        result.satisfiable = search(std::move(values), result.model);
        return result;
    }

private:
    bool search(std::vector<signed char> values, std::vector<bool>& model) {
        // Unit propagation to fixpoint.
        for (;;) {
            bool changed = false;
            bool all_satisfied = true;
            for (const auto& clause : cnf_.clauses()) {
                bool satisfied = false;
                int free_lit = 0;
                int free_count = 0;
                for (int lit : clause) {
                    const int var = lit < 0 ? -lit : lit;
                    const signed char v = values[var - 1];
                    if (v < 0) {
                        ++free_count;
                        free_lit = lit;
                    } else if ((v == 1) == (lit > 0)) {
                        satisfied = true;
                        break;
                    }
                }
                if (satisfied) continue;
                if (free_count == 0) return false; // conflict
                all_satisfied = false;
                if (free_count == 1) {
                    values[(free_lit < 0 ? -free_lit : free_lit) - 1] = free_lit > 0 ? 1 : 0;
                    changed = true;
                }
            }
            if (all_satisfied) {
                model.assign(values.size(), false);
                for (size_t i = 0; i < values.size(); ++i) model[i] = values[i] == 1;
                return true;
            }
            if (!changed) break;
        }
        const auto free_var = std::find(values.begin(), values.end(), static_cast<signed char>(-1));
        // Propagation neither finished nor progressed, so some variable is free.
        const size_t idx = static_cast<size_t>(free_var - values.begin());
        for (signed char v : {static_cast<signed char>(1), static_cast<signed char>(0)}) {
            std::vector<signed char> branch = values;
            branch[idx] = v;
            if (search(std::move(branch), model)) return true;
        }
        return false;
    }

    const CnfFormula& cnf_;
};

// Branch-and-bound over proof trees: a branch dies as soon as the partial
// profile picks up a constant-false leaf or a variable in both polarities,
// since exponents only grow along a branch.
class NnfSatSearch {
public:
    NnfSatSearch(const Formula& f, std::uint64_t budget) : f_(f), budget_(budget) {
        pos_.assign(f.var_count(), 0);
        neg_.assign(f.var_count(), 0);
        pending_.push_back(f.root());
    }

    bool run(std::vector<bool>& model) {
        if (!dfs()) return false;
        model.assign(pos_.size(), false);
        for (size_t i = 0; i < model_pos_.size(); ++i) model[i] = model_pos_[i] > 0;
        return true;
    }

private:
    bool dfs() {
        struct Step {
            enum class Kind { popped, pushed, leaf, zero } kind;
            int node = 0;
            int var = 0;
            bool positive = false;
        };
        std::vector<Step> journal;
        bool result = false;
        bool pruned = false;
        bool branched = false;

        while (!pending_.empty()) {
            if (++nodes_ > budget_) throw ResourceError("satisfiability node budget exceeded");
            const int id = pending_.back();
            pending_.pop_back();
            journal.push_back({Step::Kind::popped, id, 0, false});
            const FormulaNode& n = f_.node(id);
            bool branch = false;
            switch (n.kind) {
            case NodeKind::and_node:
                for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
                    pending_.push_back(*it);
                    journal.push_back({Step::Kind::pushed, *it, 0, false});
                }
                break;
            case NodeKind::pos_lit:
            case NodeKind::neg_lit: {
                const bool positive = n.kind == NodeKind::pos_lit;
                const int i = n.var - 1;
                ++(positive ? pos_ : neg_)[i];
                journal.push_back({Step::Kind::leaf, id, n.var, positive});
                if (pos_[i] > 0 && neg_[i] > 0) pruned = true;
                break;
            }
            case NodeKind::const_false:
                ++zero_leaves_;
                journal.push_back({Step::Kind::zero, id, 0, false});
                pruned = true;
                break;
            case NodeKind::const_true:
                break;
            case NodeKind::or_node:
                branch = true;
                break;
            }
            if (pruned) break;
            if (!branch) continue;

            for (size_t choice = 0; choice < n.children.size() && !result; ++choice) {
                pending_.push_back(n.children[choice]);
                result = dfs();
                pending_.pop_back();
            }
            branched = true;
            break;
        }

        if (!pruned && !branched && pending_.empty()) {
            result = true;
            model_pos_ = pos_; // keep the witnessing polarity counts
        }

        for (auto it = journal.rbegin(); it != journal.rend(); ++it) {
            switch (it->kind) {
            case Step::Kind::popped: pending_.push_back(it->node); break;
            case Step::Kind::pushed: pending_.pop_back(); break;
            case Step::Kind::leaf: --(it->positive ? pos_ : neg_)[it->var - 1]; break;
            case Step::Kind::zero: --zero_leaves_; break;
            }
        }
        return result;
    }

    const Formula& f_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<int> pending_;
    std::vector<std::int64_t> pos_, neg_;
    std::vector<std::int64_t> model_pos_;
    int zero_leaves_ = 0;
};

} // namespace

SatResult sat_check(const CnfFormula& cnf) { return Dpll(cnf).solve(); }

SatResult sat_check(const Formula& f, std::uint64_t node_budget) {
    if (auto cnf = cnf_view(f)) return sat_check(*cnf);
    NnfSatSearch search(f, node_budget);
    SatResult result;
    result.satisfiable = search.run(result.model);
    if (!result.satisfiable) result.model.clear();
    return result;
}

AccessSemiring AccessSemiring::modular(int k) { return AccessSemiring{k, NegationFn::modular(k)}; }

AccessSemiring AccessSemiring::with_table(int k, std::vector<int> mapping) {
    return AccessSemiring{k, NegationFn::table(k, std::move(mapping))};
}

SemiringSpec AccessSemiring::spec() const { return SemiringSpec::access_with(k, negation); }

int negation_index(const AccessSemiring& sr) {
    int best = 0;
    for (int a = 0; a <= sr.k; ++a)
        best = std::max(best, std::min(a, sr.negation.apply_level(a)));
    return best;
}

int negation_index_witness(const AccessSemiring& sr) {
    const int index = negation_index(sr);
    for (int a = 0; a <= sr.k; ++a)
        if (std::min(a, sr.negation.apply_level(a)) == index) return a;
    throw Error("internal error: negation index without witness");
}

int opt_access_val(const Formula& f, const AccessSemiring& sr) {
    return sat_check(f).satisfiable ? sr.k : negation_index(sr);
}

OptAccessResult opt_access(const Formula& f, const AccessSemiring& sr) {
    const SatResult sat = sat_check(f);
    std::vector<int> levels(f.var_count());
    int value = 0;
    if (sat.satisfiable) {
        const int bottom = sr.negation.apply_level(sr.k); // = 0
        for (int i = 0; i < f.var_count(); ++i) levels[i] = sat.model[i] ? sr.k : bottom;
        value = sr.k;
    } else {
        const int witness = negation_index_witness(sr);
        std::fill(levels.begin(), levels.end(), witness);
        value = negation_index(sr);
    }
    return OptAccessResult{Interpretation::access(std::move(levels)), value};
}

BigRational opt_fuzzy_val(const Formula& f) {
    return sat_check(f).satisfiable ? BigRational(1) : BigRational(1, 2);
}

TropicalValue tropical_adapt(const BigRational& viterbi_val) {
    if (viterbi_val.sign() < 0 || viterbi_val > BigRational(1))
        throw ArgumentError("tropical_adapt expects a value in [0,1]");
    if (viterbi_val.is_zero())
        return TropicalValue{std::numeric_limits<double>::infinity(), viterbi_val};
    return TropicalValue{-std::log(viterbi_val.to_double()), viterbi_val};
}

AccessRoundTrip access_round_trip(const Formula& f, const AccessSemiring& sr) {
    AccessRoundTrip report;
    report.value = opt_access_val(f, sr);
    const bool sat_from_value = report.value == sr.k; // SAT decided from the optimum
    const bool sat = sat_check(f).satisfiable;        // optimum recomputed from one SAT call
    const int value_from_sat = sat ? sr.k : negation_index(sr);
    report.satisfiable = sat;
    report.consistent = sat_from_value == sat && report.value == value_from_sat;
    return report;
}

} // namespace semiopt
