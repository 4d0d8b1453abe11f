#include "semiopt/prooftree.hpp"

#include <numeric>

#include "semiopt/errors.hpp"

namespace semiopt {

std::int64_t ExponentProfile::leaf_count() const {
    return std::accumulate(pos.begin(), pos.end(), std::int64_t{0}) +
           std::accumulate(neg.begin(), neg.end(), std::int64_t{0});
}

std::string ProofTree::encode() const {
    std::string out;
    for (size_t i = 0; i < encoding_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(encoding_[i]);
    }
    return out;
}

namespace detail {

PrefixWalk walk_with_prefix(const Formula& f, std::span<const int> prefix) {
    PrefixWalk walk;
    walk.profile.pos.assign(f.var_count(), 0);
    walk.profile.neg.assign(f.var_count(), 0);

    std::vector<int> stack{f.root()};
    while (!stack.empty()) {
        const int id = stack.back();
        stack.pop_back();
        const FormulaNode& n = f.node(id);
        switch (n.kind) {
        case NodeKind::and_node:
            for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
            break;
        case NodeKind::or_node: {
            const size_t pos = walk.encoding.size();
            const int choice = pos < prefix.size() ? prefix[pos] : 0;
            if (choice < 0 || choice >= static_cast<int>(n.children.size()))
                throw ArgumentError("proof-tree choice out of range");
            walk.encoding.push_back(choice);
            walk.child_counts.push_back(static_cast<int>(n.children.size()));
            walk.choices[id] = choice;
            stack.push_back(n.children[choice]);
            break;
        }
        case NodeKind::pos_lit:
            ++walk.profile.pos[n.var - 1];
            break;
        case NodeKind::neg_lit:
            ++walk.profile.neg[n.var - 1];
            break;
        case NodeKind::const_false:
            walk.profile.forces_zero = true;
            break;
        case NodeKind::const_true:
            break;
        }
    }
    return walk;
}

} // namespace detail

ExponentProfile profile_of(const ProofTree& tree) {
    const Formula& f = tree.source();
    ExponentProfile profile;
    profile.pos.assign(f.var_count(), 0);
    profile.neg.assign(f.var_count(), 0);

    std::vector<int> stack{f.root()};
    while (!stack.empty()) {
        const int id = stack.back();
        stack.pop_back();
        const FormulaNode& n = f.node(id);
        switch (n.kind) {
        case NodeKind::and_node:
            for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
            break;
        case NodeKind::or_node:
            stack.push_back(n.children[tree.choices().at(id)]);
            break;
        case NodeKind::pos_lit:
            ++profile.pos[n.var - 1];
            break;
        case NodeKind::neg_lit:
            ++profile.neg[n.var - 1];
            break;
        case NodeKind::const_false:
            profile.forces_zero = true;
            break;
        case NodeKind::const_true:
            break;
        }
    }
    return profile;
}

BigRational exponent_pair_optimum(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0) throw ArgumentError("exponents must be non-negative");
    if (a + b == 0) return BigRational(1);
    if (a == 0 || b == 0) return BigRational(1); // one-sided: push x to 0 or 1
    const BigRational total(a + b);
    return (BigRational(a) / total).pow(static_cast<unsigned long>(a)) *
           (BigRational(b) / total).pow(static_cast<unsigned long>(b));
}

BigRational tree_opt_val(const ExponentProfile& profile) {
    if (profile.forces_zero) return BigRational(0);
    BigRational value(1);
    for (size_t i = 0; i < profile.pos.size(); ++i)
        value *= exponent_pair_optimum(profile.pos[i], profile.neg[i]);
    return value;
}

Interpretation tree_opt_interpretation(const ExponentProfile& profile) {
    if (profile.forces_zero) throw ArgumentError("tree value identically 0");
    std::vector<BigRational> values;
    values.reserve(profile.pos.size());
    for (size_t i = 0; i < profile.pos.size(); ++i) {
        const std::int64_t a = profile.pos[i];
        const std::int64_t b = profile.neg[i];
        if (a + b == 0)
            values.emplace_back(1, 2); // unconstrained; any value is optimal
        else
            values.push_back(BigRational(a) / BigRational(a + b));
    }
    return Interpretation::viterbi(std::move(values));
}

BigInt count_proof_trees(const Formula& f) {
    // trees(leaf) = 1, trees(AND) = product, trees(OR) = sum over children.
    std::vector<BigInt> counts(f.node_count());
    for (int id = f.node_count() - 1; id >= 0; --id) {
        const FormulaNode& n = f.node(id);
        if (n.kind == NodeKind::and_node) {
            BigInt c = 1;
            for (int child : n.children) c *= counts[child];
            counts[id] = c;
        } else if (n.kind == NodeKind::or_node) {
            BigInt c = 0;
            for (int child : n.children) c += counts[child];
            counts[id] = c;
        } else {
            counts[id] = 1;
        }
    }
    return counts[f.root()];
}

Formula materialize(const ProofTree& tree) {
    const Formula& src = tree.source();
    std::vector<FormulaNode> nodes;

    // Rebuild in pre-order, following the choices at OR nodes.
    auto copy = [&](auto&& self, int id) -> int {
        const FormulaNode& n = src.node(id);
        const int out = static_cast<int>(nodes.size());
        nodes.push_back({n.kind, n.var, {}});
        if (n.kind == NodeKind::and_node) {
            for (int child : n.children) nodes[out].children.push_back(self(self, child));
        } else if (n.kind == NodeKind::or_node) {
            nodes[out].children.push_back(self(self, n.children[tree.choices().at(id)]));
        }
        return out;
    };
    copy(copy, src.root());
    return Formula::from_nodes(std::move(nodes), std::nullopt, src.var_count());
}

std::optional<ProofTree> ProofTreeEnumerator::next() {
    if (done_) return std::nullopt;
    std::vector<int> prefix;
    if (!started_) {
        started_ = true;
    } else {
        // Odometer step over the variable-length encoding: bump the last
        // position that still has a sibling, drop everything after it.
        int pos = static_cast<int>(encoding_.size()) - 1;
        while (pos >= 0 && encoding_[pos] + 1 >= child_counts_[pos]) --pos;
        if (pos < 0) {
            done_ = true;
            return std::nullopt;
        }
        prefix.assign(encoding_.begin(), encoding_.begin() + pos + 1);
        ++prefix[pos];
    }
    auto walk = detail::walk_with_prefix(*formula_, prefix);
    encoding_ = walk.encoding;
    child_counts_ = walk.child_counts;
    return ProofTree(*formula_, std::move(walk.encoding), std::move(walk.choices));
}

} // namespace semiopt
