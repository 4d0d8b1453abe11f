#include "semiopt/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "semiopt/errors.hpp"

namespace semiopt {

int literal_order_key(int lit) {
    const int var = lit < 0 ? -lit : lit;
    return 2 * (var - 1) + (lit < 0 ? 1 : 0);
}

namespace {

std::vector<int> normalize_clause(std::vector<int> clause, int var_count, int line) {
    if (clause.empty()) throw ParseError("empty clause", line);
    std::sort(clause.begin(), clause.end(),
              [](int a, int b) { return literal_order_key(a) < literal_order_key(b); });
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (size_t i = 0; i < clause.size(); ++i) {
        const int lit = clause[i];
        const int var = lit < 0 ? -lit : lit;
        if (lit == 0) throw ParseError("literal 0 inside clause", line);
        if (var > var_count)
            throw ParseError("variable index " + std::to_string(var) + " exceeds declared count", line);
        if (i + 1 < clause.size() && clause[i + 1] == -lit)
            throw ParseError("tautological clause (contains x and not-x)", line);
    }
    return clause;
}

} // namespace

CnfFormula CnfFormula::from_clauses(int var_count, std::vector<std::vector<int>> clauses) {
    if (var_count < 1) throw ArgumentError("CNF needs at least one variable");
    CnfFormula f;
    f.var_count_ = var_count;
    f.clauses_.reserve(clauses.size());
    for (auto& c : clauses) f.clauses_.push_back(normalize_clause(std::move(c), var_count, 0));
    return f;
}

int CnfFormula::literal_count() const {
    int total = 0;
    for (const auto& c : clauses_) total += static_cast<int>(c.size());
    return total;
}

CnfFormula parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int var_count = -1;
    int declared_clauses = -1;
    std::vector<std::vector<int>> clauses;
    std::vector<int> current;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == 'c') continue;
        if (line[0] == 'p') {
            if (var_count >= 0) throw ParseError("duplicate header", line_no);
            std::istringstream hdr(line);
            std::string p, fmt;
            if (!(hdr >> p >> fmt >> var_count >> declared_clauses) || p != "p" || fmt != "cnf" ||
                var_count < 1 || declared_clauses < 0)
                throw ParseError("malformed header, expected 'p cnf <vars> <clauses>'", line_no);
            std::string rest;
            if (hdr >> rest) throw ParseError("trailing tokens after header", line_no);
            continue;
        }
        if (var_count < 0) throw ParseError("clause before 'p cnf' header", line_no);
        std::istringstream body(line);
        std::string tok;
        while (body >> tok) {
            int lit = 0;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
            if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
                throw ParseError("unexpected token '" + tok + "'", line_no);
            if (lit == 0) {
                clauses.push_back(normalize_clause(std::move(current), var_count, line_no));
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    }
    if (var_count < 0) throw ParseError("missing 'p cnf' header", line_no);
    if (!current.empty()) throw ParseError("last clause not terminated by 0", line_no);
    if (static_cast<int>(clauses.size()) != declared_clauses)
        throw ParseError("clause count mismatch: header declares " + std::to_string(declared_clauses) +
                             ", found " + std::to_string(clauses.size()),
                         line_no);
    return CnfFormula::from_clauses(var_count, std::move(clauses));
}

Formula Formula::from_nodes(std::vector<FormulaNode> nodes, std::optional<int> clause_count,
                            std::optional<int> declared_var_count) {
    if (nodes.empty()) throw ArgumentError("formula needs at least one node");
    Formula f;
    f.nodes_ = std::move(nodes);
    f.clause_count_ = clause_count;

    // Walk from the root and check that ids 0,1,2,... come out in pre-order,
    // which also guarantees every node is reachable exactly once.
    std::vector<int> stack{0};
    int expected = 0;
    int max_var = 0;
    while (!stack.empty()) {
        const int id = stack.back();
        stack.pop_back();
        if (id != expected++) throw ArgumentError("formula nodes are not in pre-order");
        const FormulaNode& n = f.nodes_[id];
        switch (n.kind) {
        case NodeKind::and_node:
        case NodeKind::or_node:
            if (n.children.empty()) throw ArgumentError("internal node with no children");
            for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
                if (*it <= id || *it >= static_cast<int>(f.nodes_.size()))
                    throw ArgumentError("child id out of range");
                stack.push_back(*it);
            }
            if (n.kind == NodeKind::or_node) f.or_nodes_.push_back(id);
            break;
        case NodeKind::pos_lit:
        case NodeKind::neg_lit:
            if (n.var < 1) throw ArgumentError("variable index must be >= 1");
            if (!n.children.empty()) throw ArgumentError("leaf with children");
            max_var = std::max(max_var, n.var);
            ++f.literal_count_;
            break;
        case NodeKind::const_true:
        case NodeKind::const_false:
            if (!n.children.empty()) throw ArgumentError("leaf with children");
            break;
        }
    }
    if (expected != static_cast<int>(f.nodes_.size()))
        throw ArgumentError("unreachable nodes in formula");
    // or_nodes_ got filled in pre-order by the walk above, except that the
    // explicit stack visits them in pre-order already; keep them sorted as a
    // belt-and-braces invariant.
    std::sort(f.or_nodes_.begin(), f.or_nodes_.end());
    f.var_count_ = std::max(max_var, declared_var_count.value_or(0));
    return f;
}

namespace {

struct Token {
    enum class Kind { lparen, rparen, atom } kind;
    std::string text;
    int line;
};

std::vector<Token> tokenize_sexpr(std::string_view text) {
    std::vector<Token> out;
    int line = 1;
    size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(') {
            out.push_back({Token::Kind::lparen, "(", line});
            ++i;
        } else if (c == ')') {
            out.push_back({Token::Kind::rparen, ")", line});
            ++i;
        } else {
            size_t j = i;
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
                   text[j] != '(' && text[j] != ')')
                ++j;
            out.push_back({Token::Kind::atom, std::string(text.substr(i, j - i)), line});
            i = j;
        }
    }
    return out;
}

class NnfParser {
public:
    explicit NnfParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    std::vector<FormulaNode> parse() {
        if (tokens_.empty()) throw ParseError("empty NNF input");
        parse_expr();
        if (pos_ != tokens_.size())
            throw ParseError("trailing tokens after formula", tokens_[pos_].line);
        return std::move(nodes_);
    }

private:
    const Token& peek() const {
        if (pos_ >= tokens_.size()) throw ParseError("unexpected end of input", last_line());
        return tokens_[pos_];
    }
    Token take() {
        const Token& t = peek();
        ++pos_;
        return t;
    }
    int last_line() const { return tokens_.empty() ? 1 : tokens_.back().line; }

    int parse_index(const char* head, int line) {
        const Token t = take();
        if (t.kind == Token::Kind::lparen && std::string_view(head) == "not")
            throw ParseError("negation applied to a non-leaf expression", t.line);
        if (t.kind != Token::Kind::atom)
            throw ParseError(std::string("expected variable index after '") + head + "'", line);
        int idx = 0;
        const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), idx);
        if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size())
            throw ParseError("expected variable index, got '" + t.text + "'", t.line);
        if (idx < 1) throw ParseError("unbound variable index " + t.text, t.line);
        return idx;
    }

    void parse_expr() {
        const Token t = take();
        if (t.kind == Token::Kind::rparen) throw ParseError("unexpected ')'", t.line);
        if (t.kind == Token::Kind::atom) {
            if (t.text == "true") {
                nodes_.push_back({NodeKind::const_true, 0, {}});
            } else if (t.text == "false") {
                nodes_.push_back({NodeKind::const_false, 0, {}});
            } else {
                throw ParseError("unknown token '" + t.text + "'", t.line);
            }
            return;
        }
        const Token head = take();
        if (head.kind != Token::Kind::atom) throw ParseError("expected operator after '('", head.line);
        if (head.text == "var" || head.text == "not") {
            const int idx = parse_index(head.text.c_str(), head.line);
            nodes_.push_back({head.text == "var" ? NodeKind::pos_lit : NodeKind::neg_lit, idx, {}});
            expect_rparen();
            return;
        }
        if (head.text == "and" || head.text == "or") {
            const int self = static_cast<int>(nodes_.size());
            nodes_.push_back({head.text == "and" ? NodeKind::and_node : NodeKind::or_node, 0, {}});
            std::vector<int> children;
            while (peek().kind != Token::Kind::rparen) {
                children.push_back(static_cast<int>(nodes_.size()));
                parse_expr();
            }
            take(); // ')'
            if (children.empty())
                throw ParseError("'" + head.text + "' needs at least one operand", head.line);
            nodes_[self].children = std::move(children);
            return;
        }
        throw ParseError("unknown token '" + head.text + "'", head.line);
    }

    void expect_rparen() {
        const Token t = take();
        if (t.kind != Token::Kind::rparen) throw ParseError("expected ')'", t.line);
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
    std::vector<FormulaNode> nodes_;
};

} // namespace

Formula parse_nnf(std::string_view text) {
    NnfParser parser(tokenize_sexpr(text));
    return Formula::from_nodes(parser.parse());
}

Formula cnf_to_formula(const CnfFormula& cnf) {
    if (cnf.clause_count() == 0) throw ArgumentError("cannot build a formula from an empty clause list");
    std::vector<FormulaNode> nodes;
    nodes.push_back({NodeKind::and_node, 0, {}});
    for (const auto& clause : cnf.clauses()) {
        const int or_id = static_cast<int>(nodes.size());
        nodes[0].children.push_back(or_id);
        nodes.push_back({NodeKind::or_node, 0, {}});
        for (int lit : clause) {
            nodes[or_id].children.push_back(static_cast<int>(nodes.size()));
            nodes.push_back({lit > 0 ? NodeKind::pos_lit : NodeKind::neg_lit, lit > 0 ? lit : -lit, {}});
        }
    }
    return Formula::from_nodes(std::move(nodes), cnf.clause_count(), cnf.var_count());
}

namespace {

void render_node(const Formula& f, int id, std::string& out) {
    const FormulaNode& n = f.node(id);
    switch (n.kind) {
    case NodeKind::and_node:
    case NodeKind::or_node:
        out += n.kind == NodeKind::and_node ? "(and" : "(or";
        for (int c : n.children) {
            out += ' ';
            render_node(f, c, out);
        }
        out += ')';
        break;
    case NodeKind::pos_lit:
        out += "(var " + std::to_string(n.var) + ")";
        break;
    case NodeKind::neg_lit:
        out += "(not " + std::to_string(n.var) + ")";
        break;
    case NodeKind::const_true:
        out += "true";
        break;
    case NodeKind::const_false:
        out += "false";
        break;
    }
}

} // namespace

std::string render_nnf(const Formula& f) {
    std::string out;
    render_node(f, f.root(), out);
    return out;
}

std::string render_dimacs(const CnfFormula& cnf) {
    std::string out = "p cnf " + std::to_string(cnf.var_count()) + " " +
                      std::to_string(cnf.clause_count()) + "\n";
    for (const auto& clause : cnf.clauses()) {
        for (int lit : clause) out += std::to_string(lit) + " ";
        out += "0\n";
    }
    return out;
}

std::optional<CnfFormula> cnf_view(const Formula& f) {
    const FormulaNode& root = f.node(f.root());
    if (root.kind != NodeKind::and_node) return std::nullopt;
    std::vector<std::vector<int>> clauses;
    for (int cid : root.children) {
        const FormulaNode& c = f.node(cid);
        std::vector<int> clause;
        if (c.kind == NodeKind::pos_lit || c.kind == NodeKind::neg_lit) {
            clause.push_back(c.kind == NodeKind::pos_lit ? c.var : -c.var);
        } else if (c.kind == NodeKind::or_node) {
            for (int lid : c.children) {
                const FormulaNode& l = f.node(lid);
                if (l.kind != NodeKind::pos_lit && l.kind != NodeKind::neg_lit) return std::nullopt;
                clause.push_back(l.kind == NodeKind::pos_lit ? l.var : -l.var);
            }
        } else {
            return std::nullopt;
        }
        clauses.push_back(std::move(clause));
    }
    try {
        return CnfFormula::from_clauses(f.var_count(), std::move(clauses));
    } catch (const Error&) {
        return std::nullopt; // e.g. tautological clause; not CNF-viewable
    }
}

namespace {

// Shared shape of both evaluators: explicit stack, children pushed after the
// parent so values come back in post-order.
template <class Value, class Leaf, class Join>
Value eval_tree(const Formula& f, Leaf leaf_value, Join join) {
    struct Frame {
        int id;
        size_t next_child = 0;
    };
    std::vector<Frame> work{{f.root()}};
    std::vector<Value> values;
    while (!work.empty()) {
        Frame& frame = work.back();
        const FormulaNode& n = f.node(frame.id);
        if (n.kind != NodeKind::and_node && n.kind != NodeKind::or_node) {
            values.push_back(leaf_value(n));
            work.pop_back();
            continue;
        }
        if (frame.next_child < n.children.size()) {
            work.push_back({n.children[frame.next_child++]});
            continue;
        }
        const size_t first = values.size() - n.children.size();
        Value acc = values[first];
        for (size_t i = first + 1; i < values.size(); ++i)
            acc = join(n.kind, std::move(acc), values[i]);
        values.resize(first);
        values.push_back(std::move(acc));
        work.pop_back();
    }
    return values.back();
}

} // namespace

SemiringValue eval_sem(const Formula& f, const Interpretation& pi, const SemiringSpec& spec) {
    if (pi.kind() != spec.kind) throw DomainError("interpretation kind does not match semiring");
    if (pi.var_count() < f.var_count())
        throw DomainError("interpretation is not total on the formula's variables");
    for (int v = 1; v <= f.var_count(); ++v)
        if (!spec.contains(pi.value(v))) throw DomainError("interpretation value outside carrier");

    if (spec.kind == SemiringKind::access) {
        const int level = eval_tree<int>(
            f,
            [&](const FormulaNode& n) {
                switch (n.kind) {
                case NodeKind::pos_lit: return pi.level(n.var);
                case NodeKind::neg_lit: return spec.negation.apply_level(pi.level(n.var));
                case NodeKind::const_true: return spec.k;
                default: return 0;
                }
            },
            [](NodeKind kind, int a, int b) {
                return kind == NodeKind::or_node ? std::max(a, b) : std::min(a, b);
            });
        return SemiringValue::access(level);
    }

    const bool fuzzy = spec.kind == SemiringKind::fuzzy;
    BigRational value = eval_tree<BigRational>(
        f,
        [&](const FormulaNode& n) -> BigRational {
            switch (n.kind) {
            case NodeKind::pos_lit: return pi.rational(n.var);
            case NodeKind::neg_lit: return spec.negation.apply(pi.rational(n.var));
            case NodeKind::const_true: return BigRational(1);
            default: return BigRational(0);
            }
        },
        [fuzzy](NodeKind kind, BigRational a, const BigRational& b) -> BigRational {
            if (kind == NodeKind::or_node) return std::max(a, b);
            if (fuzzy) return std::min(a, b);
            return a * b;
        });
    return fuzzy ? SemiringValue::fuzzy(std::move(value)) : SemiringValue::viterbi(std::move(value));
}

} // namespace semiopt
