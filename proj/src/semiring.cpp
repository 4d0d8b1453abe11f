#include "semiopt/semiring.hpp"

#include <numeric>

#include "semiopt/errors.hpp"

namespace semiopt {

namespace {

void require_unit_interval(const BigRational& v, const char* what) {
    if (v.sign() < 0 || v > BigRational(1))
        throw DomainError(std::string(what) + " outside [0,1]: " + v.str());
}

} // namespace

SemiringValue SemiringValue::viterbi(BigRational v) {
    require_unit_interval(v, "viterbi value");
    SemiringValue r;
    r.kind_ = SemiringKind::viterbi;
    r.rational_ = std::move(v);
    return r;
}

SemiringValue SemiringValue::fuzzy(BigRational v) {
    require_unit_interval(v, "fuzzy value");
    SemiringValue r;
    r.kind_ = SemiringKind::fuzzy;
    r.rational_ = std::move(v);
    return r;
}

SemiringValue SemiringValue::access(int level) {
    if (level < 0) throw DomainError("access level must be non-negative");
    SemiringValue r;
    r.kind_ = SemiringKind::access;
    r.level_ = level;
    return r;
}

const BigRational& SemiringValue::rational() const {
    if (kind_ == SemiringKind::access) throw DomainError("access value has no rational carrier");
    return rational_;
}

int SemiringValue::level() const {
    if (kind_ != SemiringKind::access) throw DomainError("rational value has no access level");
    return level_;
}

bool SemiringValue::operator==(const SemiringValue& o) const {
    if (kind_ != o.kind_) return false;
    return kind_ == SemiringKind::access ? level_ == o.level_ : rational_ == o.rational_;
}

NegationFn NegationFn::one_minus() {
    NegationFn f;
    f.kind_ = Kind::one_minus;
    return f;
}

NegationFn NegationFn::modular(int k) {
    if (k < 1) throw ArgumentError("access semiring needs k >= 1");
    NegationFn f;
    f.kind_ = Kind::modular;
    f.k_ = k;
    return f;
}

NegationFn NegationFn::table(int k, std::vector<int> mapping) {
    if (k < 1) throw ArgumentError("access semiring needs k >= 1");
    if (static_cast<int>(mapping.size()) != k + 1)
        throw ArgumentError("negation table must have k+1 entries");
    for (int a = 0; a <= k; ++a) {
        const int b = mapping[a];
        if (b < 0 || b > k) throw ArgumentError("negation table value out of carrier");
        if (mapping[b] != a) throw ArgumentError("negation table is not an involution");
    }
    if (mapping[0] != k) throw ArgumentError("negation must map 0 to the top element k");
    NegationFn f;
    f.kind_ = Kind::table;
    f.k_ = k;
    f.table_ = std::move(mapping);
    return f;
}

BigRational NegationFn::apply(const BigRational& x) const {
    if (kind_ != Kind::one_minus) throw DomainError("negation kind mismatch: expected one-minus");
    require_unit_interval(x, "negation argument");
    return BigRational(1) - x;
}

int NegationFn::apply_level(int a) const {
    if (kind_ == Kind::one_minus) throw DomainError("negation kind mismatch: expected level negation");
    if (a < 0 || a > k_) throw DomainError("negation argument outside [0..k]");
    return kind_ == Kind::modular ? k_ - a : table_[a];
}

SemiringSpec SemiringSpec::viterbi() {
    return SemiringSpec{SemiringKind::viterbi, 0, NegationFn::one_minus()};
}

SemiringSpec SemiringSpec::fuzzy() {
    return SemiringSpec{SemiringKind::fuzzy, 0, NegationFn::one_minus()};
}

SemiringSpec SemiringSpec::access_modular(int k) {
    return SemiringSpec{SemiringKind::access, k, NegationFn::modular(k)};
}

SemiringSpec SemiringSpec::access_with(int k, NegationFn negation) {
    if (negation.kind() == NegationFn::Kind::one_minus)
        throw ArgumentError("access semiring needs a level negation");
    if (negation.carrier_max() != k) throw ArgumentError("negation carrier does not match k");
    return SemiringSpec{SemiringKind::access, k, std::move(negation)};
}

bool SemiringSpec::contains(const SemiringValue& v) const {
    if (v.kind() != kind) return false;
    if (kind == SemiringKind::access) return v.level() >= 0 && v.level() <= k;
    return v.rational().sign() >= 0 && v.rational() <= BigRational(1);
}

Interpretation Interpretation::viterbi(std::vector<BigRational> values) {
    for (const auto& v : values) require_unit_interval(v, "interpretation value");
    Interpretation p;
    p.kind_ = SemiringKind::viterbi;
    p.rationals_ = std::move(values);
    return p;
}

Interpretation Interpretation::fuzzy(std::vector<BigRational> values) {
    for (const auto& v : values) require_unit_interval(v, "interpretation value");
    Interpretation p;
    p.kind_ = SemiringKind::fuzzy;
    p.rationals_ = std::move(values);
    return p;
}

Interpretation Interpretation::access(std::vector<int> levels) {
    for (int v : levels)
        if (v < 0) throw DomainError("access level must be non-negative");
    Interpretation p;
    p.kind_ = SemiringKind::access;
    p.levels_ = std::move(levels);
    return p;
}

int Interpretation::var_count() const {
    return static_cast<int>(kind_ == SemiringKind::access ? levels_.size() : rationals_.size());
}

SemiringValue Interpretation::value(int var) const {
    if (kind_ == SemiringKind::access) return SemiringValue::access(level(var));
    return kind_ == SemiringKind::viterbi ? SemiringValue::viterbi(rational(var))
                                          : SemiringValue::fuzzy(rational(var));
}

const BigRational& Interpretation::rational(int var) const {
    if (kind_ == SemiringKind::access) throw DomainError("access interpretation has no rationals");
    if (var < 1 || var > static_cast<int>(rationals_.size()))
        throw DomainError("interpretation is not total: missing variable " + std::to_string(var));
    return rationals_[var - 1];
}

int Interpretation::level(int var) const {
    if (kind_ != SemiringKind::access) throw DomainError("rational interpretation has no levels");
    if (var < 1 || var > static_cast<int>(levels_.size()))
        throw DomainError("interpretation is not total: missing variable " + std::to_string(var));
    return levels_[var - 1];
}

} // namespace semiopt
