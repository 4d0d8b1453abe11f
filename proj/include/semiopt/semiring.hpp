#pragma once

#include <vector>

#include "semiopt/rational.hpp"

namespace semiopt {

enum class SemiringKind { viterbi, fuzzy, access };

/// Tagged value in one of the supported carriers: an exact rational in [0,1]
/// for the Viterbi and fuzzy semirings, an integer level in [0..k] for the
/// access-control semiring.  Tropical values are derived from Viterbi ones
/// via tropical_adapt and never appear here directly.
class SemiringValue {
public:
    static SemiringValue viterbi(BigRational v);
    static SemiringValue fuzzy(BigRational v);
    static SemiringValue access(int level);

    SemiringKind kind() const { return kind_; }
    const BigRational& rational() const;
    int level() const;

    bool operator==(const SemiringValue& o) const;

private:
    SemiringKind kind_ = SemiringKind::viterbi;
    BigRational rational_;
    int level_ = 0;
};

/// Negation on the carrier: an involutive bijection mapping the zero element
/// to the top element.  one_minus serves Viterbi and fuzzy; modular and
/// explicit tables serve the access semiring.
class NegationFn {
public:
    enum class Kind { one_minus, modular, table };

    static NegationFn one_minus();
    /// a -> k - a on [0..k].  Resolves the additive-inverse-mod-k ambiguity at
    /// 0 and k by mapping 0 -> k and k -> 0.
    static NegationFn modular(int k);
    /// Arbitrary table on [0..k]; must be a bijective involution with
    /// mapping[0] = k.  Validated on construction.
    static NegationFn table(int k, std::vector<int> mapping);

    Kind kind() const { return kind_; }
    int carrier_max() const { return k_; }

    BigRational apply(const BigRational& x) const; // one_minus only
    int apply_level(int a) const;                  // modular/table only

private:
    NegationFn() = default;

    Kind kind_ = Kind::one_minus;
    int k_ = 0;
    std::vector<int> table_;
};

/// Which semiring to evaluate over, plus the negation used on leaves.
struct SemiringSpec {
    SemiringKind kind = SemiringKind::viterbi;
    int k = 0; // access carrier bound
    NegationFn negation = NegationFn::one_minus();

    static SemiringSpec viterbi();
    static SemiringSpec fuzzy();
    static SemiringSpec access_modular(int k);
    static SemiringSpec access_with(int k, NegationFn negation);

    bool contains(const SemiringValue& v) const;
};

/// Total map from variable indices 1..n to carrier values.
class Interpretation {
public:
    static Interpretation viterbi(std::vector<BigRational> values);
    static Interpretation fuzzy(std::vector<BigRational> values);
    static Interpretation access(std::vector<int> levels);

    SemiringKind kind() const { return kind_; }
    int var_count() const;

    SemiringValue value(int var) const;
    const BigRational& rational(int var) const;
    int level(int var) const;

private:
    SemiringKind kind_ = SemiringKind::viterbi;
    std::vector<BigRational> rationals_;
    std::vector<int> levels_;
};

} // namespace semiopt
