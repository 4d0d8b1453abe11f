#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace semiopt {

using BigInt = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.  All arithmetic and comparisons are exact; nothing here ever
/// rounds.  Serializes as "p/q" ("p" when q = 1), never as floating point.
class BigRational {
public:
    BigRational() : value_(0) {}
    BigRational(long num) : value_(num) {}          // NOLINT: implicit by design
    BigRational(long num, long den);
    BigRational(const BigInt& num, const BigInt& den);

    /// Parses "p/q" or a bare integer "p".  Throws ParseError on anything else.
    static BigRational from_string(std::string_view text);

    /// Exact value of a finite double (every finite double is a dyadic
    /// rational).  Throws ArgumentError on NaN or infinity.
    static BigRational from_double(double x);

    /// 2^e for any integer e, e.g. pow2(-5) = 1/32.
    static BigRational pow2(long e);

    const BigInt& numerator() const { return value_.get_num(); }
    const BigInt& denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    int sign() const { return sgn(value_); }

    BigRational pow(unsigned long e) const;
    BigRational reciprocal() const;
    BigInt floor() const;
    BigInt ceil() const;

    std::string str() const;
    double to_double() const { return value_.get_d(); }

    friend BigRational operator+(const BigRational& a, const BigRational& b) {
        return BigRational(a.value_ + b.value_);
    }
    friend BigRational operator-(const BigRational& a, const BigRational& b) {
        return BigRational(a.value_ - b.value_);
    }
    friend BigRational operator*(const BigRational& a, const BigRational& b) {
        return BigRational(a.value_ * b.value_);
    }
    friend BigRational operator/(const BigRational& a, const BigRational& b);
    friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.value_)); }

    BigRational& operator+=(const BigRational& o) { value_ += o.value_; return *this; }
    BigRational& operator-=(const BigRational& o) { value_ -= o.value_; return *this; }
    BigRational& operator*=(const BigRational& o) { value_ *= o.value_; return *this; }
    BigRational& operator/=(const BigRational& o);

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return a.value_ != b.value_; }
    friend bool operator<(const BigRational& a, const BigRational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const BigRational& a, const BigRational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const BigRational& a, const BigRational& b) { return a.value_ >= b.value_; }

private:
    explicit BigRational(mpq_class v) : value_(std::move(v)) {}

    mpq_class value_; // canonical at all times
};

} // namespace semiopt
