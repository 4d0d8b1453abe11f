#include "semiopt/rational.hpp"

#include <cctype>
#include <cmath>

#include "semiopt/errors.hpp"

namespace semiopt {

namespace {

bool valid_integer_token(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

BigRational::BigRational(long num, long den) {
    if (den == 0) throw ArgumentError("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

BigRational::BigRational(const BigInt& num, const BigInt& den) {
    if (sgn(den) == 0) throw ArgumentError("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

BigRational BigRational::from_string(std::string_view text) {
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den))
        throw ParseError("malformed rational '" + std::string(text) + "'");
    BigInt n(std::string(num), 10);
    BigInt d(std::string(den), 10);
    if (sgn(d) == 0) throw ParseError("rational with zero denominator '" + std::string(text) + "'");
    return BigRational(n, d);
}

BigRational BigRational::from_double(double x) {
    if (!std::isfinite(x)) throw ArgumentError("cannot convert non-finite double to rational");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    return BigRational(std::move(q));
}

BigRational BigRational::pow2(long e) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? BigRational(BigInt(1), p) : BigRational(p, BigInt(1));
}

BigRational BigRational::pow(unsigned long e) const {
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), value_.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), value_.get_den_mpz_t(), e);
    // num/den coprime implies num^e/den^e coprime; already canonical.
    return BigRational(std::move(r));
}

BigRational BigRational::reciprocal() const {
    if (is_zero()) throw ArgumentError("reciprocal of zero");
    mpq_class r;
    mpq_inv(r.get_mpq_t(), value_.get_mpq_t());
    return BigRational(std::move(r));
}

BigInt BigRational::floor() const {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
}

BigInt BigRational::ceil() const {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
}

std::string BigRational::str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

BigRational operator/(const BigRational& a, const BigRational& b) {
    if (b.is_zero()) throw ArgumentError("division by zero");
    return BigRational(mpq_class(a.value_ / b.value_));
}

BigRational& BigRational::operator/=(const BigRational& o) {
    if (o.is_zero()) throw ArgumentError("division by zero");
    value_ /= o.value_;
    return *this;
}

} // namespace semiopt
