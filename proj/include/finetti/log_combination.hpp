#pragma once

#include "finetti/rational.hpp"

#include <map>
#include <string>

namespace finetti {

/// An exact real of the form sum_p c_p * log(p) over primes p with rational
/// coefficients c_p. Logs of distinct primes are linearly independent over
/// the rationals, so two combinations are equal as reals exactly when their
/// coefficient maps are equal. This gives exact equality tests for
/// entropies and divergences of rational distributions.
///
/// Integers are factored by trial division; a cofactor that survives the
/// division pass must be prime or construction throws DomainError.
class LogCombination {
public:
    LogCombination() = default;

    /// log(value) for a positive rational.
    static LogCombination log_of(const Rational& value);

    const std::map<Integer, Rational>& coefficients() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    double to_double() const;

    LogCombination& operator+=(const LogCombination& other);
    LogCombination& operator-=(const LogCombination& other);
    LogCombination& operator*=(const Rational& scale);

    friend LogCombination operator+(LogCombination a, const LogCombination& b) { return a += b; }
    friend LogCombination operator-(LogCombination a, const LogCombination& b) { return a -= b; }
    friend LogCombination operator*(LogCombination a, const Rational& s) { return a *= s; }
    friend LogCombination operator*(const Rational& s, LogCombination a) { return a *= s; }
    friend LogCombination operator-(LogCombination a) { return a *= Rational(-1); }
    friend bool operator==(const LogCombination&, const LogCombination&) = default;

private:
    void add_term(const Integer& prime, const Rational& coeff);

    std::map<Integer, Rational> terms_;
};

/// "2*log(2) - 1/3*log(3)"; "0" for the empty combination.
std::string to_string(const LogCombination& value);

}  // namespace finetti
