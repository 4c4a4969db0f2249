#include "finetti/log_combination.hpp"

#include "finetti/errors.hpp"

#include <utility>
#include <vector>

namespace finetti {

namespace {

constexpr unsigned long kTrialDivisionLimit = 1'000'000;

std::vector<std::pair<Integer, unsigned long>> factor(Integer value) {
    std::vector<std::pair<Integer, unsigned long>> out;
    for (unsigned long p = 2; p <= kTrialDivisionLimit; p += (p == 2 ? 1 : 2)) {
        if (value == 1) break;
        if (Integer(p) * p > value) break;
        unsigned long times = 0;
        while (mpz_divisible_ui_p(value.get_mpz_t(), p)) {
            mpz_divexact_ui(value.get_mpz_t(), value.get_mpz_t(), p);
            ++times;
        }
        if (times) out.emplace_back(Integer(p), times);
    }
    if (value == 1) return out;
    if (mpz_probab_prime_p(value.get_mpz_t(), 30) != 0) {
        out.emplace_back(value, 1);
        return out;
    }
    // Composite with no factor below the limit: accept only a prime power.
    const unsigned long bits = mpz_sizeinbase(value.get_mpz_t(), 2);
    for (unsigned long e = 2; e <= bits; ++e) {
        Integer root;
        if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), e) != 0 && mpz_probab_prime_p(root.get_mpz_t(), 30) != 0) {
            out.emplace_back(root, e);
            return out;
        }
    }
    throw DomainError("cannot factor " + value.get_str() + " exactly");
}

}  // namespace

LogCombination LogCombination::log_of(const Rational& value) {
    if (value <= 0) throw DomainError("log of non-positive rational");
    LogCombination out;
    for (const auto& [p, e] : factor(Integer(value.get_num()))) out.add_term(p, Rational(e));
    for (const auto& [p, e] : factor(Integer(value.get_den()))) out.add_term(p, Rational(-static_cast<long>(e)));
    return out;
}

double LogCombination::to_double() const {
    double sum = 0.0;
    for (const auto& [p, c] : terms_) sum += finetti::to_double(c) * finetti::log_of(p);
    return sum;
}

void LogCombination::add_term(const Integer& prime, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(prime, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

LogCombination& LogCombination::operator+=(const LogCombination& other) {
    for (const auto& [p, c] : other.terms_) add_term(p, c);
    return *this;
}

LogCombination& LogCombination::operator-=(const LogCombination& other) {
    for (const auto& [p, c] : other.terms_) add_term(p, Rational(-c));
    return *this;
}

LogCombination& LogCombination::operator*=(const Rational& scale) {
    if (scale == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [p, c] : terms_) c *= scale;
    return *this;
}

std::string to_string(const LogCombination& value) {
    if (value.is_zero()) return "0";
    std::string out;
    for (const auto& [p, c] : value.coefficients()) {
        const bool negative = c < 0;
        const Rational magnitude = negative ? Rational(-c) : c;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        if (magnitude != 1) out += to_string(magnitude) + "*";
        out += "log(" + p.get_str() + ")";
    }
    return out;
}

}  // namespace finetti
