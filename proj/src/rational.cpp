#include "finetti/rational.hpp"

#include "finetti/config.hpp"
#include "finetti/errors.hpp"

#include <atomic>
#include <cctype>
#include <cstdlib>
#include <numbers>

namespace finetti {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer parse_signed_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw InputError("malformed rational: '" + std::string(whole) + "'");
    Integer value(std::string(s), 10);
    return negative ? Integer(-value) : value;
}

Rational parse_decimal(std::string_view text) {
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        const Integer exp_value = parse_signed_integer(text.substr(e + 1), text);
        if (!exp_value.fits_slong_p() || abs(exp_value) > 4096)
            throw InputError("exponent out of range: '" + std::string(text) + "'");
        exponent = exp_value.get_si();
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long scale = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        const auto whole = mantissa.substr(0, dot);
        const auto frac = mantissa.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            throw InputError("malformed decimal: '" + std::string(text) + "'");
        digits = std::string(whole) + std::string(frac);
        scale = static_cast<long>(frac.size());
    } else {
        if (!all_digits(mantissa)) throw InputError("malformed decimal: '" + std::string(text) + "'");
        digits = std::string(mantissa);
    }
    Rational value(Integer(digits, 10));
    const long shift = exponent - scale;
    const Integer ten_pow = power(Integer(10), static_cast<std::uint64_t>(shift < 0 ? -shift : shift));
    if (shift < 0)
        value /= ten_pow;
    else
        value *= ten_pow;
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw InputError("empty rational");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const Integer num = parse_signed_integer(text.substr(0, slash), text);
        const Integer den = parse_signed_integer(text.substr(slash + 1), text);
        if (den == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
        Rational value(num, den);
        value.canonicalize();
        return value;
    }
    return parse_decimal(text);
}

std::string to_string(const Rational& value) {
    Rational canonical(value);
    canonical.canonicalize();
    return canonical.get_str(10);
}
std::string to_string(const Integer& value) { return value.get_str(10); }

double to_double(const Rational& value) {
    if (value == 0) return 0.0;
    Integer num = abs(value.get_num());
    const Integer& den = value.get_den();
    // Scale so the integer quotient has 63 or 64 bits, fold the remainder
    // into a sticky bit well below the 53-bit rounding position, and let the
    // uint64 -> double conversion do the rounding.
    const long shift = 63 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
    if (shift > 0) num <<= static_cast<mp_bitcnt_t>(shift);
    Integer scaled_den = den;
    if (shift < 0) scaled_den <<= static_cast<mp_bitcnt_t>(-shift);
    Integer quotient, remainder;
    mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), num.get_mpz_t(), scaled_den.get_mpz_t());
    std::uint64_t bits = mpz_get_ui(quotient.get_mpz_t());
    if (remainder != 0) bits |= 1;
    const double magnitude = std::ldexp(static_cast<double>(bits), static_cast<int>(-shift));
    return value < 0 ? -magnitude : magnitude;
}

double log_of(const Integer& value) {
    if (value <= 0) throw DomainError("log of non-positive integer");
    long exp2 = 0;
    const double mantissa = mpz_get_d_2exp(&exp2, value.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exp2) * std::numbers::ln2;
}

double log_of(const Rational& value) {
    if (value <= 0) throw DomainError("log of non-positive rational");
    return log_of(Integer(value.get_num())) - log_of(Integer(value.get_den()));
}

double log_ratio(const Rational& p, const Rational& q) {
    if (p <= 0 || q <= 0) throw DomainError("log_ratio needs positive arguments");
    if (p == q) return 0.0;
    const Rational rel = (p - q) / q;
    if (abs(rel) < Rational(1, 2)) return std::log1p(to_double(rel));
    return log_of(Rational(p / q));
}

double log_ratio(double p, double q) {
    if (p <= 0 || q <= 0) throw DomainError("log_ratio needs positive arguments");
    return std::log(p / q);
}

Integer factorial(std::uint64_t n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

Integer binomial(std::uint64_t n, std::uint64_t k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

Integer power(const Integer& base, std::uint64_t exponent) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

Rational power(const Rational& base, std::uint64_t exponent) {
    Rational out(power(Integer(base.get_num()), exponent), power(Integer(base.get_den()), exponent));
    out.canonicalize();
    return out;
}

namespace {
std::atomic<std::uint64_t>& cap_slot() {
    static std::atomic<std::uint64_t> cap = [] {
        if (const char* env = std::getenv("FINETTI_CAP")) {
            char* end = nullptr;
            const unsigned long long parsed = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && parsed > 0) return static_cast<std::uint64_t>(parsed);
        }
        return kDefaultEnumerationCap;
    }();
    return cap;
}
}  // namespace

std::uint64_t default_enumeration_cap() { return cap_slot().load(std::memory_order_relaxed); }

void set_enumeration_cap(std::uint64_t cap) {
    if (cap == 0) throw InputError("enumeration cap must be positive");
    cap_slot().store(cap, std::memory_order_relaxed);
}

}  // namespace finetti
