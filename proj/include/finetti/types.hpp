#pragma once

// Alphabets, n-types and the method-of-types counting identities.

#include "finetti/config.hpp"
#include "finetti/errors.hpp"
#include "finetti/rational.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace finetti {

using Count = std::uint64_t;
using Symbol = std::uint32_t;

/// A finite alphabet {0, ..., m-1}.
class Alphabet {
public:
    explicit Alphabet(std::uint32_t size) : size_(size) {
        if (size == 0) throw InputError("alphabet must have at least one symbol");
    }
    std::uint32_t size() const { return size_; }
    friend bool operator==(Alphabet, Alphabet) = default;

private:
    std::uint32_t size_;
};

/// Histogram of a length-n string over an alphabet of size m.
class TypeVector {
public:
    /// n is derived from the counts; throws InputError when counts is empty
    /// or sums to zero.
    explicit TypeVector(std::vector<Count> counts);

    std::uint32_t m() const { return static_cast<std::uint32_t>(counts_.size()); }
    Count n() const { return n_; }
    Alphabet alphabet() const { return Alphabet(m()); }
    const std::vector<Count>& counts() const { return counts_; }
    Count operator[](std::size_t a) const { return counts_[a]; }

    friend bool operator==(const TypeVector&, const TypeVector&) = default;
    friend auto operator<=>(const TypeVector& a, const TypeVector& b) { return a.counts_ <=> b.counts_; }

private:
    std::vector<Count> counts_;
    Count n_ = 0;
};

std::string to_string(const TypeVector& t);

/// Probability vector over an indexed outcome space. Scalar is Rational for
/// the exact backend or double for the float backend.
template <class Scalar>
class BasicPmf {
public:
    BasicPmf() = default;

    /// Validates non-negativity and normalization (exact for Rational,
    /// within 1e-12 for double).
    explicit BasicPmf(std::vector<Scalar> probs) : probs_(std::move(probs)) {
        if (probs_.empty()) throw InputError("pmf must have at least one outcome");
        if constexpr (!std::is_same_v<Scalar, double>)
            for (auto& p : probs_) p.canonicalize();
        Scalar total = 0;
        for (const auto& p : probs_) {
            if (p < 0) throw InputError("pmf has a negative entry");
            total += p;
        }
        if constexpr (std::is_same_v<Scalar, double>) {
            if (std::abs(total - 1.0) > 1e-12) throw InputError("pmf entries do not sum to 1");
        } else {
            if (total != 1) throw InputError("pmf entries do not sum to 1");
        }
    }

    /// Uniform distribution on `size` outcomes.
    static BasicPmf uniform(std::size_t size) {
        if (size == 0) throw InputError("pmf must have at least one outcome");
        if constexpr (std::is_same_v<Scalar, double>)
            return BasicPmf(std::vector<double>(size, 1.0 / static_cast<double>(size)));
        else
            return BasicPmf(std::vector<Scalar>(size, Scalar(1, static_cast<unsigned long>(size))));
    }

    std::size_t size() const { return probs_.size(); }
    const Scalar& operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<Scalar>& probs() const { return probs_; }
    std::span<const Scalar> view() const { return probs_; }

    friend bool operator==(const BasicPmf&, const BasicPmf&) = default;

private:
    std::vector<Scalar> probs_;
};

using Pmf = BasicPmf<Rational>;
using FloatPmf = BasicPmf<double>;

FloatPmf to_float(const Pmf& pmf);

/// C(n+m-1, m-1): the number of n-types on an alphabet of size m.
Integer type_count(std::uint32_t m, Count n);

/// Visits every n-type over an alphabet of size m in lexicographic order of
/// the count vectors, (0,...,0,n) first. Streams; no capacity check.
void for_each_type(std::uint32_t m, Count n, const std::function<void(const TypeVector&)>& visit);

/// All n-types in the order of for_each_type. Throws CapacityError when the
/// count exceeds cap.
std::vector<TypeVector> enumerate_types(Alphabet alphabet, Count n,
                                        std::uint64_t cap = default_enumeration_cap());

/// Multinomial coefficient n! / prod counts!.
Integer type_class_size(const TypeVector& t);

/// Q^n(T(P)) = |T(P)| prod_a Q(a)^counts(a).
Rational type_class_probability(const TypeVector& t, const Pmf& q);
double type_class_probability(const TypeVector& t, const FloatPmf& q);

TypeVector empirical_type(std::span<const Symbol> x, Alphabet alphabet);
Pmf type_to_pmf(const TypeVector& t);

template <class Scalar>
struct SequenceIdentity {
    Scalar lhs;
    Scalar rhs;
};

/// Both sides of prod_i Q(x_i) = exp(-n[H(P) + D(P||Q)]) with P the type of
/// x. The exact overload evaluates the right side without logarithms:
/// exp(-nH(P)) = prod (c_a/n)^{c_a} and exp(-nD(P||Q)) = prod (nQ(a)/c_a)^{c_a}.
/// The float overload goes through the logs and throws DomainError when a
/// symbol of x has Q probability zero.
SequenceIdentity<Rational> sequence_probability_identity(std::span<const Symbol> x, const Pmf& q);
SequenceIdentity<double> sequence_probability_identity(std::span<const Symbol> x, const FloatPmf& q);

/// Outcome of checking the counting bounds for one type against one Q.
struct TypeBoundsCheck {
    bool type_count_bound = false;   // |P_n| <= (n+1)^m
    bool size_lower = false;         // (n+1)^{-m} e^{nH(P)} <= |T(P)|
    bool size_upper = false;         // |T(P)| <= e^{nH(P)}
    bool probability_lower = false;  // (n+1)^{-m} e^{-nD(P||Q)} <= Q^n(T(P))
    bool probability_upper = false;  // Q^n(T(P)) <= e^{-nD(P||Q)}

    bool all() const {
        return type_count_bound && size_lower && size_upper && probability_lower && probability_upper;
    }
};

/// Exact check: e^{nH(P)} and e^{-nD(P||Q)} are rational for rational P, Q,
/// so every comparison is between big rationals.
TypeBoundsCheck check_type_bounds(const TypeVector& t, const Pmf& q);

}  // namespace finetti
