#pragma once

// Exchangeable laws on A^n in canonical form (a distribution over n-types,
// uniform inside each type class), their k-marginals, and finite mixtures
// of i.i.d. laws.

#include "finetti/types.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace finetti {

/// m^k, the number of strings of length k. Throws CapacityError if it does
/// not fit in 62 bits.
std::uint64_t block_space_size(std::uint32_t m, std::uint32_t k);

/// Strings of A^k are indexed base m, most significant symbol first.
std::uint64_t encode_string(std::span<const Symbol> x, std::uint32_t m);
std::vector<Symbol> decode_string(std::uint64_t index, std::uint32_t m, std::uint32_t k);

/// An exchangeable law on A^n, stored by the law of its empirical type.
class ExchangeableLaw {
public:
    /// weights is indexed like enumerate_types(alphabet, n).
    ExchangeableLaw(Alphabet alphabet, Count n, Pmf weights);

    Alphabet alphabet() const { return alphabet_; }
    std::uint32_t m() const { return alphabet_.size(); }
    Count n() const { return n_; }
    const std::vector<TypeVector>& types() const { return *types_; }
    const Pmf& type_weights() const { return weights_; }

    /// Position of t in types(); throws InputError if t is not an n-type here.
    std::size_t index_of(const TypeVector& t) const;

    /// Probability of one particular string x in A^n.
    Rational string_probability(std::span<const Symbol> x) const;

private:
    Alphabet alphabet_;
    Count n_;
    std::shared_ptr<const std::vector<TypeVector>> types_;
    Pmf weights_;
};

struct MixtureAtom {
    Pmf component;
    Rational weight;
};

/// Finitely supported measure on PMFs over A.
class MixingMeasure {
public:
    explicit MixingMeasure(std::vector<MixtureAtom> atoms);

    std::uint32_t m() const { return static_cast<std::uint32_t>(atoms_.front().component.size()); }
    const std::vector<MixtureAtom>& atoms() const { return atoms_; }

private:
    std::vector<MixtureAtom> atoms_;
};

ExchangeableLaw law_from_type_weights(std::uint32_t m, Count n, Pmf weights);

/// The law of the empirical type, i.e. the mixing measure of the finite
/// de Finetti bound. Identity on the canonical representation.
const Pmf& empirical_type_law(const ExchangeableLaw& law);

/// Probability that a uniformly random arrangement of the multiset t starts
/// with prefix: prod_i (t(a_i) - #{j < i : a_j = a_i}) / (n - i + 1).
Rational conditional_given_type(const TypeVector& t, std::span<const Symbol> prefix);

/// P_k on A^k. Scalar selects the exact (Rational) or float (double) backend.
template <class Scalar = Rational>
BasicPmf<Scalar> marginal(const ExchangeableLaw& law, std::uint32_t k);

/// sum_T w(T) (T/n)^k over n-types T.
template <class Scalar = Rational>
BasicPmf<Scalar> mixture_iid(std::span<const TypeVector> types, const Pmf& weights, std::uint32_t k);

/// sum_j w_j Q_j^k.
template <class Scalar = Rational>
BasicPmf<Scalar> mixture_iid(const MixingMeasure& mix, std::uint32_t k);

/// M_{mu,k} with mu the empirical type law of `law`.
template <class Scalar = Rational>
BasicPmf<Scalar> mixture_iid(const ExchangeableLaw& law, std::uint32_t k);

/// The exchangeable law on A^n of n draws from the mixture.
ExchangeableLaw from_mixing_measure(const MixingMeasure& mix, Count n);

/// n draws from a Polya urn with unit reinforcement started at
/// initial_counts (each >= 1).
ExchangeableLaw polya_urn_law(std::span<const Count> initial_counts, Count n);

ExchangeableLaw iid_law(const Pmf& q, Count n);
ExchangeableLaw delta_type_law(const TypeVector& t);

/// Type weights drawn as independent integers in [0, 1000) and normalized;
/// at least one weight is positive.
ExchangeableLaw random_type_weight_law(std::uint32_t m, Count n, std::uint64_t seed);

}  // namespace finetti
