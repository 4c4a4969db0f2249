#pragma once

// The sets E_k(Q) of distributions on A^k whose k coordinate marginals
// average to Q, their lattice points, and the certified quantities built on
// them: the randomized l-type construction, the maximum divergence over
// E_k(Q), and the conditional mean divergence of i.i.d. uniform blocks.

#include "finetti/config.hpp"
#include "finetti/info_measures.hpp"
#include "finetti/log_combination.hpp"
#include "finetti/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace finetti {

/// An l-type on the block alphabet A^k: counts over the m^k strings of
/// length k (indexed as in encode_string), summing to l.
using LtypeOnBlocks = TypeVector;

/// E_k(Q) as a query object: Q on A together with the block length.
struct MarginalAverageSet {
    Pmf target;
    std::uint32_t k;
};

/// Q^k on A^k.
template <class Scalar>
BasicPmf<Scalar> product_pmf(const BasicPmf<Scalar>& q, std::uint32_t k);

/// Average of the k coordinate marginals of w, a PMF on A^k.
template <class Scalar>
std::vector<Scalar> average_marginal(const BasicPmf<Scalar>& w, std::uint32_t m, std::uint32_t k);

/// Membership in E_k(Q); k is inferred from |W| = |Q|^k. Exact for
/// Rational, within 1e-12 per entry for double.
bool in_E_k(const Pmf& w, const Pmf& q);
bool in_E_k(const FloatPmf& w, const FloatPmf& q);

/// Visits the lattice points of E_k(Q) with l = n/k, where Q is an n-type:
/// every l-type on A^k whose symbol multiplicities add up to Q's counts.
/// Lexicographic order. Throws CapacityError after visiting `cap` nodes of
/// the search.
void for_each_E_k_type(const TypeVector& q, std::uint32_t k,
                       const std::function<void(const LtypeOnBlocks&)>& visit,
                       std::uint64_t cap = default_enumeration_cap());

std::vector<LtypeOnBlocks> enumerate_E_k_types(const TypeVector& q, std::uint32_t k,
                                               std::uint64_t cap = default_enumeration_cap());

/// Q given as a PMF and the lattice size l; Q * k * l must be integral,
/// otherwise the lattice set is empty.
std::vector<LtypeOnBlocks> enumerate_E_k_types(const Pmf& q, std::uint32_t k, Count l,
                                               std::uint64_t cap = default_enumeration_cap());

struct DivergenceDecomposition {
    double to_uniform = 0.0;          // D(W || U_k)
    double to_product = 0.0;          // D(W || Q^k)
    double product_to_uniform = 0.0;  // D(Q^k || U_k)
    bool pythagorean_holds = false;   // first = second + third
    bool linear_entropy_holds = false;  // D(W || Q^k) = k H(Q) - H(W)
};

/// Throws PreconditionError when W is not in E_k(Q). The exact overload
/// decides both identities by exact log-combination equality; the float one
/// within 1e-10.
DivergenceDecomposition divergence_decomposition(const Pmf& w, const Pmf& q);
DivergenceDecomposition divergence_decomposition(const FloatPmf& w, const FloatPmf& q);

enum class MaxDivergenceMode {
    ExactViaIdentity,  // vertices of the relaxed polytope E_k(Q)
    Grid,              // lattice points E_k(Q) ∩ P_l with l = n/k
};

struct MaxDivergenceResult {
    double value = 0.0;
    LogCombination exact;  // the maximum as an exact log-combination
    Pmf argmax;
    std::size_t candidates = 0;  // vertices or lattice points examined
};

/// max over E_k(Q) of D(W || Q^k) for an n-type Q. Uses
/// D(W || Q^k) = k H(Q) - H(W): the maximum of a convex function over a
/// polytope sits at a vertex. Blocks with Q^k = 0 are excluded up front,
/// since membership forces W to vanish there.
MaxDivergenceResult max_divergence_over_E_k(const TypeVector& q, std::uint32_t k,
                                            MaxDivergenceMode mode = MaxDivergenceMode::ExactViaIdentity,
                                            std::uint64_t cap = default_enumeration_cap());

/// [2/l + 4k/l + 2 sqrt(k/l)]^{1/2}. Throws DomainError unless l > k >= 1.
double lemma1_constant(Count l, std::uint32_t k);

/// One random arrangement of a string of type Q, cut into l blocks of k.
struct Lemma1Sample {
    LtypeOnBlocks blocks;
    double deviation = 0.0;     // max |W(a) - Q^k(a)|
    double l1_deviation = 0.0;  // sum |W(a) - Q^k(a)|
    double entropy_gap = 0.0;   // |H(W) - H(Q^k)|
};

/// Streams independent uniformly random arrangements of a fixed string of
/// type Q (Fisher-Yates, seeded).
class Lemma1Sampler {
public:
    Lemma1Sampler(const TypeVector& q, std::uint32_t k, std::uint64_t seed);
    Lemma1Sample next();
    Count l() const { return l_; }

private:
    Lemma1Sample evaluate(std::vector<Count> block_counts) const;

    TypeVector q_;
    std::uint32_t k_;
    Count l_;
    std::vector<Symbol> arrangement_;
    std::vector<double> product_;  // Q^k
    double product_entropy_;
    SeededRng rng_;
};

struct Lemma1Result {
    Lemma1Sample sample;
    double bound = 0.0;         // M
    std::size_t tries = 0;      // permutations drawn
    bool used_fallback = false;  // found by exhaustive search
    bool continuity_checked = false;  // 2 <= k <= sqrt(l)/10
    double continuity_bound = 0.0;    // -M log(M / m^k) when checked
    bool continuity_holds = true;
};

/// First sampled l-type within M of Q^k in max deviation. After max_tries
/// misses falls back to an exhaustive search of the lattice points; throws
/// ExhaustedError if that is impossible or finds nothing.
Lemma1Result lemma1_construct(const TypeVector& q, std::uint32_t k, Count l, std::uint64_t seed,
                              std::size_t max_tries = 1000, std::uint64_t cap = default_enumeration_cap());

struct ConditionalMean {
    double divergence = 0.0;  // E[D(W || Q^k) | W in E_k(Q)] in nats
    std::optional<LogCombination> exact;
    Pmf expected_type;        // E[W | W in E_k(Q)], a PMF on A^k
    std::size_t members = 0;
};

/// Conditional law of the l-type of l i.i.d. uniform blocks given that it
/// lies in E_k(Q): each lattice point W is weighted by its type class size
/// (the common factor m^{-kl} cancels). With exact = true the mean is also
/// returned as an exact log-combination.
ConditionalMean conditional_mean_divergence(const TypeVector& q, std::uint32_t k, Count l, bool exact = false,
                                            std::uint64_t cap = default_enumeration_cap());

struct TailBound {
    double log_bound = 0.0;  // 2 m^k log(l+1) - l delta
    double bound = 0.0;      // exp(log_bound), may exceed 1 or be +inf
    std::optional<double> exact;  // P(D(W||U_k) > D* + 2 delta | E_k(Q)) by enumeration
    bool exact_within_bound = true;
};

/// The large-deviation bound on the conditional probability of leaving
/// B_{2 delta}, and optionally its exact value.
TailBound partition_tail_bound(const TypeVector& q, std::uint32_t k, Count l, double delta, bool with_exact,
                               std::uint64_t cap = default_enumeration_cap());

}  // namespace finetti
