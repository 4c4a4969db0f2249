#include "finetti/exchangeable.hpp"
#include "finetti/info_measures.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace finetti;
using finetti::testing::all_strings;
using finetti::testing::random_rational_pmf;

namespace {

const Pmf kHalf({Rational(1, 2), Rational(1, 2)});

Pmf pmf(std::initializer_list<Rational> xs) { return Pmf(std::vector<Rational>(xs)); }

/// P_k by summing string probabilities over all of A^n.
std::vector<Rational> brute_marginal(const ExchangeableLaw& law, std::uint32_t k) {
    std::vector<Rational> out(block_space_size(law.m(), k));
    for (const auto& x : all_strings(law.m(), static_cast<std::uint32_t>(law.n()))) {
        const std::span<const Symbol> prefix(x.data(), k);
        out[encode_string(prefix, law.m())] += law.string_probability(x);
    }
    return out;
}

/// Probability of a string under the Polya urn, following the draws.
Rational urn_path_probability(std::vector<Count> urn, const std::vector<Symbol>& x) {
    Rational p = 1;
    Count total = std::accumulate(urn.begin(), urn.end(), Count{0});
    for (Symbol s : x) {
        p *= Rational(Integer(urn[s]), Integer(total));
        ++urn[s];
        ++total;
    }
    p.canonicalize();
    return p;
}

}  // namespace

TEST_CASE("string encoding round trips") {
    const std::vector<Symbol> x{1, 0, 2};
    CHECK(encode_string(x, 3) == 9 + 0 + 2);
    CHECK(decode_string(11, 3, 3) == x);
    CHECK(block_space_size(2, 10) == 1024);
    CHECK_THROWS_AS(block_space_size(2, 63), CapacityError);
    const std::vector<Symbol> bad{3};
    CHECK_THROWS_AS(encode_string(bad, 3), InputError);
}

TEST_CASE("law_from_type_weights examples") {
    const auto law = law_from_type_weights(2, 2, pmf({0, 1, 0}));
    CHECK(law.string_probability(std::vector<Symbol>{0, 1}) == Rational(1, 2));
    CHECK(law.string_probability(std::vector<Symbol>{1, 0}) == Rational(1, 2));
    CHECK(law.string_probability(std::vector<Symbol>{0, 0}) == 0);

    const auto fair = law_from_type_weights(2, 2, pmf({Rational(1, 4), Rational(1, 2), Rational(1, 4)}));
    for (const auto& x : all_strings(2, 2)) CHECK(fair.string_probability(x) == Rational(1, 4));

    const auto point = law_from_type_weights(2, 3, pmf({0, 0, 0, 1}));
    CHECK(point.string_probability(std::vector<Symbol>{0, 0, 0}) == 1);
    CHECK_THROWS_AS(law_from_type_weights(2, 3, pmf({0, 1})), InputError);
    CHECK_THROWS_AS(fair.string_probability(std::vector<Symbol>{0}), InputError);
    CHECK_THROWS_AS(fair.index_of(TypeVector({1, 2})), InputError);
}

TEST_CASE("empirical type law examples") {
    const TypeVector t({2, 1});
    CHECK(empirical_type_law(delta_type_law(t))[delta_type_law(t).index_of(t)] == 1);
    CHECK(empirical_type_law(iid_law(kHalf, 2)) == pmf({Rational(1, 4), Rational(1, 2), Rational(1, 4)}));
    const std::vector<Count> start{1, 1};
    CHECK(empirical_type_law(polya_urn_law(start, 2)) == pmf({Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
}

TEST_CASE("conditional_given_type examples") {
    CHECK(conditional_given_type(TypeVector({1, 1}), std::vector<Symbol>{0, 1}) == Rational(1, 2));
    CHECK(conditional_given_type(TypeVector({2, 2}), std::vector<Symbol>{0, 0}) == Rational(1, 6));
    CHECK(conditional_given_type(TypeVector({2, 2}), std::vector<Symbol>{0, 1}) == Rational(1, 3));
    CHECK(conditional_given_type(TypeVector({1, 1}), std::vector<Symbol>{0, 0}) == 0);
}

TEST_CASE("marginal examples") {
    const auto law = delta_type_law(TypeVector({2, 2}));
    CHECK(marginal(law, 2) == pmf({Rational(1, 6), Rational(1, 3), Rational(1, 3), Rational(1, 6)}));
    CHECK(marginal(iid_law(kHalf, 5), 2) == Pmf::uniform(4));
    CHECK_THROWS_AS(marginal(law, 5), InputError);
    CHECK_THROWS_AS(marginal(law, 0), InputError);
}

TEST_CASE("mixture examples") {
    const MixingMeasure single({{kHalf, Rational(1)}});
    CHECK(mixture_iid(single, 2) == Pmf::uniform(4));
    const MixingMeasure poles({{pmf({1, 0}), Rational(1, 2)}, {pmf({0, 1}), Rational(1, 2)}});
    CHECK(mixture_iid(poles, 2) == pmf({Rational(1, 2), 0, 0, Rational(1, 2)}));
    const auto types = enumerate_types(Alphabet(2), 2);
    CHECK(mixture_iid(types, pmf({Rational(1, 4), Rational(1, 2), Rational(1, 4)}), 1) == kHalf);
    CHECK_THROWS_AS(MixingMeasure({}), InputError);
    CHECK_THROWS_AS(MixingMeasure({{kHalf, Rational(1, 2)}}), InputError);
    CHECK_THROWS_AS(MixingMeasure({{kHalf, Rational(1, 2)}, {Pmf::uniform(3), Rational(1, 2)}}), InputError);
}

TEST_CASE("from_mixing_measure examples") {
    CHECK(empirical_type_law(from_mixing_measure(MixingMeasure({{kHalf, Rational(1)}}), 2)) ==
          pmf({Rational(1, 4), Rational(1, 2), Rational(1, 4)}));
    const auto point = from_mixing_measure(MixingMeasure({{pmf({1, 0}), Rational(1)}}), 3);
    CHECK(point.type_weights()[point.index_of(TypeVector({3, 0}))] == 1);
    const MixingMeasure two({{pmf({Rational(3, 4), Rational(1, 4)}), Rational(1, 2)},
                             {pmf({Rational(1, 4), Rational(3, 4)}), Rational(1, 2)}});
    CHECK(empirical_type_law(from_mixing_measure(two, 2)) == pmf({Rational(5, 16), Rational(3, 8), Rational(5, 16)}));
}

TEST_CASE("polya urn matches path enumeration") {
    const std::vector<Count> s11{1, 1};
    const std::vector<Count> s21{2, 1};
    CHECK(marginal(polya_urn_law(s11, 1), 1) == kHalf);
    CHECK(marginal(polya_urn_law(s21, 1), 1) == pmf({Rational(2, 3), Rational(1, 3)}));
    for (const auto& start : std::vector<std::vector<Count>>{{1, 1}, {2, 1}, {1, 2, 3}, {3, 1}}) {
        const auto m = static_cast<std::uint32_t>(start.size());
        for (std::uint32_t n = 1; n <= (m == 3 ? 4u : 6u); ++n) {
            const auto law = polya_urn_law(start, n);
            for (const auto& x : all_strings(m, n)) CHECK(law.string_probability(x) == urn_path_probability(start, x));
        }
    }
    const std::vector<Count> bad{0, 1};
    CHECK_THROWS_AS(polya_urn_law(bad, 2), InputError);
}

TEST_CASE("marginals agree with string enumeration on random laws") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::uint32_t m = 2 + seed % 2;
        const Count n = m == 2 ? 6 : 4;
        const auto law = random_type_weight_law(m, n, seed);
        for (std::uint32_t k = 1; k <= n; ++k) CHECK(marginal(law, k).probs() == brute_marginal(law, k));
    }
}

TEST_CASE("marginals are consistent and symmetric") {
    for (std::uint64_t seed = 100; seed < 115; ++seed) {
        const std::uint32_t m = 2 + seed % 2;
        const auto law = random_type_weight_law(m, 7, seed);
        for (std::uint32_t k = 1; k < 4; ++k) {
            const Pmf pk = marginal(law, k);
            const Pmf next = marginal(law, k + 1);
            // Summing out the last coordinate or the first gives P_k.
            std::vector<Rational> drop_last(pk.size()), drop_first(pk.size());
            for (std::uint64_t i = 0; i < next.size(); ++i) {
                drop_last[i / m] += next[i];
                drop_first[i % pk.size()] += next[i];
            }
            CHECK(drop_last == pk.probs());
            CHECK(drop_first == pk.probs());
            // Reversing the block leaves the probability unchanged.
            for (std::uint64_t i = 0; i < pk.size(); ++i) {
                auto x = decode_string(i, m, k);
                std::reverse(x.begin(), x.end());
                CHECK(pk[encode_string(x, m)] == pk[i]);
            }
        }
    }
}

TEST_CASE("marginals are absolutely continuous w.r.t. the mixture") {
    for (std::uint64_t seed = 200; seed < 220; ++seed) {
        const auto law = random_type_weight_law(2 + seed % 2, 6, seed);
        for (std::uint32_t k = 1; k <= 6; ++k) {
            const Pmf pk = marginal(law, k);
            const Pmf mk = mixture_iid(law, k);
            for (std::size_t i = 0; i < pk.size(); ++i)
                if (mk[i] == 0) CHECK(pk[i] == 0);
            CHECK(relative_entropy(pk, mk).finite());
        }
    }
}

TEST_CASE("k = 1 marginal equals the mixture exactly") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto law = random_type_weight_law(2 + seed % 3, 5, seed);
        CHECK(marginal(law, 1) == mixture_iid(law, 1));
    }
}

TEST_CASE("laws built from a mixing measure have i.i.d.-mixture marginals") {
    SeededRng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const std::uint32_t m = 2 + rng.below(2);
        std::vector<MixtureAtom> atoms;
        const std::size_t count = 1 + rng.below(3);
        const Pmf w = random_rational_pmf(rng, count, 10, true);
        for (std::size_t j = 0; j < count; ++j) atoms.push_back({random_rational_pmf(rng, m, 6), w[j]});
        const MixingMeasure mix(std::move(atoms));
        const auto law = from_mixing_measure(mix, 5);
        for (std::uint32_t k = 1; k <= 5; ++k) CHECK(marginal(law, k) == mixture_iid(mix, k));
    }
}

TEST_CASE("relabeling the alphabet permutes the marginal") {
    for (std::uint64_t seed = 300; seed < 310; ++seed) {
        const std::uint32_t m = 3;
        const auto law = random_type_weight_law(m, 5, seed);
        const std::vector<Symbol> relabel{2, 0, 1};
        std::vector<Rational> weights(law.types().size());
        for (std::size_t i = 0; i < law.types().size(); ++i) {
            std::vector<Count> c(m);
            for (Symbol a = 0; a < m; ++a) c[relabel[a]] = law.types()[i][a];
            weights[law.index_of(TypeVector(c))] = law.type_weights()[i];
        }
        const ExchangeableLaw moved(Alphabet(m), 5, Pmf(weights));
        const std::uint32_t k = 2;
        const Pmf a = marginal(law, k);
        const Pmf b = marginal(moved, k);
        const Pmf ma = mixture_iid(law, k);
        const Pmf mb = mixture_iid(moved, k);
        for (std::uint64_t i = 0; i < a.size(); ++i) {
            auto x = decode_string(i, m, k);
            for (auto& s : x) s = relabel[s];
            CHECK(b[encode_string(x, m)] == a[i]);
            CHECK(mb[encode_string(x, m)] == ma[i]);
        }
        CHECK(relative_entropy(a, ma).value == doctest::Approx(relative_entropy(b, mb).value).epsilon(1e-12));
    }
}

TEST_CASE("float paths agree with exact paths") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto law = random_type_weight_law(2, 12, seed);
        for (std::uint32_t k = 1; k <= 3; ++k) {
            const Pmf pk = marginal<Rational>(law, k);
            const FloatPmf fk = marginal<double>(law, k);
            const Pmf mk = mixture_iid<Rational>(law, k);
            const FloatPmf gk = mixture_iid<double>(law, k);
            for (std::size_t i = 0; i < pk.size(); ++i) {
                CHECK(fk[i] == doctest::Approx(pk[i].get_d()).epsilon(1e-13));
                CHECK(gk[i] == doctest::Approx(mk[i].get_d()).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("random laws are reproducible and normalized") {
    const auto a = random_type_weight_law(2, 10, 42);
    const auto b = random_type_weight_law(2, 10, 42);
    const auto c = random_type_weight_law(2, 10, 43);
    CHECK(a.type_weights() == b.type_weights());
    CHECK(a.type_weights() != c.type_weights());
}
