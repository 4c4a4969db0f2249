#include "finetti/definetti_bound.hpp"
#include "finetti/gibbs.hpp"
#include "finetti/info_measures.hpp"
#include "finetti/marginal_sets.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace finetti;

namespace {
const Pmf kHalf({Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("theorem constants at n = 100, k = 1") {
    const auto p = theorem_constants(100, 1, 2);
    CHECK(p.alpha == doctest::Approx(std::sqrt(0.26)).epsilon(1e-15));
    CHECK(p.alpha == doctest::Approx(0.509901951359278).epsilon(1e-13));
    CHECK(p.delta == doctest::Approx(0.696874840808116).epsilon(1e-13));
    CHECK(p.epsilon == doctest::Approx(1.39374968161623).epsilon(1e-13));
    CHECK(p.valid_range);
    CHECK_FALSE(p.vacuous);
    // The tail term is around e^{-50}.
    CHECK(p.log_tail < -40.0);
}

TEST_CASE("theorem constants at n = 800 and 802, k = 2") {
    const auto p = theorem_constants(800, 2, 2);
    CHECK(p.alpha == doctest::Approx(0.407947737139587).epsilon(1e-13));
    CHECK(p.delta == doctest::Approx(0.931308200776329).epsilon(1e-13));
    CHECK(p.epsilon == doctest::Approx(1.86261640155266).epsilon(1e-13));
    CHECK(p.valid_range);
    const auto q = theorem_constants(802, 2, 2);
    CHECK(q.alpha == doctest::Approx(0.407654959702).epsilon(1e-11));
    CHECK(q.delta == doctest::Approx(0.930932488421302).epsilon(1e-13));
    CHECK(q.epsilon == doctest::Approx(1.8618649768426).epsilon(1e-12));
}

TEST_CASE("theorem constants saturate instead of overflowing") {
    const auto p = theorem_constants(1000, 8, 4);
    CHECK(p.vacuous);
    CHECK(std::isinf(p.epsilon));
    CHECK_FALSE(p.valid_range);
    const auto one = theorem_constants(1, 1, 2);
    CHECK(std::isinf(one.log_tail));
    CHECK(one.log_tail < 0);
    CHECK_THROWS_AS(theorem_constants(10, 11, 2), InputError);
    CHECK_THROWS_AS(theorem_constants(10, 1, 1), InputError);
    CHECK_THROWS_AS(theorem_constants(0, 1, 2), InputError);
}

TEST_CASE("validity range boundary") {
    CHECK(theorem_constants(800, 2, 2).valid_range);
    CHECK_FALSE(theorem_constants(799, 2, 2).valid_range);
    CHECK(theorem_constants(2700, 3, 2).valid_range);
    CHECK_FALSE(theorem_constants(2699, 3, 2).valid_range);
}

TEST_CASE("epsilon is nonincreasing in n over the validity range") {
    for (std::uint32_t m = 2; m <= 3; ++m)
        for (std::uint32_t k = 1; k <= 3; ++k) {
            const Count start = 100 * Count{k} * k * k;
            double previous = theorem_constants(start, k, m).epsilon;
            for (Count n = start + 1; n <= start + 4000; n += 7) {
                const double e = theorem_constants(n, k, m).epsilon;
                if (std::isfinite(previous)) CHECK(e <= previous);
                previous = e;
            }
        }
}

TEST_CASE("effective n and the binary reference bound") {
    CHECK(effective_n(100, 1) == 100);
    CHECK(effective_n(10, 3) == 9);
    CHECK(effective_n(803, 2) == 802);
    CHECK(binary_reference_bound(800, 2) == doctest::Approx(0.167534128512981).epsilon(1e-13));
    CHECK(binary_reference_bound(100, 1) == doctest::Approx(0.232584352827681).epsilon(1e-13));
    CHECK(binary_reference_bound(800, 2) < theorem_constants(800, 2, 2).epsilon);
    CHECK(binary_reference_bound(800, 1) < binary_reference_bound(800, 2));
    CHECK_THROWS_AS(binary_reference_bound(5, 5), DomainError);
}

TEST_CASE("k = 1 is exact for every law") {
    for (Count n : {100, 200, 400, 800}) {
        for (const auto& law : {iid_law(kHalf, n), random_type_weight_law(2, n, n)}) {
            const auto r = verify_theorem(law, 1);
            CHECK(r.exact_arithmetic);
            CHECK(r.exact_zero);
            CHECK(r.divergence == 0.0);
            CHECK(r.holds);
        }
    }
}

TEST_CASE("fair coin at n = 800, k = 2") {
    const auto r = verify_theorem(iid_law(kHalf, 800), 2);
    CHECK(r.exact_arithmetic);
    CHECK(r.divergence > 0.0);
    CHECK(r.divergence < 0.05);
    CHECK(r.params.epsilon == doctest::Approx(1.86261640155266).epsilon(1e-13));
    CHECK(r.holds);
    CHECK(r.params.valid_range);
    REQUIRE(r.binary_reference);
    CHECK(*r.binary_reference == doctest::Approx(0.167534128512981).epsilon(1e-13));
    CHECK_FALSE(r.remark2_adjusted);
}

TEST_CASE("delta type law matches the hypergeometric computation") {
    const TypeVector t({400, 400});
    const auto r = verify_theorem(delta_type_law(t), 2);
    const double expected = relative_entropy(conditional_block_law(t, 2), Pmf::uniform(4)).value;
    CHECK(r.divergence == doctest::Approx(expected).epsilon(1e-14));
    CHECK(r.holds);
}

TEST_CASE("remark 2 adjustment") {
    const auto r = verify_theorem(iid_law(kHalf, 803), 2);
    CHECK(r.effective_n == 802);
    CHECK(r.remark2_adjusted);
    CHECK(r.params.n == 802);
    CHECK(r.params.epsilon == doctest::Approx(1.8618649768426).epsilon(1e-12));
    CHECK(r.holds);
}

TEST_CASE("exact and float backends agree") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto law = random_type_weight_law(2, 200, seed);
        const auto exact = verify_theorem(law, 2, Backend::Exact);
        const auto flt = verify_theorem(law, 2, Backend::Float);
        CHECK(exact.exact_arithmetic);
        CHECK_FALSE(flt.exact_arithmetic);
        CHECK(flt.divergence == doctest::Approx(exact.divergence).epsilon(1e-9));
    }
}

TEST_CASE("random laws satisfy the bound with margin") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto r = verify_theorem(random_type_weight_law(2, 800, seed), 2);
        CHECK(std::isfinite(r.divergence));
        CHECK(r.holds);
        CHECK(r.divergence < 0.05);
    }
}

TEST_CASE("diagnostics list the supported types") {
    const auto law = iid_law(kHalf, 6);
    const auto r = verify_theorem(law, 2, Backend::Exact, true);
    CHECK(r.diagnostics.size() == 7);
    for (const auto& d : r.diagnostics) CHECK(d.conditional_divergence >= 0.0);
    // The constant strings have degenerate block laws.
    CHECK(r.diagnostics.front().conditional_divergence == 0.0);
    CHECK(r.diagnostics.back().conditional_divergence == 0.0);
    CHECK_THROWS_AS(verify_theorem(law, 7), InputError);
    CHECK_THROWS_AS(verify_theorem(delta_type_law(TypeVector({4})), 1), InputError);
}

TEST_CASE("convexity chain") {
    const auto chain = convexity_chain_gap(iid_law(kHalf, 4), 2);
    CHECK(chain.mixture_divergence == doctest::Approx(0.0322692605687856).epsilon(1e-12));
    CHECK(chain.averaged_divergence == doctest::Approx(0.0637121387982741).epsilon(1e-12));
    CHECK(chain.expected_divergence == doctest::Approx(0.562335144618808).epsilon(1e-12));
    CHECK(chain.nondecreasing);

    const auto flat = convexity_chain_gap(iid_law(kHalf, 5), 1);
    CHECK(flat.mixture_divergence == 0.0);
    CHECK(flat.averaged_divergence == 0.0);
    CHECK(flat.expected_divergence == 0.0);

    const auto point = convexity_chain_gap(delta_type_law(TypeVector({6, 0})), 3);
    CHECK(point.expected_divergence == 0.0);

    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const std::uint32_t m = 2 + seed % 2;
        const auto c = convexity_chain_gap(random_type_weight_law(m, m == 2 ? 8 : 6, seed), 2);
        CHECK(c.nondecreasing);
    }
    CHECK_THROWS_AS(convexity_chain_gap(iid_law(kHalf, 5), 2), InputError);
}

TEST_CASE("alpha equals the lemma1 constant at l = n / k") {
    for (Count l : {100, 400, 1000, 12345})
        for (std::uint32_t k : {1u, 2u, 3u}) {
            if (l <= k) continue;
            const auto p = theorem_constants(k * l, k, 2);
            const double m_bound = lemma1_constant(l, k);
            CHECK(p.alpha == doctest::Approx(m_bound).epsilon(1e-14));
            CHECK(p.delta == doctest::Approx(continuity_expression(m_bound, std::pow(2.0, k))).epsilon(1e-13));
        }
}
