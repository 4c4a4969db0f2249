#include "finetti/exchangeable.hpp"

#include "finetti/config.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace finetti {

std::uint64_t block_space_size(std::uint32_t m, std::uint32_t k) {
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        if (size > (std::uint64_t{1} << 62) / m) throw CapacityError("block space m^k too large");
        size *= m;
    }
    return size;
}

std::uint64_t encode_string(std::span<const Symbol> x, std::uint32_t m) {
    std::uint64_t index = 0;
    for (Symbol s : x) {
        if (s >= m) throw InputError("symbol outside alphabet");
        index = index * m + s;
    }
    return index;
}

std::vector<Symbol> decode_string(std::uint64_t index, std::uint32_t m, std::uint32_t k) {
    std::vector<Symbol> x(k);
    for (std::uint32_t i = k; i-- > 0;) {
        x[i] = static_cast<Symbol>(index % m);
        index /= m;
    }
    return x;
}

namespace {

// Symbol multiplicities of every string in A^k, indexed like encode_string.
std::vector<std::vector<Count>> block_multiplicities(std::uint32_t m, std::uint32_t k) {
    const std::uint64_t cells = block_space_size(m, k);
    std::vector<std::vector<Count>> out(cells, std::vector<Count>(m, 0));
    for (std::uint64_t c = 0; c < cells; ++c)
        for (Symbol s : decode_string(c, m, k)) ++out[c][s];
    return out;
}

Integer falling(Count x, Count r) {
    Integer out(1);
    for (Count j = 0; j < r; ++j) {
        if (x < j + 1) return Integer(0);
        out *= Integer(x - j);
    }
    return out;
}

template <class Scalar>
BasicPmf<Scalar> finish(std::vector<Rational> values) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
        for (auto& v : values) v.canonicalize();
        return BasicPmf<Scalar>(std::move(values));
    } else {
        std::vector<double> probs;
        probs.reserve(values.size());
        for (const auto& v : values) probs.push_back(to_double(v));
        return BasicPmf<double>(std::move(probs));
    }
}

BasicPmf<double> finish_float(std::vector<double> values) {
    double total = 0.0;
    for (double v : values) total += v;
    for (double& v : values) v /= total;
    return BasicPmf<double>(std::move(values));
}

void check_k(std::uint32_t k, Count n) {
    if (k < 1 || k > n) throw InputError("block length k must satisfy 1 <= k <= n");
}

}  // namespace

ExchangeableLaw::ExchangeableLaw(Alphabet alphabet, Count n, Pmf weights)
    : alphabet_(alphabet),
      n_(n),
      types_(std::make_shared<const std::vector<TypeVector>>(enumerate_types(alphabet, n))),
      weights_(std::move(weights)) {
    if (weights_.size() != types_->size())
        throw InputError("type weights have " + std::to_string(weights_.size()) + " entries, expected " +
                         std::to_string(types_->size()));
}

std::size_t ExchangeableLaw::index_of(const TypeVector& t) const {
    if (t.m() != m() || t.n() != n_) throw InputError("type " + to_string(t) + " is not an n-type of this law");
    const auto& all = *types_;
    auto it = std::lower_bound(all.begin(), all.end(), t);
    return static_cast<std::size_t>(it - all.begin());
}

Rational ExchangeableLaw::string_probability(std::span<const Symbol> x) const {
    if (x.size() != n_) throw InputError("string length differs from n");
    const TypeVector t = empirical_type(x, alphabet_);
    Rational p = weights_[index_of(t)] / Rational(type_class_size(t));
    p.canonicalize();
    return p;
}

MixingMeasure::MixingMeasure(std::vector<MixtureAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw InputError("mixing measure needs at least one atom");
    Rational total(0);
    for (const auto& atom : atoms_) {
        if (atom.component.size() != atoms_.front().component.size())
            throw InputError("mixing measure atoms live on different alphabets");
        if (atom.weight < 0) throw InputError("negative mixing weight");
        total += atom.weight;
    }
    if (total != 1) throw InputError("mixing weights do not sum to 1");
}

ExchangeableLaw law_from_type_weights(std::uint32_t m, Count n, Pmf weights) {
    return ExchangeableLaw(Alphabet(m), n, std::move(weights));
}

const Pmf& empirical_type_law(const ExchangeableLaw& law) { return law.type_weights(); }

Rational conditional_given_type(const TypeVector& t, std::span<const Symbol> prefix) {
    check_k(static_cast<std::uint32_t>(prefix.size()), t.n());
    std::vector<Count> used(t.m(), 0);
    Integer num(1);
    for (Symbol s : prefix) {
        if (s >= t.m()) throw InputError("symbol outside alphabet");
        if (t[s] <= used[s]) return Rational(0);
        num *= Integer(t[s] - used[s]);
        ++used[s];
    }
    Rational out(num, falling(t.n(), prefix.size()));
    out.canonicalize();
    return out;
}

template <class Scalar>
BasicPmf<Scalar> marginal(const ExchangeableLaw& law, std::uint32_t k) {
    check_k(k, law.n());
    const auto mult = block_multiplicities(law.m(), k);
    const auto& types = law.types();
    const auto& w = law.type_weights();
    if constexpr (std::is_same_v<Scalar, double>) {
        std::vector<double> values(mult.size(), 0.0);
        const double n = static_cast<double>(law.n());
        for (std::size_t ti = 0; ti < types.size(); ++ti) {
            if (w[ti] == 0) continue;
            const double weight = to_double(w[ti]);
            for (std::size_t c = 0; c < mult.size(); ++c) {
                double prod = weight;
                double drawn = 0.0;
                for (std::uint32_t a = 0; a < law.m() && prod != 0.0; ++a)
                    for (Count j = 0; j < mult[c][a]; ++j, drawn += 1.0)
                        prod *= std::max(0.0, static_cast<double>(types[ti][a]) - static_cast<double>(j)) / (n - drawn);
                values[c] += prod;
            }
        }
        return finish_float(std::move(values));
    } else {
        std::vector<Rational> values(mult.size(), Rational(0));
        for (std::size_t ti = 0; ti < types.size(); ++ti) {
            if (w[ti] == 0) continue;
            for (std::size_t c = 0; c < mult.size(); ++c) {
                Integer num(1);
                for (std::uint32_t a = 0; a < law.m() && num != 0; ++a) num *= falling(types[ti][a], mult[c][a]);
                if (num != 0) values[c] += w[ti] * num;
            }
        }
        const Integer denom = falling(law.n(), k);
        for (auto& v : values) v /= denom;
        return finish<Scalar>(std::move(values));
    }
}

template <class Scalar>
BasicPmf<Scalar> mixture_iid(std::span<const TypeVector> types, const Pmf& weights, std::uint32_t k) {
    if (types.size() != weights.size()) throw InputError("weights and types differ in length");
    if (types.empty()) throw InputError("empty mixture");
    if (k < 1) throw InputError("block length k must be positive");
    const std::uint32_t m = types.front().m();
    const Count n = types.front().n();
    const auto mult = block_multiplicities(m, k);
    for (const auto& t : types)
        if (t.m() != m || t.n() != n) throw InputError("mixture types differ in shape");
    if constexpr (std::is_same_v<Scalar, double>) {
        std::vector<double> values(mult.size(), 0.0);
        const double nd = static_cast<double>(n);
        for (std::size_t ti = 0; ti < types.size(); ++ti) {
            if (weights[ti] == 0) continue;
            const double weight = to_double(weights[ti]);
            for (std::size_t c = 0; c < mult.size(); ++c) {
                double prod = weight;
                for (std::uint32_t a = 0; a < m; ++a)
                    prod *= std::pow(static_cast<double>(types[ti][a]) / nd, static_cast<double>(mult[c][a]));
                values[c] += prod;
            }
        }
        return finish_float(std::move(values));
    } else {
        std::vector<Rational> values(mult.size(), Rational(0));
        for (std::size_t ti = 0; ti < types.size(); ++ti) {
            if (weights[ti] == 0) continue;
            for (std::size_t c = 0; c < mult.size(); ++c) {
                Integer num(1);
                for (std::uint32_t a = 0; a < m && num != 0; ++a) num *= power(Integer(types[ti][a]), mult[c][a]);
                if (num != 0) values[c] += weights[ti] * num;
            }
        }
        const Integer denom = power(Integer(n), k);
        for (auto& v : values) v /= denom;
        return finish<Scalar>(std::move(values));
    }
}

template <class Scalar>
BasicPmf<Scalar> mixture_iid(const MixingMeasure& mix, std::uint32_t k) {
    if (k < 1) throw InputError("block length k must be positive");
    const std::uint32_t m = mix.m();
    const auto mult = block_multiplicities(m, k);
    std::vector<Rational> values(mult.size(), Rational(0));
    for (const auto& atom : mix.atoms()) {
        if (atom.weight == 0) continue;
        for (std::size_t c = 0; c < mult.size(); ++c) {
            Rational prod(atom.weight);
            for (std::uint32_t a = 0; a < m && prod != 0; ++a) prod *= power(atom.component[a], mult[c][a]);
            values[c] += prod;
        }
    }
    return finish<Scalar>(std::move(values));
}

template <class Scalar>
BasicPmf<Scalar> mixture_iid(const ExchangeableLaw& law, std::uint32_t k) {
    return mixture_iid<Scalar>(std::span<const TypeVector>(law.types()), law.type_weights(), k);
}

template BasicPmf<Rational> marginal<Rational>(const ExchangeableLaw&, std::uint32_t);
template BasicPmf<double> marginal<double>(const ExchangeableLaw&, std::uint32_t);
template BasicPmf<Rational> mixture_iid<Rational>(std::span<const TypeVector>, const Pmf&, std::uint32_t);
template BasicPmf<double> mixture_iid<double>(std::span<const TypeVector>, const Pmf&, std::uint32_t);
template BasicPmf<Rational> mixture_iid<Rational>(const MixingMeasure&, std::uint32_t);
template BasicPmf<double> mixture_iid<double>(const MixingMeasure&, std::uint32_t);
template BasicPmf<Rational> mixture_iid<Rational>(const ExchangeableLaw&, std::uint32_t);
template BasicPmf<double> mixture_iid<double>(const ExchangeableLaw&, std::uint32_t);

ExchangeableLaw from_mixing_measure(const MixingMeasure& mix, Count n) {
    const Alphabet alphabet(mix.m());
    const auto types = enumerate_types(alphabet, n);
    std::vector<Rational> weights(types.size(), Rational(0));
    for (const auto& atom : mix.atoms()) {
        if (atom.weight == 0) continue;
        for (std::size_t ti = 0; ti < types.size(); ++ti)
            weights[ti] += atom.weight * type_class_probability(types[ti], atom.component);
    }
    for (auto& w : weights) w.canonicalize();
    return ExchangeableLaw(alphabet, n, Pmf(std::move(weights)));
}

ExchangeableLaw polya_urn_law(std::span<const Count> initial_counts, Count n) {
    if (initial_counts.empty()) throw InputError("urn needs at least one colour");
    Count total = 0;
    for (Count c : initial_counts) {
        if (c < 1) throw InputError("initial urn counts must be at least 1");
        total += c;
    }
    auto rising = [](Count x, Count r) {
        Integer out(1);
        for (Count j = 0; j < r; ++j) out *= Integer(x + j);
        return out;
    };
    const Alphabet alphabet(static_cast<std::uint32_t>(initial_counts.size()));
    const auto types = enumerate_types(alphabet, n);
    const Integer denom = rising(total, n);
    std::vector<Rational> weights;
    weights.reserve(types.size());
    // P(T) = |T| * prod_a alpha_a^(c_a) / A^(n) with x^(r) the rising factorial.
    for (const auto& t : types) {
        Integer num = type_class_size(t);
        for (std::size_t a = 0; a < t.m(); ++a) num *= rising(initial_counts[a], t[a]);
        Rational w(num, denom);
        w.canonicalize();
        weights.push_back(std::move(w));
    }
    return ExchangeableLaw(alphabet, n, Pmf(std::move(weights)));
}

ExchangeableLaw iid_law(const Pmf& q, Count n) {
    return from_mixing_measure(MixingMeasure({MixtureAtom{q, Rational(1)}}), n);
}

ExchangeableLaw delta_type_law(const TypeVector& t) {
    const auto types = enumerate_types(t.alphabet(), t.n());
    std::vector<Rational> weights(types.size(), Rational(0));
    auto it = std::lower_bound(types.begin(), types.end(), t);
    weights[static_cast<std::size_t>(it - types.begin())] = 1;
    return ExchangeableLaw(t.alphabet(), t.n(), Pmf(std::move(weights)));
}

ExchangeableLaw random_type_weight_law(std::uint32_t m, Count n, std::uint64_t seed) {
    const Alphabet alphabet(m);
    const Integer count = type_count(m, n);
    if (count > Integer(static_cast<unsigned long>(default_enumeration_cap())))
        throw CapacityError("too many types for a random law");
    SeededRng rng(seed);
    std::vector<Count> raw(count.get_ui());
    Count total = 0;
    for (auto& r : raw) {
        r = rng.below(1000);
        total += r;
    }
    if (total == 0) {
        raw[rng.below(raw.size())] = 1;
        total = 1;
    }
    std::vector<Rational> weights;
    weights.reserve(raw.size());
    for (Count r : raw) {
        Rational w{Integer(r), Integer(total)};
        w.canonicalize();
        weights.push_back(std::move(w));
    }
    return ExchangeableLaw(alphabet, n, Pmf(std::move(weights)));
}

}  // namespace finetti
