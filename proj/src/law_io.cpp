#include "finetti/law_io.hpp"

#include <fstream>
#include <map>

namespace finetti {

using nlohmann::json;

Rational rational_from_json(const json& value) {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return parse_rational(value.dump());
    if (value.is_number_float()) return parse_rational(value.dump());
    throw InputError("expected a rational, got " + value.dump());
}

json rational_to_json(const Rational& value) {
    return json{{"rational", to_string(value)}, {"decimal", to_double(value)}};
}

json to_json(const TypeVector& t) { return json{{"m", t.m()}, {"n", t.n()}, {"counts", t.counts()}}; }

TypeVector type_from_json(const json& j) {
    try {
        TypeVector t(j.at("counts").get<std::vector<Count>>());
        if (j.contains("m") && j.at("m").get<std::uint32_t>() != t.m()) throw InputError("type m does not match counts");
        if (j.contains("n") && j.at("n").get<Count>() != t.n()) throw InputError("type n does not match counts");
        return t;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed type: ") + e.what());
    }
}

json to_json(const ExchangeableLaw& law) {
    json weights = json::array();
    for (std::size_t i = 0; i < law.types().size(); ++i) {
        if (law.type_weights()[i] == 0) continue;
        weights.push_back({{"counts", law.types()[i].counts()}, {"w", to_string(law.type_weights()[i])}});
    }
    return json{{"m", law.m()}, {"n", law.n()}, {"typeWeights", weights}};
}

ExchangeableLaw law_from_json(const json& j, std::optional<Count> n) {
    try {
        const auto m = j.at("m").get<std::uint32_t>();
        if (m == 0) throw InputError("law alphabet must be non-empty");
        if (j.contains("typeWeights")) {
            const Count file_n = j.at("n").get<Count>();
            if (n && *n != file_n)
                throw InputError("requested n = " + std::to_string(*n) + " but the law file has n = " +
                                 std::to_string(file_n));
            const auto types = enumerate_types(Alphabet(m), file_n);
            std::map<std::vector<Count>, Rational> given;
            for (const auto& entry : j.at("typeWeights")) {
                const TypeVector t(entry.at("counts").get<std::vector<Count>>());
                if (t.m() != m || t.n() != file_n) throw InputError("type " + to_string(t) + " is not an n-type");
                if (!given.emplace(t.counts(), rational_from_json(entry.at("w"))).second)
                    throw InputError("type " + to_string(t) + " listed twice");
            }
            std::vector<Rational> weights;
            weights.reserve(types.size());
            for (const auto& t : types) {
                auto it = given.find(t.counts());
                weights.push_back(it == given.end() ? Rational(0) : it->second);
            }
            return ExchangeableLaw(Alphabet(m), file_n, Pmf(std::move(weights)));
        }
        if (j.contains("mixing")) {
            std::optional<Count> law_n = n;
            if (!law_n && j.contains("n")) law_n = j.at("n").get<Count>();
            if (!law_n) throw InputError("mixing law needs n");
            std::vector<MixtureAtom> atoms;
            for (const auto& entry : j.at("mixing")) {
                std::vector<Rational> probs;
                for (const auto& p : entry.at("pmf")) probs.push_back(rational_from_json(p));
                if (probs.size() != m) throw InputError("mixing component has the wrong alphabet size");
                atoms.push_back({Pmf(std::move(probs)), rational_from_json(entry.at("w"))});
            }
            return from_mixing_measure(MixingMeasure(std::move(atoms)), *law_n);
        }
        throw InputError("law needs either typeWeights or mixing");
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed law: ") + e.what());
    }
}

ExchangeableLaw load_law(const std::filesystem::path& path, std::optional<Count> n) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open law file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("cannot parse " + path.string() + ": " + e.what());
    }
    return law_from_json(j, n);
}

json to_json(const VerificationReport& report) {
    const BoundParams& p = report.params;
    json j{
        {"n", report.n},
        {"k", p.k},
        {"m", p.m},
        {"alpha", p.alpha},
        {"delta", p.delta},
        {"epsilon", p.vacuous ? json(nullptr) : json(p.epsilon)},
        {"divergence", report.divergence},
        {"holds", report.holds},
        {"valid_range", p.valid_range},
        {"effective_n", report.effective_n},
        {"binary_reference", report.binary_reference ? json(*report.binary_reference) : json(nullptr)},
        {"vacuous", p.vacuous},
        {"remark2_adjusted", report.remark2_adjusted},
        {"exact_arithmetic", report.exact_arithmetic},
        {"exact_zero", report.exact_zero},
    };
    if (!report.diagnostics.empty()) {
        json diag = json::array();
        for (const auto& d : report.diagnostics)
            diag.push_back({{"counts", d.type.counts()},
                            {"mu", rational_to_json(d.weight)},
                            {"conditional_divergence", d.conditional_divergence}});
        j["diagnostics"] = std::move(diag);
    }
    return j;
}

}  // namespace finetti
