#pragma once

// JSON forms of types, laws and verification reports.
//
// Law files take one of two shapes:
//   {"m": 2, "n": 4, "typeWeights": [{"counts": [1, 3], "w": "1/2"}, ...]}
//   {"m": 2, "mixing": [{"pmf": ["3/4", "1/4"], "w": "1/2"}, ...]}
// Rationals are "p/q" strings, decimal strings, or JSON numbers. Types left
// out of typeWeights get weight zero. A mixing law needs n from the file or
// from the caller.

#include "finetti/definetti_bound.hpp"
#include "finetti/exchangeable.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>

namespace finetti {

Rational rational_from_json(const nlohmann::json& value);

/// {"p/q": ..., "decimal": ...}-style echo of a probability.
nlohmann::json rational_to_json(const Rational& value);

nlohmann::json to_json(const TypeVector& t);
TypeVector type_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExchangeableLaw& law);

/// Throws InputError on any schema or value problem.
ExchangeableLaw law_from_json(const nlohmann::json& j, std::optional<Count> n = std::nullopt);
ExchangeableLaw load_law(const std::filesystem::path& path, std::optional<Count> n = std::nullopt);

nlohmann::json to_json(const VerificationReport& report);

}  // namespace finetti
