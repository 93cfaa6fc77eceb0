#pragma once

// JSON and CSV renderings of the reports. Every JSON document carries a
// top-level "schema": 1; complex numbers are [re, im] pairs and fractions
// are "a/b" strings. CSV output has a header row and LF line endings.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "polysieve/characters.hpp"
#include "polysieve/sieve_norm.hpp"

namespace polysieve {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Complex& z);
Json to_json(const Rational& x);
Json to_json(const QuadPoly& f);
Json to_json(const IntRange& r);
Json to_json(const HypothesisCheck& h);
Json to_json(const BoundsReport& r);
Json to_json(const WitnessReport& r);
Json to_json(const TauIdentity& t);
Json to_json(const MultSieveCheck& m);

// {"schema": 1, "command": command, ...body}
Json document(std::string_view command, const Json& body);

// Pretty JSON with a trailing newline.
std::string render(const Json& doc);

// Shortest round-trip decimal form of a double.
std::string format_double(double x);

// One row per report: A,B,C,Q,N,norm,lower_bound,spacing_arm,trivial_bound,
// then theorem1_eps<e>,conjectural_eps<e> for each eps of the first report.
std::string bounds_csv(std::span<const BoundsReport> reports);

// Writes to a temporary file in the same directory, then renames it over the
// target, so readers never observe a partial report.
void write_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace polysieve
