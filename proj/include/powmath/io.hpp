// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWMATH_IO_HPP
#define POWMATH_IO_HPP

#include <powmath/simulator.hpp>

#include <json.hpp>

#include <string>

namespace powmath {

inline constexpr int kSchemaVersion = 1;

// Round to the given number of significant digits through the shortest
// decimal representation, so serialized values are stable across platforms.
double round_sig(double value, int digits);

// Throws std::domain_error outside [1, 17].
void validate_precision(int digits);

// Parse a simulation config from its JSON document. Unknown keys and schema
// mismatches throw std::invalid_argument; value violations propagate the
// underlying std::domain_error.
SimulationConfig config_from_json(const nlohmann::json& doc);

nlohmann::json config_to_json(const SimulationConfig& config);

// Report serialization used by the command line tool and the determinism
// tests; keys are sorted, numbers rounded to `precision` significant digits.
nlohmann::json report_to_json(const SimulationReport& report,
                              const SimulationConfig& config, int precision);

std::string report_to_csv(const SimulationReport& report,
                          const SimulationConfig& config, int precision);

} // namespace powmath

#endif // POWMATH_IO_HPP
