// JSON serialization of sieve reports. Primes are emitted as decimal strings
// so consumers limited to 53-bit numbers cannot truncate values near 1e14.

#ifndef CARTAN_REPORT_HPP
#define CARTAN_REPORT_HPP

#include <string>

#include "cartan/sieve.hpp"

namespace cartan {

// Stable field order; identical runs produce byte-identical text except for
// the "stats" object.
std::string report_to_json(const SieveReport& report);

// Serialize and atomically replace `path` (write to temp, then rename).
void write_report(const SieveReport& report, const std::filesystem::path& path);

} // namespace cartan

#endif
