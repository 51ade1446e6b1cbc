#pragma once

#include <optional>
#include <string>

#include "sawlab/heights.hpp"
#include "sawlab/locality.hpp"
#include "sawlab/saw.hpp"

namespace sawlab {

/// Writes to a temporary file in the same directory, then renames it over
/// the target. Throws InputError if the file cannot be written.
void write_atomic(const std::string& path, const std::string& content);

/// ISO 8601 UTC, second resolution.
std::string timestamp_utc();

/// Columns n, sigma_n, b_n, lower_root, upper_root. Missing tables leave
/// their columns empty.
std::string counts_csv(const CountTable* sigma, const CountTable* bridges, const BoundsReport* bounds);

/// The CSV fields plus model and height identifiers. Counts are decimal
/// strings so that no reader rounds them.
std::string counts_json(const CountTable* sigma, const CountTable* bridges, const BoundsReport* bounds,
                        const std::optional<std::string>& timestamp);

std::string scan_json(const ScanReport& r, const std::optional<std::string>& timestamp);
/// One row per m: m, model, K, table_digest, agree_up_to, discrepancies, lower_bound, upper_bound.
std::string scan_csv(const ScanReport& r);

}  // namespace sawlab
