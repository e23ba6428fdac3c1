#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "ssot/model.hpp"

namespace ssot {

/// Extensions treated as flat key/value config files.
const std::vector<std::string>& default_config_extensions();

struct ScanOptions {
    std::vector<std::string> extensions = default_config_extensions();
    /// Skip files that fail to parse instead of raising; skipped paths are
    /// reported in ScanReport::unparsed_files.
    bool lenient = false;
};

/// One occurrence of a key.
struct ScanEntry {
    std::string path;   // relative to the scan root, '/' separators
    std::string value;  // raw text, quotes stripped, otherwise uncompared
    bool derived = false;

    friend bool operator==(const ScanEntry&, const ScanEntry&) = default;
};

/// Drift analysis of one key that appears in two or more files.
struct ScanRecord {
    std::string key;
    std::vector<ScanEntry> locations;  // sorted by path
    std::size_t distinct_values = 0;   // textual comparison
    std::size_t dof = 0;               // after applying the derivation manifest
    bool coherent = false;
    double side_info_bits = 0.0;       // log2(distinct_values)
    int domain_size = 2;               // max(2, distinct_values)

    friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

struct ScanReport {
    std::vector<ScanRecord> records;          // sorted by key
    std::vector<std::string> unparsed_files;  // lenient mode only, sorted
    std::size_t files_scanned = 0;

    bool all_coherent() const;
};

/// Walks `root` for config files, extracts flat `key = value` / `key: value`
/// pairs, and reports every key present in more than one file: distinct
/// values, degrees of freedom, coherence and the side information needed to
/// resolve a disagreement.
///
/// A `derivation.manifest` file at the root may declare `derived <path> from
/// <path>` lines; declared copies stop counting as independent sources.
///
/// Errors: io_error (root missing or unreadable), ParseError for malformed
/// config lines (strict mode) or a malformed/cyclic manifest (any mode).
ScanReport scan_directory(const std::filesystem::path& root, const ScanOptions& options = {});

} // namespace ssot
