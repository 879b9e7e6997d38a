#pragma once

// On-disk convolution tables. A table file is a sequence of blocks, one per
// power n = 0..n_max. Each block is a header record (one JSON line)
//
//   {"format_version":1,"key":...,"group":...,"measure":[[hex,weight],...],
//    "watch":[hex,...] or null,"n":n,"n_max":...,"scale_log":...,
//    "stored_mass":...,"support_size":...,"complete":true,"atoms":count,
//    "records_sha256":...}
//
// followed by `count` atom records "<canonical key as lowercase hex> <mantissa>",
// the mantissa printed with 17 significant digits. records_sha256 covers the
// block's atom records, so truncation or edits are detected on load.

#include "rwg/measures.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace rwg {

inline constexpr int kCacheFormatVersion = 1;

// Hash over the group, the measure atoms, n_max and the retention set.
std::string table_key(const FinMeasure& mu, int n_max, const std::optional<std::vector<GroupElement>>& watch);

std::filesystem::path cache_path(const std::filesystem::path& dir, const std::string& key);

void cache_store(const ConvolutionTable& table, const std::filesystem::path& dir, const std::string& key);

// nullopt (with the reason) when the file is missing, from another format
// version, corrupt, or fails the key or mass checks.
std::optional<ConvolutionTable> cache_load(const std::filesystem::path& dir, const std::string& key,
                                           const FinMeasure& expected_base, std::string* reason = nullptr);

}  // namespace rwg
