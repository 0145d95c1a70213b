#pragma once

#include <cstdint>
#include <string>

namespace citemetric {

class Corpus;
class BaselineTable;
struct ScoringConfig;

// FNV-1a, 64-bit: offset basis 0xcbf29ce484222325, prime 0x100000001b3.
// Used for content fingerprints and seed derivation. Stable across
// platforms by definition.
std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t state);

// Content hashes over canonical serializations (sorted keys, fixed field
// order), printed as 16 lowercase hex digits. Identical inputs always
// fingerprint identically; any change to the data changes the hash with
// overwhelming probability.
std::string fingerprint_corpus(const Corpus& corpus);
std::string fingerprint_baselines(const BaselineTable& table);
std::string fingerprint_config(const ScoringConfig& config);

std::string to_hex(std::uint64_t value);

}  // namespace citemetric
