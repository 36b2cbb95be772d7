#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ciscodes/canon.hpp"

namespace ciscodes {

namespace record_flags {
constexpr uint32_t kSelfDual = 1u << 0;
constexpr uint32_t kFormallySelfDual = 1u << 1;
constexpr uint32_t kCis = 1u << 2;
constexpr uint32_t kEven = 1u << 3;
}  // namespace record_flags

/// One equivalence class: canonical key plus a payload object derived from
/// the key itself (canonical adjacency for matrices, its RREF for codes), so
/// stores are byte-identical regardless of sharding or scheduling.
struct ClassRecord {
    CanonicalKey key;
    Gf2Matrix object;
    int n = 0, k = 0, d = 0, dual_d = 0;
    uint32_t flags = 0;

    bool is_matrix_record() const { return d == 0 && n == k; }
    bool same_payload(const ClassRecord& o) const;

    std::string to_line() const;
    static ClassRecord parse_line(std::string_view line);
};

/// Build the record for a code class from its canonical key.  Tags (d, dual
/// distance, SD/FSD/even flags) are recomputed from the canonical generator.
ClassRecord code_record_from_key(const CanonicalKey& key);
/// Record for a GL(n) class from its canonical key; d and dual_d are 0.
ClassRecord matrix_record_from_key(const CanonicalKey& key);

/// Persistent set of canonical keys with payloads, iterated in ascending key
/// order.  The dedupe backbone of orderly generation.
class CanonStore {
  public:
    using Map = std::map<std::string, ClassRecord>;

    /// True iff the key was absent.  With validate set, re-canonicalizes the
    /// payload and throws KeyPayloadMismatch if it does not reproduce the key.
    bool insert_if_new(const ClassRecord& rec, bool validate = false);

    size_t size() const { return entries_.size(); }
    bool contains(const CanonicalKey& key) const { return entries_.count(key.bytes) > 0; }
    const ClassRecord* find(const CanonicalKey& key) const {
        auto it = entries_.find(key.bytes);
        return it == entries_.end() ? nullptr : &it->second;
    }
    Map::const_iterator begin() const { return entries_.begin(); }
    Map::const_iterator end() const { return entries_.end(); }

    std::vector<const ClassRecord*> records() const;

    /// Re-key every payload; throws KeyPayloadMismatch on the first failure.
    void validate_all() const;

    void save(const std::filesystem::path& path) const;
    void save_summary(const std::filesystem::path& path) const;
    static CanonStore load(const std::filesystem::path& path);

    std::string to_bytes() const;

  private:
    Map entries_;
};

/// Union of parts in order; duplicated keys must carry identical payloads and
/// tags (ConflictingPayload otherwise -- payloads are canonical so a mismatch
/// signals a tagging bug).
CanonStore merge(const std::vector<const CanonStore*>& parts);

struct GenerateOptions {
    int shards = 1;
    int shard_index = 0;
    int threads = 0;  // 0 = hardware concurrency
};

/// Orderly run over a deterministically indexed candidate stream: candidates
/// with index % shards == shard_index are produced, canonicalized records
/// deduped into the result.  The result depends only on (total, make).
CanonStore generate_indexed(uint64_t total,
                            const std::function<std::optional<ClassRecord>(uint64_t)>& make,
                            const GenerateOptions& opt = {});

/// One generation step: seeds and their extensions form the candidate stream,
/// the acceptor filters, the canonicalizer keys survivors.
template <class Payload>
CanonStore generate(const std::vector<Payload>& seeds,
                    const std::function<std::vector<Payload>(const Payload&)>& extender,
                    const std::function<bool(const Payload&)>& acceptor,
                    const std::function<ClassRecord(const Payload&)>& canonicalizer) {
    CanonStore store;
    for (const Payload& seed : seeds) {
        if (acceptor(seed)) store.insert_if_new(canonicalizer(seed));
        for (const Payload& cand : extender(seed))
            if (acceptor(cand)) store.insert_if_new(canonicalizer(cand));
    }
    return store;
}

}  // namespace ciscodes
