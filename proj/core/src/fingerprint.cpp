#include "citemetric/fingerprint.hpp"

#include <cstdio>

#include "citemetric/baseline.hpp"
#include "citemetric/config.hpp"
#include "citemetric/corpus.hpp"
#include "citemetric/csv.hpp"

namespace citemetric {

namespace {
constexpr std::uint64_t kOffsetBasis = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kPrime = 0x100000001b3ULL;

struct Hasher {
    std::uint64_t state = kOffsetBasis;

    void feed(const std::string& s) {
        state = fnv1a64(s.data(), s.size(), state);
        feed_byte('\x1f');  // field separator so adjacent fields cannot merge
    }
    void feed(std::int64_t v) { feed(std::to_string(v)); }
    void feed_byte(char c) { state = fnv1a64(&c, 1, state); }
};
}  // namespace

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t state) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        state ^= bytes[i];
        state *= kPrime;
    }
    return state;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    return fnv1a64(bytes.data(), bytes.size(), kOffsetBasis);
}

std::string to_hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string fingerprint_corpus(const Corpus& corpus) {
    Hasher h;
    for (const auto& pub : corpus.publications()) {  // already sorted by pub_id
        h.feed(pub.pub_id);
        h.feed(pub.journal_id);
        h.feed(static_cast<std::int64_t>(pub.pub_year));
        h.feed(to_string(pub.doc_type));
        for (const auto& f : pub.field_ids) h.feed(f);
        for (const auto& [year, count] : pub.citations_by_year) {
            if (count == 0) continue;
            h.feed(static_cast<std::int64_t>(year));
            h.feed(count);
        }
        h.feed_byte('\n');
    }
    for (const auto& [researcher, pubs] : corpus.researcher_oeuvres()) {
        h.feed(researcher);
        for (const auto& pub_id : pubs) h.feed(pub_id);
        h.feed_byte('\n');
    }
    return to_hex(h.state);
}

std::string fingerprint_baselines(const BaselineTable& table) {
    Hasher h;
    h.feed(to_string(table.mode()));
    h.feed(static_cast<std::int64_t>(table.window().end_year));
    for (const auto& [key, cell] : table.cells()) {
        h.feed(key.class_id);
        h.feed(static_cast<std::int64_t>(key.pub_year));
        h.feed(to_string(key.doc_type));
        h.feed(cell.count);
        h.feed(cell.total_citations);
    }
    return to_hex(h.state);
}

std::string fingerprint_config(const ScoringConfig& config) {
    return to_hex(fnv1a64(to_json_text(config)));
}

}  // namespace citemetric
