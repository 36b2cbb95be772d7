#include "ciscodes/store.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

namespace ciscodes {

bool ClassRecord::same_payload(const ClassRecord& o) const {
    return object == o.object && n == o.n && k == o.k && d == o.d && dual_d == o.dual_d &&
           flags == o.flags;
}

std::string ClassRecord::to_line() const {
    std::ostringstream out;
    out << key.hex() << '\t' << n << '\t' << k << '\t' << d << '\t' << dual_d << '\t' << flags
        << '\t';
    for (int r = 0; r < object.nrows(); ++r) {
        if (r) out << ',';
        out << object.row(r).to_string();
    }
    return out.str();
}

ClassRecord ClassRecord::parse_line(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '\t') {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    if (fields.size() != 7) throw ParseError("ClassRecord: expected 7 tab-separated fields");
    auto to_int = [](std::string_view s) {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw ParseError("ClassRecord: bad integer field");
        return v;
    };
    ClassRecord rec;
    rec.key = CanonicalKey::from_hex(fields[0]);
    rec.n = to_int(fields[1]);
    rec.k = to_int(fields[2]);
    rec.d = to_int(fields[3]);
    rec.dual_d = to_int(fields[4]);
    rec.flags = static_cast<uint32_t>(to_int(fields[5]));
    std::vector<BitVec> rows;
    std::string_view body = fields[6];
    start = 0;
    for (size_t i = 0; i <= body.size(); ++i) {
        if (i == body.size() || body[i] == ',') {
            rows.push_back(BitVec::from_string(body.substr(start, i - start)));
            start = i + 1;
        }
    }
    rec.object = Gf2Matrix(std::move(rows));
    return rec;
}

ClassRecord code_record_from_key(const CanonicalKey& key) {
    ClassRecord rec;
    rec.key = key;
    rec.object = rref_basis(key_adjacency(key));
    LinearCode code(rec.object);
    rec.n = code.n();
    rec.k = code.k();
    WeightDistribution wd = weight_distribution(code);
    rec.d = 0;
    bool even = true;
    for (int w = 1; w <= rec.n; ++w)
        if (wd.counts[w]) {
            if (rec.d == 0) rec.d = w;
            if (w & 1) even = false;
        }
    if (even) rec.flags |= record_flags::kEven;
    if (rec.k < rec.n) {
        LinearCode dual = dual_code(code);
        WeightDistribution dual_wd = weight_distribution(dual);
        for (int w = 1; w <= rec.n; ++w)
            if (dual_wd.counts[w]) {
                rec.dual_d = w;
                break;
            }
        if (rec.n == 2 * rec.k) {
            if (is_self_dual(code)) rec.flags |= record_flags::kSelfDual;
            if (wd == dual_wd) rec.flags |= record_flags::kFormallySelfDual;
        }
    }
    return rec;
}

ClassRecord matrix_record_from_key(const CanonicalKey& key) {
    ClassRecord rec;
    rec.key = key;
    rec.object = key_adjacency(key);
    rec.n = rec.object.nrows();
    rec.k = rec.object.ncols();
    return rec;
}

namespace {

CanonicalKey rekey(const ClassRecord& rec) {
    if (rec.is_matrix_record()) return matrix_key(rec.object);
    return code_key(LinearCode(rec.object));
}

}  // namespace

bool CanonStore::insert_if_new(const ClassRecord& rec, bool validate) {
    if (validate && rekey(rec) != rec.key)
        throw KeyPayloadMismatch("insert_if_new: payload does not canonicalize to key");
    return entries_.emplace(rec.key.bytes, rec).second;
}

std::vector<const ClassRecord*> CanonStore::records() const {
    std::vector<const ClassRecord*> out;
    out.reserve(entries_.size());
    for (const auto& [_, rec] : entries_) out.push_back(&rec);
    return out;
}

void CanonStore::validate_all() const {
    for (const auto& [_, rec] : entries_)
        if (rekey(rec) != rec.key)
            throw KeyPayloadMismatch("validate_all: stale payload for key " + rec.key.hex());
}

void CanonStore::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << to_bytes();
}

std::string CanonStore::to_bytes() const {
    std::string out;
    for (const auto& [_, rec] : entries_) {
        out += rec.to_line();
        out += '\n';
    }
    return out;
}

void CanonStore::save_summary(const std::filesystem::path& path) const {
    std::map<int, uint64_t> by_d;
    for (const auto& [_, rec] : entries_) ++by_d[rec.d];
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "total\t" << entries_.size() << '\n';
    for (const auto& [d, count] : by_d) out << "d=" << d << '\t' << count << '\n';
}

CanonStore CanonStore::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    CanonStore store;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        store.insert_if_new(ClassRecord::parse_line(line));
    }
    return store;
}

CanonStore merge(const std::vector<const CanonStore*>& parts) {
    CanonStore out;
    for (const CanonStore* part : parts) {
        for (const auto& [key, rec] : *part) {
            if (!out.insert_if_new(rec)) {
                // Key already present: payloads are canonical, so any
                // difference means a tagging bug somewhere upstream.
                const ClassRecord* kept = out.find(rec.key);
                if (kept && !kept->same_payload(rec))
                    throw ConflictingPayload("merge: differing payloads for key " + rec.key.hex());
            }
        }
    }
    return out;
}

CanonStore generate_indexed(uint64_t total,
                            const std::function<std::optional<ClassRecord>(uint64_t)>& make,
                            const GenerateOptions& opt) {
    if (opt.shards < 1 || opt.shard_index < 0 || opt.shard_index >= opt.shards)
        throw PreconditionFailed("generate_indexed: bad shard configuration");
    uint64_t shard_index = static_cast<uint64_t>(opt.shard_index);
    uint64_t count =
        total > shard_index ? (total - shard_index + opt.shards - 1) / opt.shards : 0;

    unsigned threads = opt.threads > 0 ? static_cast<unsigned>(opt.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    if (threads > count) threads = count ? static_cast<unsigned>(count) : 1;

    std::vector<CanonStore> locals(threads);
    auto worker = [&](unsigned t) {
        uint64_t lo = count * t / threads;
        uint64_t hi = count * (t + 1) / threads;
        for (uint64_t j = lo; j < hi; ++j) {
            uint64_t i = shard_index + j * opt.shards;
            if (auto rec = make(i)) locals[t].insert_if_new(*rec);
        }
    };
    if (threads == 1) {
        worker(0);
        return std::move(locals[0]);
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (std::thread& th : pool) th.join();
    std::vector<const CanonStore*> parts;
    for (const CanonStore& s : locals) parts.push_back(&s);
    return merge(parts);
}

}  // namespace ciscodes
