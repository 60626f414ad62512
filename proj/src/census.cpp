#include "sigmapow/census.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "sigmapow/arith.hpp"

namespace sigmapow {

namespace {

void check_params(uint64_t a, const std::vector<uint64_t>& bs, uint32_t k) {
    if (a == 0) throw std::domain_error("census: modulus must be positive");
    if (k < 2) throw std::domain_error("census: power must be at least 2");
    if (bs.empty()) throw std::domain_error("census: need at least one residue");
    std::set<uint64_t> seen;
    for (uint64_t b : bs) {
        if (b >= a) throw std::domain_error("census: residue must satisfy 0 <= b < a");
        if (!seen.insert(b).second) throw std::domain_error("census: duplicate residue");
    }
}

// Cut [1, max_x] at every multiple of block_size and at every checkpoint.
std::vector<std::pair<uint64_t, uint64_t>> plan_blocks(uint64_t max_x, uint64_t block_size,
                                                       const std::vector<uint64_t>& checkpoints) {
    std::vector<uint64_t> cuts(checkpoints);
    for (uint64_t c = block_size; c < max_x; c += block_size) cuts.push_back(c);
    cuts.push_back(max_x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<std::pair<uint64_t, uint64_t>> blocks;
    uint64_t lo = 1;
    for (uint64_t hi : cuts) {
        if (hi < lo) continue;
        blocks.emplace_back(lo, hi);
        lo = hi + 1;
    }
    return blocks;
}

BlockResult scan_block(uint64_t lo, uint64_t hi, uint64_t a, const std::vector<uint64_t>& bs,
                       uint32_t k, size_t hits_limit, const PrimeTable& table) {
    BlockResult block;
    block.lo = lo;
    block.hi = hi;
    SigmaSegment seg = sieve_sigma_segment(lo, hi, table);
    for (uint64_t b : bs) {
        uint64_t count = 0;
        std::vector<uint64_t> hit_list;
        uint64_t start = lo + (b + a - lo % a) % a;
        for (uint64_t n = start; n >= lo && n <= hi; n += a) {
            if (is_perfect_kth_power(seg.values[n - lo], k)) {
                ++count;
                if (hit_list.size() < hits_limit) hit_list.push_back(n);
            }
        }
        block.counts[b] = count;
        if (hits_limit > 0) block.hits[b] = std::move(hit_list);
    }
    return block;
}

}  // namespace

std::vector<CensusRecord> census_series(const std::vector<uint64_t>& checkpoints,
                                        uint64_t a, const std::vector<uint64_t>& bs, uint32_t k,
                                        const CensusOptions& options, const BlockSink& sink,
                                        const std::vector<BlockResult>& resume_from) {
    check_params(a, bs, k);
    if (options.block_size == 0) throw std::domain_error("census: block size must be positive");
    if (checkpoints.empty()) throw std::domain_error("census: need at least one checkpoint");

    std::vector<uint64_t> points(checkpoints);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.front() == 0) throw std::domain_error("census: checkpoints must be positive");
    uint64_t max_x = points.back();

    auto plan = plan_blocks(max_x, options.block_size, points);
    if (resume_from.size() > plan.size())
        throw std::invalid_argument("census: resume data has more blocks than this run");
    for (size_t i = 0; i < resume_from.size(); ++i) {
        if (resume_from[i].lo != plan[i].first || resume_from[i].hi != plan[i].second)
            throw std::invalid_argument("census: resume block boundaries do not match this run");
        for (uint64_t b : bs) {
            if (!resume_from[i].counts.count(b))
                throw std::invalid_argument("census: resume block is missing a residue count");
        }
    }

    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(max_x))) + 1;
    PrimeTable table = sieve_primes(std::max<uint64_t>(root, 2));

    std::vector<BlockResult> results(plan.size());
    std::vector<char> done(plan.size(), 0);
    for (size_t i = 0; i < resume_from.size(); ++i) {
        results[i] = resume_from[i];
        done[i] = 1;
    }

    std::atomic<size_t> next_block{resume_from.size()};
    std::mutex emit_mutex;
    size_t next_emit = resume_from.size();
    std::exception_ptr failure;

    auto worker = [&]() {
        for (;;) {
            size_t i = next_block.fetch_add(1);
            if (i >= plan.size()) return;
            BlockResult block = scan_block(plan[i].first, plan[i].second, a, bs, k,
                                           options.hits_limit, table);
            std::lock_guard<std::mutex> lock(emit_mutex);
            results[i] = std::move(block);
            done[i] = 1;
            while (next_emit < plan.size() && done[next_emit]) {
                if (sink) sink(results[next_emit]);
                ++next_emit;
            }
        }
    };

    unsigned thread_count = options.threads ? options.threads : std::thread::hardware_concurrency();
    if (thread_count == 0) thread_count = 1;
    size_t remaining = plan.size() - resume_from.size();
    thread_count = static_cast<unsigned>(std::min<size_t>(thread_count, std::max<size_t>(remaining, 1)));

    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        std::mutex failure_mutex;
        for (unsigned w = 0; w < thread_count; ++w) {
            threads.emplace_back([&]() {
                try {
                    worker();
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next_block.store(plan.size());
                }
            });
        }
        for (auto& t : threads) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<CensusRecord> records;
    std::map<uint64_t, uint64_t> running;
    std::map<uint64_t, std::vector<uint64_t>> all_hits;
    size_t block_idx = 0;
    for (uint64_t point : points) {
        while (block_idx < results.size() && results[block_idx].hi <= point) {
            const BlockResult& blk = results[block_idx];
            for (const auto& [b, c] : blk.counts) running[b] += c;
            for (const auto& [b, h] : blk.hits) {
                auto& dst = all_hits[b];
                for (uint64_t n : h) {
                    if (dst.size() < options.hits_limit) dst.push_back(n);
                }
            }
            ++block_idx;
        }
        for (uint64_t b : bs) {
            CensusRecord rec;
            rec.x = point;
            rec.a = a;
            rec.b = b;
            rec.k = k;
            rec.count = running[b];
            if (options.hits_limit > 0) rec.hits = all_hits[b];
            records.push_back(std::move(rec));
        }
    }
    return records;
}

uint64_t census(uint64_t x, uint64_t a, uint64_t b, uint32_t k, const CensusOptions& options) {
    check_params(a, {b}, k);
    if (x == 0) return 0;
    return census_series({x}, a, {b}, k, options).front().count;
}

std::vector<uint64_t> list_hits(uint64_t x, uint64_t a, uint64_t b, uint32_t k, size_t limit) {
    check_params(a, {b}, k);
    if (x == 0 || limit == 0) return {};
    CensusOptions options;
    options.hits_limit = limit;
    std::vector<uint64_t> hits = census_series({x}, a, {b}, k, options).front().hits;
    if (hits.size() > limit) hits.resize(limit);
    return hits;
}

std::vector<RatioRow> ratio_series(const std::vector<CensusRecord>& numerators,
                                   const std::vector<CensusRecord>& denominators) {
    std::map<uint64_t, uint64_t> denom;
    for (const CensusRecord& r : denominators) denom[r.x] = r.count;
    std::vector<RatioRow> rows;
    for (const CensusRecord& r : numerators) {
        auto it = denom.find(r.x);
        if (it == denom.end()) continue;
        RatioRow row;
        row.x = r.x;
        row.numerator = r.count;
        row.denominator = it->second;
        row.defined = it->second != 0;
        row.ratio = row.defined ? static_cast<double>(r.count) / static_cast<double>(it->second) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

std::string format_ratio(const RatioRow& row) {
    if (!row.defined) return "-";
    uint64_t whole = row.numerator / row.denominator;
    uint64_t rem = row.numerator % row.denominator;
    uint64_t frac = static_cast<uint64_t>((static_cast<__uint128_t>(rem) * 10000) / row.denominator);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%llu.%04llu", static_cast<unsigned long long>(whole),
                  static_cast<unsigned long long>(frac));
    return buf;
}

CheckpointWriter::CheckpointWriter(std::string path, uint64_t a, uint32_t k,
                                   const std::vector<uint64_t>& bs, uint64_t max_x, bool append)
    : path_(std::move(path)) {
    if (append) {
        std::ifstream probe(path_);
        if (!probe.good()) throw std::runtime_error("checkpoint " + path_ + ": cannot reopen for append");
        return;
    }
    std::ofstream out(path_, std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint " + path_ + ": cannot open for writing");
    nlohmann::json header;
    header["a"] = a;
    header["k"] = k;
    header["bs"] = bs;
    header["max_x"] = max_x;
    out << header.dump() << "\n";
}

void CheckpointWriter::write_block(const BlockResult& block) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("checkpoint " + path_ + ": cannot append");
    nlohmann::json j;
    j["lo"] = block.lo;
    j["hi"] = block.hi;
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [b, c] : block.counts) counts[std::to_string(b)] = c;
    j["counts"] = counts;
    out << j.dump() << "\n";
    out.flush();
}

CheckpointData load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("checkpoint " + path + ": cannot open");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw std::runtime_error("checkpoint " + path + ": empty file");

    auto fail = [&](size_t lineno, const std::string& why) -> void {
        throw std::runtime_error("checkpoint " + path + " line " + std::to_string(lineno) + ": " + why);
    };

    CheckpointData data;
    for (size_t i = 0; i < lines.size(); ++i) {
        size_t lineno = i + 1;
        if (lines[i].empty()) fail(lineno, "blank line");
        nlohmann::json j = nlohmann::json::parse(lines[i], nullptr, false);
        if (j.is_discarded()) fail(lineno, "not valid JSON");
        if (i == 0) {
            if (!j.contains("a") || !j.contains("k") || !j.contains("bs") || !j.contains("max_x"))
                fail(lineno, "header missing a required field");
            try {
                data.a = j.at("a").get<uint64_t>();
                data.k = j.at("k").get<uint32_t>();
                data.bs = j.at("bs").get<std::vector<uint64_t>>();
                data.max_x = j.at("max_x").get<uint64_t>();
            } catch (const nlohmann::json::exception&) {
                fail(lineno, "header field has the wrong type");
            }
            continue;
        }
        BlockResult block;
        try {
            block.lo = j.at("lo").get<uint64_t>();
            block.hi = j.at("hi").get<uint64_t>();
            for (const auto& [key, value] : j.at("counts").items()) {
                size_t pos = 0;
                uint64_t b = std::stoull(key, &pos);
                if (pos != key.size()) throw std::runtime_error("bad residue key");
                block.counts[b] = value.get<uint64_t>();
            }
        } catch (const std::exception&) {
            fail(lineno, "malformed block record");
        }
        uint64_t expect_lo = data.blocks.empty() ? 1 : data.blocks.back().hi + 1;
        if (block.lo != expect_lo) fail(lineno, "blocks are not contiguous from 1");
        if (block.hi < block.lo) fail(lineno, "block range is inverted");
        if (block.hi > data.max_x) fail(lineno, "block extends past max_x");
        data.blocks.push_back(std::move(block));
    }
    return data;
}

}  // namespace sigmapow
