#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

// Counting n <= x with n = b (mod a) and sigma(n) a perfect kth power.
// Work is split into fixed blocks so runs parallelize and checkpoint;
// block boundaries are derived from (block_size, checkpoints) alone, so
// the same request always produces the same blocks regardless of worker
// count or resume point.

namespace sigmapow {

struct CensusRecord {
    uint64_t x = 0;
    uint64_t a = 1;
    uint64_t b = 0;
    uint32_t k = 2;
    uint64_t count = 0;
    std::vector<uint64_t> hits;  // populated only when a sample was requested
};

struct CensusOptions {
    uint64_t block_size = 1'000'000;
    unsigned threads = 0;    // 0: one per hardware thread
    size_t hits_limit = 0;   // collect the first this-many hits per residue
};

// One finished block: counts (and sampled hits) per residue class.
struct BlockResult {
    uint64_t lo = 0;
    uint64_t hi = 0;
    std::map<uint64_t, uint64_t> counts;
    std::map<uint64_t, std::vector<uint64_t>> hits;
};

struct RatioRow {
    uint64_t x = 0;
    uint64_t numerator = 0;
    uint64_t denominator = 0;
    bool defined = false;
    double ratio = 0.0;
};

using BlockSink = std::function<void(const BlockResult&)>;

uint64_t census(uint64_t x, uint64_t a, uint64_t b, uint32_t k,
                const CensusOptions& options = {});

// Counts at every checkpoint for every residue in bs, in one sweep to
// max(checkpoints). Completed blocks stream to sink (when set) in block
// order; resume_from supplies blocks finished by an earlier run, which must
// match this run's boundaries exactly. Records are ordered checkpoint-major,
// then by the order of bs.
std::vector<CensusRecord> census_series(const std::vector<uint64_t>& checkpoints,
                                        uint64_t a, const std::vector<uint64_t>& bs, uint32_t k,
                                        const CensusOptions& options = {},
                                        const BlockSink& sink = {},
                                        const std::vector<BlockResult>& resume_from = {});

// Pairs counts from two series taken at the same checkpoints.
std::vector<RatioRow> ratio_series(const std::vector<CensusRecord>& numerators,
                                   const std::vector<CensusRecord>& denominators);

// Truncated (not rounded) to four decimals, e.g. 2.42857... -> "2.4285".
std::string format_ratio(const RatioRow& row);

std::vector<uint64_t> list_hits(uint64_t x, uint64_t a, uint64_t b, uint32_t k,
                                size_t limit = SIZE_MAX);

// Checkpoint files are line-delimited JSON: a header object with the run
// parameters, then one object per finished block, appended as blocks
// complete. Loading validates the header against the requested run and
// demands contiguous blocks starting at 1; anything unparseable or out of
// order is refused with its line number.
class CheckpointWriter {
public:
    CheckpointWriter(std::string path, uint64_t a, uint32_t k,
                     const std::vector<uint64_t>& bs, uint64_t max_x,
                     bool append = false);
    void write_block(const BlockResult& block);
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct CheckpointData {
    uint64_t a = 0;
    uint32_t k = 0;
    std::vector<uint64_t> bs;
    uint64_t max_x = 0;
    std::vector<BlockResult> blocks;
};

CheckpointData load_checkpoint(const std::string& path);

}  // namespace sigmapow
