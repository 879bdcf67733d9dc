#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbeval/types.hpp"

namespace fbeval::harness {

struct LeaderboardEntry {
    std::string submission_id;
    std::string team;
    double c2c = 0, htr = 0, zsod = 0, vqa = 0;
    double total = 0;          // recomputed from components, never trusted
    std::string submitted_at;  // ISO-8601 UTC
    std::uint64_t sequence = 0;
};

// Append-only JSONL event log. State is the fold of the log: reloading the
// file reproduces the identical ranking. Appends run write+flush+fsync; a
// small index file is replaced atomically (write, fsync, rename) alongside.
class LeaderboardStore {
public:
    explicit LeaderboardStore(std::string path);

    // Validates component ranges, assigns id/sequence/timestamp, persists.
    LeaderboardEntry append(const std::string& team, double c2c, double htr,
                            double zsod, double vqa);

    // Sorted by total descending, earlier submission first on ties.
    std::vector<LeaderboardEntry> ranking() const;

    const std::vector<LeaderboardEntry>& entries() const { return entries_; }
    const LeaderboardEntry* find(const std::string& submission_id) const;

    static std::vector<LeaderboardEntry> replay(const std::string& path);

private:
    void write_index() const;

    std::string path_;
    std::vector<LeaderboardEntry> entries_;
};

}  // namespace fbeval::harness
