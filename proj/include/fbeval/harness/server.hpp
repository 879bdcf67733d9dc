#pragma once

#include <map>
#include <mutex>
#include <string>

#include <json.hpp>

#include "fbeval/harness/leaderboard.hpp"
#include "fbeval/types.hpp"

namespace fbeval::harness {

struct ServerConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string store_path;
    std::string gt_dir;      // ground truth of the selected split, server-side only
    std::string token_file;  // optional JSON {team: token}; empty = open access
};

// Scoring service behind the HTTP endpoints; usable directly in tests.
// Submissions are serialized through one writer; reads take the same lock
// only long enough to copy entries.
class EvalService {
public:
    explicit EvalService(ServerConfig cfg);

    // Validates and scores the four prediction files (paths on local disk),
    // then appends one immutable record. Throws ValidationError without
    // persisting anything on a bad submission.
    nlohmann::json submit(const std::string& team, const std::string& token,
                          const std::map<TaskKind, std::string>& pred_files);

    nlohmann::json leaderboard() const;
    nlohmann::json submission(const std::string& id) const;

private:
    ServerConfig cfg_;
    LeaderboardStore store_;
    std::map<std::string, std::string> tokens_;
    mutable std::mutex mutex_;
};

// Blocks serving POST /api/v1/submissions, GET /api/v1/leaderboard and
// GET /api/v1/submissions/{id}. Returns non-zero if the socket bind fails.
int run_server(const ServerConfig& cfg);

}  // namespace fbeval::harness
