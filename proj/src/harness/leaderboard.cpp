#include "fbeval/harness/leaderboard.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#ifndef _WIN32
#include <unistd.h>
#endif

namespace fbeval::harness {

namespace {

using nlohmann::json;

std::string iso_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
#ifdef _WIN32
    gmtime_s(&tm, &t);
#else
    gmtime_r(&t, &tm);
#endif
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

LeaderboardEntry from_json(const json& obj) {
    LeaderboardEntry e;
    e.submission_id = obj.at("submission_id").get<std::string>();
    e.team = obj.at("team").get<std::string>();
    e.c2c = obj.at("c2c").get<double>();
    e.htr = obj.at("htr").get<double>();
    e.zsod = obj.at("zsod").get<double>();
    e.vqa = obj.at("vqa").get<double>();
    e.submitted_at = obj.at("submitted_at").get<std::string>();
    e.sequence = obj.at("sequence").get<std::uint64_t>();
    e.total = e.c2c + e.htr + e.zsod + e.vqa;  // never read from the record
    return e;
}

json to_json(const LeaderboardEntry& e) {
    return json{{"submission_id", e.submission_id},
                {"team", e.team},
                {"c2c", e.c2c},
                {"htr", e.htr},
                {"zsod", e.zsod},
                {"vqa", e.vqa},
                {"total", e.total},
                {"submitted_at", e.submitted_at},
                {"sequence", e.sequence}};
}

void fsync_file(std::FILE* f) {
    std::fflush(f);
#ifndef _WIN32
    ::fsync(fileno(f));
#endif
}

}  // namespace

LeaderboardStore::LeaderboardStore(std::string path) : path_(std::move(path)) {
    entries_ = replay(path_);
}

std::vector<LeaderboardEntry> LeaderboardStore::replay(const std::string& path) {
    std::vector<LeaderboardEntry> entries;
    std::ifstream in(path);
    if (!in) return entries;  // fresh store
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            entries.push_back(from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ValidationError(path, line_no,
                                  std::string("corrupt store record: ") + e.what());
        }
    }
    return entries;
}

LeaderboardEntry LeaderboardStore::append(const std::string& team, double c2c,
                                          double htr, double zsod, double vqa) {
    OverallScore score = overall(c2c, htr, zsod, vqa);  // range-checks inputs
    LeaderboardEntry e;
    e.team = team;
    e.c2c = score.c2c;
    e.htr = score.htr;
    e.zsod = score.zsod;
    e.vqa = score.vqa;
    e.total = score.total;
    e.sequence = entries_.empty() ? 1 : entries_.back().sequence + 1;
    e.submitted_at = iso_now();
    char id[32];
    std::snprintf(id, sizeof(id), "sub-%06llu",
                  static_cast<unsigned long long>(e.sequence));
    e.submission_id = id;

    std::FILE* f = std::fopen(path_.c_str(), "ab");
    if (!f) throw ValidationError("cannot open store " + path_);
    std::string line = to_json(e).dump() + "\n";
    std::fwrite(line.data(), 1, line.size(), f);
    fsync_file(f);
    std::fclose(f);

    entries_.push_back(e);
    write_index();
    return e;
}

void LeaderboardStore::write_index() const {
    std::string tmp = path_ + ".idx.tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) return;  // the index is a cache; the log stays authoritative
    json idx{{"count", entries_.size()},
             {"last_sequence", entries_.empty() ? 0 : entries_.back().sequence}};
    std::string body = idx.dump();
    std::fwrite(body.data(), 1, body.size(), f);
    fsync_file(f);
    std::fclose(f);
    std::error_code ec;
    std::filesystem::rename(tmp, path_ + ".idx", ec);
}

std::vector<LeaderboardEntry> LeaderboardStore::ranking() const {
    std::vector<LeaderboardEntry> sorted = entries_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const LeaderboardEntry& a, const LeaderboardEntry& b) {
                         if (a.total != b.total) return a.total > b.total;
                         return a.sequence < b.sequence;
                     });
    return sorted;
}

const LeaderboardEntry* LeaderboardStore::find(
    const std::string& submission_id) const {
    for (const LeaderboardEntry& e : entries_)
        if (e.submission_id == submission_id) return &e;
    return nullptr;
}

}  // namespace fbeval::harness
