#include "fbeval/harness/server.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#ifndef _WIN32
#include <unistd.h>
#endif

#include <httplib.h>

#include "fbeval/harness/scoring.hpp"
#include "fbeval/jsonl.hpp"

namespace fbeval::harness {

namespace {

using nlohmann::json;

json entry_json(const LeaderboardEntry& e) {
    return json{{"submission_id", e.submission_id},
                {"team", e.team},
                {"scores",
                 {{"c2c", e.c2c}, {"htr", e.htr}, {"zsod", e.zsod}, {"vqa", e.vqa}}},
                {"total", e.total},
                {"submitted_at", e.submitted_at}};
}

}  // namespace

EvalService::EvalService(ServerConfig cfg)
    : cfg_(std::move(cfg)), store_(cfg_.store_path) {
    if (!cfg_.token_file.empty()) {
        std::ifstream in(cfg_.token_file);
        if (!in)
            throw ValidationError("cannot open token file " + cfg_.token_file);
        json obj = json::parse(in);
        for (auto& [team, token] : obj.items())
            tokens_[team] = token.get<std::string>();
    }
}

json EvalService::submit(const std::string& team, const std::string& token,
                         const std::map<TaskKind, std::string>& pred_files) {
    if (team.empty()) throw ValidationError("missing team name");
    if (!tokens_.empty()) {
        auto it = tokens_.find(team);
        if (it == tokens_.end() || it->second != token)
            throw ValidationError("unknown team or bad token");
    }
    for (TaskKind task : kAllTasks)
        if (!pred_files.count(task))
            throw ValidationError(std::string("missing prediction file for ") +
                                  task_name(task));

    // Validate everything before scoring so a bad file persists nothing.
    for (const auto& [task, path] : pred_files)
        jsonl::validate_submission(path, task, /*is_pred=*/true);

    std::map<TaskKind, double> scores;
    for (const auto& [task, path] : pred_files) {
        std::string gt = (std::filesystem::path(cfg_.gt_dir) /
                          (std::string(task_name(task)) + ".jsonl"))
                             .string();
        if (!std::filesystem::exists(gt))
            throw ValidationError("server has no ground truth for " +
                                  std::string(task_name(task)));
        scores[task] = score_task(task, gt, path).score;
    }

    std::lock_guard lock(mutex_);
    LeaderboardEntry e =
        store_.append(team, scores[TaskKind::C2C], scores[TaskKind::HTR],
                      scores[TaskKind::ZsOD], scores[TaskKind::VQA]);
    return entry_json(e);
}

json EvalService::leaderboard() const {
    std::lock_guard lock(mutex_);
    json entries = json::array();
    for (const LeaderboardEntry& e : store_.ranking())
        entries.push_back(entry_json(e));
    return json{{"entries", entries}};
}

json EvalService::submission(const std::string& id) const {
    std::lock_guard lock(mutex_);
    const LeaderboardEntry* e = store_.find(id);
    if (!e) throw ValidationError("no submission " + id);
    return entry_json(*e);
}

int run_server(const ServerConfig& cfg) {
    EvalService service(cfg);
    httplib::Server server;

    server.Post("/api/v1/submissions", [&](const httplib::Request& req,
                                           httplib::Response& res) {
        namespace fs = std::filesystem;
        fs::path tmp =
            fs::temp_directory_path() /
            ("fbeval-upload-" + std::to_string(::getpid()) + "-" +
             std::to_string(reinterpret_cast<std::uintptr_t>(&req)));
        fs::create_directories(tmp);
        try {
            std::string team, token;
            if (req.has_file("team")) team = req.get_file_value("team").content;
            if (req.has_file("token")) token = req.get_file_value("token").content;
            std::map<TaskKind, std::string> files;
            for (TaskKind task : kAllTasks) {
                if (!req.has_file(task_name(task))) continue;
                const auto& file = req.get_file_value(task_name(task));
                fs::path dst = tmp / (std::string(task_name(task)) + ".jsonl");
                std::ofstream out(dst, std::ios::binary);
                out << file.content;
                files[task] = dst.string();
            }
            json body = service.submit(team, token, files);
            res.set_content(body.dump(), "application/json");
        } catch (const ValidationError& e) {
            res.status = 400;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        } catch (const std::exception& e) {
            res.status = 500;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        }
        std::error_code ec;
        fs::remove_all(tmp, ec);
    });

    server.Get("/api/v1/leaderboard",
               [&](const httplib::Request&, httplib::Response& res) {
                   res.set_content(service.leaderboard().dump(),
                                   "application/json");
               });

    server.Get("/api/v1/submissions/([^/]+)",
               [&](const httplib::Request& req, httplib::Response& res) {
                   try {
                       res.set_content(service.submission(req.matches[1]).dump(),
                                       "application/json");
                   } catch (const ValidationError& e) {
                       res.status = 404;
                       res.set_content(json{{"error", e.what()}}.dump(),
                                       "application/json");
                   }
               });

    std::fprintf(stderr, "listening on %s:%d\n", cfg.host.c_str(), cfg.port);
    return server.listen(cfg.host, cfg.port) ? 0 : 1;
}

}  // namespace fbeval::harness
