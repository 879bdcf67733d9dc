#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "fbeval/emissions.hpp"
#include "fbeval/harness/scoring.hpp"
#include "fbeval/harness/server.hpp"
#include "fbeval/kernels/assignment.hpp"
#include "fbeval/kernels/boxes.hpp"
#include "fbeval/kernels/ctc.hpp"
#include "fbeval/kernels/image.hpp"
#include "fbeval/sampler.hpp"

using nlohmann::json;

namespace {

using namespace fbeval;

json report_json(const ScoreReport& r, bool per_sample) {
    json out{{"task", task_name(r.task)},
             {"score", r.score},
             {"score_display", round3(r.score)},
             {"sample_count", r.sample_count},
             {"warnings", r.warnings}};
    if (per_sample) {
        json ps = json::array();
        for (const auto& [id, v] : r.per_sample) ps.push_back({{"id", id}, {"value", v}});
        out["per_sample"] = ps;
    }
    return out;
}

void write_or_print(const json& body, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << body.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << body.dump(2) << "\n";
    }
}

sampler::TaskWeights weights_from_json(const json& obj) {
    sampler::TaskWeights w;
    for (auto& [key, value] : obj.items())
        w[parse_task(key)] = value.get<double>();
    return w;
}

emissions::HardwareProfile profile_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open profile " + path);
    json obj = json::parse(in);
    emissions::HardwareProfile p;
    p.gpu_count = obj.at("gpu_count").get<int>();
    p.power_per_gpu = obj.at("power_per_gpu").get<double>();
    p.pue = obj.at("pue").get<double>();
    p.carbon_intensity = obj.at("carbon_intensity").get<double>();
    return p;
}

// ---- kernels check: compact oracle sweeps, pass/fail per kernel ------------

bool check_ctc(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    for (int it = 0; it < 40; ++it) {
        int t_len = 1 + static_cast<int>(rng() % 5);
        int vocab = 2 + static_cast<int>(rng() % 3);
        Eigen::MatrixXd lp(t_len, vocab);
        for (int t = 0; t < t_len; ++t) {
            Eigen::VectorXd row(vocab);
            for (int v = 0; v < vocab; ++v) row(v) = unif(rng);
            lp.row(t) = (row / row.sum()).array().log().transpose();
        }
        std::vector<int> labels;
        int l_len = static_cast<int>(rng() % 3);
        for (int i = 0; i < l_len; ++i)
            labels.push_back(1 + static_cast<int>(rng() % (vocab - 1)));

        int min_t = static_cast<int>(labels.size());
        for (std::size_t i = 1; i < labels.size(); ++i)
            if (labels[i] == labels[i - 1]) ++min_t;
        if (min_t > t_len) continue;

        // exhaustive path enumeration
        double total = 0.0;
        std::vector<int> path(static_cast<std::size_t>(t_len), 0);
        while (true) {
            std::vector<int> collapsed;
            int prev = -1;
            for (int s : path) {
                if (s != prev && s != 0) collapsed.push_back(s);
                prev = s;
            }
            if (collapsed == labels) {
                double p = 1.0;
                for (int t = 0; t < t_len; ++t) p *= std::exp(lp(t, path[t]));
                total += p;
            }
            int k = t_len - 1;
            while (k >= 0 && ++path[k] == vocab) path[k--] = 0;
            if (k < 0) break;
        }
        double loss = kernels::ctc_loss(lp, labels).loss;
        if (std::abs(loss - (-std::log(total))) > 1e-9 * std::max(1.0, loss))
            return false;
    }
    return true;
}

bool check_assignment(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-5, 5);
    for (int it = 0; it < 60; ++it) {
        int m = 1 + static_cast<int>(rng() % 5);
        int n = m + static_cast<int>(rng() % (7 - m));
        Eigen::MatrixXd cost(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) cost(i, j) = unif(rng);
        double best = 1e18;
        std::vector<int> cols(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] = j;
        std::sort(cols.begin(), cols.end());
        do {
            double total = 0;
            for (int i = 0; i < m; ++i) total += cost(i, cols[static_cast<std::size_t>(i)]);
            best = std::min(best, total);
        } while (std::next_permutation(cols.begin(), cols.end()));
        double got = kernels::assignment_cost(cost, kernels::assign(cost));
        if (std::abs(got - best) > 1e-9) return false;
    }
    return true;
}

bool check_giou() {
    BBox a{0, 0, 1, 1}, b{2, 0, 3, 1};
    if (std::abs(kernels::giou(a, b).value - (-1.0 / 3.0)) > 1e-12) return false;
    if (std::abs(kernels::giou(a, a).value - 1.0) > 1e-12) return false;
    return true;
}

bool check_patches(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0, 1);
    kernels::ImageTensor img(37, 201);
    for (auto& c : img.channels)
        c = Eigen::MatrixXd::NullaryExpr(37, 201, [&]() { return unif(rng); });
    kernels::ImageTensor resized = kernels::smart_resize(img);
    if (resized.height() != 128 || resized.width() != 512) return false;
    Eigen::MatrixXd patches = kernels::patchify(resized);
    kernels::ImageTensor back = kernels::unpatchify(patches);
    for (int c = 0; c < 3; ++c)
        if (back.channels[c] != resized.channels[c]) return false;
    return true;
}

int run_kernels_check() {
    std::mt19937_64 rng(20211209);
    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
        if (!ok) ++failures;
    };
    report("ctc loss vs path enumeration", check_ctc(rng));
    report("hungarian vs permutation minimum", check_assignment(rng));
    report("giou fixtures", check_giou());
    report("smart_resize / patchify round trip", check_patches(rng));
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evaluation engine for the four-task multimodal competition"};
    app.require_subcommand(1);

    // ---- score ----
    auto* score = app.add_subcommand("score", "Score one task from JSONL files");
    std::string task_str, gt_path, pred_path, out_path, matching = "one-to-one";
    std::string policy_str;
    double iou_thr = 0.5;
    bool components = false, per_sample = false;
    score->add_option("--task", task_str, "c2c|htr|zsod|vqa")->required();
    score->add_option("--gt", gt_path, "ground truth JSONL")->required();
    score->add_option("--pred", pred_path, "prediction JSONL")->required();
    score->add_option("--out", out_path, "write report JSON here");
    score->add_option("--iou-thr", iou_thr, "ZsOD IoU threshold (default 0.5)");
    score->add_option("--matching", matching, "ZsOD matching: one-to-one|literal");
    score->add_option("--policy", policy_str,
                      "normalization override: comma list of "
                      "lowercase,strip_punctuation,collapse_whitespace");
    score->add_flag("--components", components, "emit CodeBLEU component breakdown");
    score->add_flag("--per-sample", per_sample, "include per-sample values");

    // ---- overall ----
    auto* overall_cmd =
        app.add_subcommand("overall", "Score all four tasks from two directories");
    std::string gt_dir, pred_dir;
    overall_cmd->add_option("--gt-dir", gt_dir, "directory with <task>.jsonl")
        ->required();
    overall_cmd->add_option("--pred-dir", pred_dir, "directory with <task>.jsonl")
        ->required();
    overall_cmd->add_option("--out", out_path, "write report JSON here");

    // ---- total ----
    auto* total_cmd =
        app.add_subcommand("total", "Sum four task scores into the overall total");
    double in_c2c = 0, in_htr = 0, in_zsod = 0, in_vqa = 0;
    bool c2c_percent = false;
    total_cmd->add_option("--c2c", in_c2c)->required();
    total_cmd->add_option("--htr", in_htr)->required();
    total_cmd->add_option("--zsod", in_zsod)->required();
    total_cmd->add_option("--vqa", in_vqa)->required();
    total_cmd->add_flag("--c2c-percent", c2c_percent,
                        "c2c given on the 0-100 scale; multiply by 0.01");

    // ---- serve ----
    auto* serve = app.add_subcommand("serve", "Run the leaderboard service");
    std::string addr = "127.0.0.1:8080", store_path, gt_public, gt_private,
                split = "public";
    serve->add_option("--addr", addr, "HOST:PORT")->required();
    serve->add_option("--store", store_path, "append-only store path")->required();
    serve->add_option("--gt-public", gt_public, "public-split gt directory");
    serve->add_option("--gt-private", gt_private, "private-split gt directory");
    serve->add_option("--split", split, "which split to score: public|private");

    // ---- sampler ----
    auto* sampler_cmd = app.add_subcommand("sampler", "WeightBalanceSampler tools");
    auto* derive = sampler_cmd->add_subcommand(
        "derive", "Derive task weights from training budgets");
    std::string budgets_path, weights_path;
    derive->add_option("--budgets", budgets_path, "budgets JSON")->required();
    derive->add_option("--out", out_path, "write weights JSON here");
    auto* stream =
        sampler_cmd->add_subcommand("stream", "Emit a reproducible task stream");
    std::uint64_t seed = 0;
    std::size_t n = 0;
    stream->add_option("--weights", weights_path, "weights JSON")->required();
    stream->add_option("--seed", seed)->required();
    stream->add_option("--n", n)->required();

    // ---- co2 ----
    auto* co2 = app.add_subcommand("co2", "Training-emissions estimator");
    auto* estimate = co2->add_subcommand("estimate", "Estimate kg CO2eq");
    double hours = 0;
    std::string profile_path, runs_path;
    estimate->add_option("--hours", hours)->required();
    estimate->add_option("--profile", profile_path, "hardware profile JSON")
        ->required();
    auto* fit = co2->add_subcommand("fit", "Fit kg/h coefficient to runs");
    fit->add_option("--runs", runs_path, "runs JSON")->required();

    // ---- kernels ----
    auto* kernels_cmd = app.add_subcommand("kernels", "Numerical kernel tools");
    auto* check = kernels_cmd->add_subcommand("check", "Run the oracle spot checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*score) {
            TaskKind task = parse_task(task_str);
            harness::ScoreOptions opts;
            opts.detection.iou_threshold = iou_thr;
            if (matching == "literal")
                opts.detection.matching = det::MatchingMode::Literal;
            else if (matching != "one-to-one")
                throw ValidationError("unknown matching mode: " + matching);
            if (!policy_str.empty()) opts.policy = text::parse_policy(policy_str);

            json body;
            if (task == TaskKind::C2C && components) {
                auto [report, parts] = harness::score_c2c(gt_path, pred_path);
                body = report_json(report, per_sample);
                body["components"] = {{"ngram", parts.ngram},
                                      {"weighted_ngram", parts.weighted_ngram},
                                      {"ast", parts.ast},
                                      {"dataflow", parts.dataflow}};
            } else {
                body = report_json(score_task(task, gt_path, pred_path, opts),
                                   per_sample);
            }
            write_or_print(body, out_path);
            std::fprintf(stderr, "%s score: %.3f\n", task_name(task),
                         body["score"].get<double>());
            return 0;
        }

        if (*overall_cmd) {
            harness::OverallResult result = harness::score_overall(gt_dir, pred_dir);
            json body{{"c2c", result.score.c2c},
                      {"htr", result.score.htr},
                      {"zsod", result.score.zsod},
                      {"vqa", result.score.vqa},
                      {"total", result.score.total}};
            json missing = json::array();
            for (TaskKind t : result.score.missing) missing.push_back(task_name(t));
            body["missing"] = missing;
            json reports = json::object();
            for (const auto& [t, r] : result.reports)
                reports[task_name(t)] = report_json(r, false);
            body["reports"] = reports;
            write_or_print(body, out_path);
            std::fprintf(stderr, "total: %.3f\n", result.score.total);
            return 0;
        }

        if (*total_cmd) {
            if (c2c_percent) in_c2c *= 0.01;
            OverallScore s = overall(in_c2c, in_htr, in_zsod, in_vqa);
            std::printf("%.3f\n", round3(s.total));
            return 0;
        }

        if (*serve) {
            auto colon = addr.rfind(':');
            if (colon == std::string::npos)
                throw ValidationError("--addr must be HOST:PORT");
            harness::ServerConfig cfg;
            cfg.host = addr.substr(0, colon);
            cfg.port = std::stoi(addr.substr(colon + 1));
            cfg.store_path = store_path;
            if (split == "private") {
                cfg.gt_dir = gt_private;
            } else if (split == "public") {
                cfg.gt_dir = gt_public;
            } else {
                throw ValidationError("--split must be public or private");
            }
            if (cfg.gt_dir.empty())
                throw ValidationError("no ground-truth directory for split " + split);
            if (const char* tokens = std::getenv("FBEVAL_TEAM_TOKENS"))
                cfg.token_file = tokens;
            return harness::run_server(cfg);
        }

        if (*derive) {
            std::ifstream in(budgets_path);
            if (!in) throw ValidationError("cannot open " + budgets_path);
            json arr = json::parse(in);
            std::vector<sampler::TrainBudget> budgets;
            for (const json& b : arr)
                budgets.push_back({parse_task(b.at("task").get<std::string>()),
                                   b.at("batch_size").get<long>(),
                                   b.at("steps").get<long>()});
            sampler::TaskWeights w = sampler::derive_weights(budgets);
            json body = json::object();
            for (const auto& [task, weight] : w) body[task_name(task)] = weight;
            write_or_print(body, out_path);
            return 0;
        }

        if (*stream) {
            std::ifstream in(weights_path);
            if (!in) throw ValidationError("cannot open " + weights_path);
            sampler::TaskWeights w = weights_from_json(json::parse(in));
            for (TaskKind t : sampler::sample_stream(w, seed, n))
                std::printf("%s\n", task_name(t));
            return 0;
        }

        if (*estimate) {
            emissions::HardwareProfile profile = profile_from_file(profile_path);
            double kg = emissions::estimate_co2(hours, profile);
            std::printf("%.2f\n", kg);
            return 0;
        }

        if (*fit) {
            std::ifstream in(runs_path);
            if (!in) throw ValidationError("cannot open " + runs_path);
            json arr = json::parse(in);
            std::vector<emissions::RunRecord> runs;
            for (const json& r : arr) {
                emissions::RunRecord rec;
                rec.label = r.value("label", "");
                rec.hours = r.at("hours").get<double>();
                if (r.contains("co2")) rec.reported_co2 = r["co2"].get<double>();
                runs.push_back(std::move(rec));
            }
            emissions::CoefficientFit f = emissions::fit_coefficient(runs);
            json body{{"kg_per_hour", f.kg_per_hour},
                      {"max_relative_residual", f.max_relative_residual},
                      {"residuals", f.residuals}};
            write_or_print(body, "");
            return 0;
        }

        if (*check) return run_kernels_check();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
