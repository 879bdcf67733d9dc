// Acceptance suite: one check per criterion, one pass/fail line each.
// Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#ifndef _WIN32
#include <unistd.h>
#endif

#include "fbeval/code/codebleu.hpp"
#include "fbeval/detection.hpp"
#include "fbeval/emissions.hpp"
#include "fbeval/harness/leaderboard.hpp"
#include "fbeval/harness/scoring.hpp"
#include "fbeval/kernels/assignment.hpp"
#include "fbeval/kernels/boxes.hpp"
#include "fbeval/kernels/ctc.hpp"
#include "fbeval/kernels/image.hpp"
#include "fbeval/sampler.hpp"
#include "fbeval/types.hpp"

#include "../oracles.hpp"

using namespace fbeval;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

double round2(double v) { return std::round(v * 100.0) / 100.0; }

// ---- 1: overall-score arithmetic -------------------------------------------

void criterion_overall(Check& c) {
    c.require(std::abs(overall(0.132, 0.587, 0.191, 0.327).total - 1.237) <= 1e-12,
              "fusion row total != 1.237");
    c.require(std::abs(overall(0.123, 0.533, 0.193, 0.307).total - 1.156) <= 1e-12,
              "single-task row total != 1.156");
    c.require(std::abs(overall(0.320, 0.744, 0.250, 0.365).total - 1.680) <= 0.002,
              "qbic total outside 1.680 +- 0.002");
    c.require(std::abs(overall(0.233, 0.314, 0.166, 0.318).total - 1.032) <= 0.002,
              "orzhan total outside 1.032 +- 0.002");
    c.require(std::abs(overall(0.218, 0.377, 0.074, 0.237).total - 0.907) <= 0.002,
              "Arasaka total outside 0.907 +- 0.002");
}

// ---- 2: sampler-weight derivation -------------------------------------------

void criterion_sampler(Check& c) {
    using sampler::TrainBudget;
    const TrainBudget c2c{TaskKind::C2C, 8, 69264};
    const TrainBudget htr{TaskKind::HTR, 32, 70305};
    const TrainBudget zsod{TaskKind::ZsOD, 64, 119510};
    const TrainBudget vqa{TaskKind::VQA, 64, 32500};

    auto fusion = sampler::derive_weights({c2c, htr, zsod, vqa});
    c.require(round2(fusion[TaskKind::C2C]) == 0.04, "fusion c2c != 0.04");
    c.require(round2(fusion[TaskKind::HTR]) == 0.18, "fusion htr != 0.18");
    c.require(round2(fusion[TaskKind::ZsOD]) == 0.61, "fusion zsod != 0.61");
    c.require(round2(fusion[TaskKind::VQA]) == 0.17, "fusion vqa != 0.17");

    auto three = sampler::derive_weights({htr, zsod, vqa});
    c.require(round2(three[TaskKind::HTR]) == 0.19, "3-task htr != 0.19");
    c.require(round2(three[TaskKind::ZsOD]) == 0.64, "3-task zsod != 0.64");
    c.require(round2(three[TaskKind::VQA]) == 0.17, "3-task vqa != 0.17");

    // Published row is (0.78, 0.22); batch*steps derivation gives
    // 0.7862/0.2138, which rounds to (0.79, 0.21). Asserted as published.
    auto two = sampler::derive_weights({zsod, vqa});
    char buf[96];
    std::snprintf(buf, sizeof(buf), "2-task row derives to (%.4f, %.4f), not (0.78, 0.22)",
                  two[TaskKind::ZsOD], two[TaskKind::VQA]);
    c.require(round2(two[TaskKind::ZsOD]) == 0.78 &&
                  round2(two[TaskKind::VQA]) == 0.22,
              buf);
}

// ---- 3: emissions ------------------------------------------------------------

void criterion_emissions(Check& c) {
    const std::vector<emissions::RunRecord> runs{
        {"c2c", 8.5, 10.4},        {"htr", 4.5, 5.52},
        {"zsod", 28.5, 34.8},      {"vqa", 7.0, 8.56},
        {"zsod+vqa", 32.0, 39.04}, {"htr+zsod+vqa", 34.0, 41.44},
        {"fusion", 35.0, 42.72}};
    emissions::CoefficientFit fit = emissions::fit_coefficient(runs);
    c.require(std::abs(fit.kg_per_hour - 1.221) <= 0.01,
              "coefficient outside 1.221 +- 0.01");
    c.require(fit.max_relative_residual < 0.01, "max relative residual >= 1%");
    c.require(std::abs(fit.kg_per_hour * 35.0 - 42.72) / 42.72 < 0.01,
              "fusion estimate off 42.72 by >= 1%");
    c.require(std::abs(fit.kg_per_hour * 48.5 - 59.20) <= 0.2,
              "single-task aggregate outside 59.20 +- 0.2");
}

// ---- 4: CTC oracle equivalence ------------------------------------------------

void criterion_ctc(Check& c) {
    std::mt19937_64 rng(104729);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    int instances = 0, grad_checked = 0;
    while (instances < 220) {
        int t_len = 1 + static_cast<int>(rng() % 6);
        int vocab = 2 + static_cast<int>(rng() % 3);
        std::vector<int> labels;
        int l_len = static_cast<int>(rng() % 4);
        for (int i = 0; i < l_len; ++i)
            labels.push_back(1 + static_cast<int>(rng() % (vocab - 1)));
        int min_t = static_cast<int>(labels.size());
        for (std::size_t i = 1; i < labels.size(); ++i)
            if (labels[i] == labels[i - 1]) ++min_t;
        if (min_t > t_len) continue;

        Eigen::MatrixXd lp(t_len, vocab);
        for (int t = 0; t < t_len; ++t) {
            Eigen::VectorXd row(vocab);
            for (int v = 0; v < vocab; ++v) row(v) = unif(rng);
            lp.row(t) = (row / row.sum()).array().log().transpose();
        }

        double expected = oracles::ctc_enumeration_loss(lp, labels, 0);
        kernels::CtcResult r = kernels::ctc_loss(lp, labels);
        c.require(std::abs(r.loss - expected) <=
                      1e-9 * std::max(1.0, std::abs(expected)),
                  "loss differs from path enumeration beyond 1e-9 relative");

        if (grad_checked < 30) {
            for (int t = 0; t < t_len; ++t)
                for (int v = 0; v < vocab; ++v) {
                    double numeric = oracles::central_difference(
                        [&](double x) {
                            Eigen::MatrixXd p = lp;
                            p(t, v) = x;
                            return kernels::ctc_loss(p, labels).loss;
                        },
                        lp(t, v));
                    c.require(oracles::gradient_close(r.grad(t, v), numeric, 1e-4),
                              "gradient fails finite differences at 1e-4");
                }
            ++grad_checked;
        }
        ++instances;
    }
}

// ---- 5: assignment optimality ---------------------------------------------------

void criterion_assignment(Check& c) {
    std::mt19937_64 rng(1299709);
    std::uniform_real_distribution<double> unif(-10, 10);
    for (int it = 0; it < 520; ++it) {
        int m = 1 + static_cast<int>(rng() % 6);
        int n = m + static_cast<int>(rng() % (7 - m));
        Eigen::MatrixXd cost(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) cost(i, j) = unif(rng);
        double hungarian = kernels::assignment_cost(cost, kernels::assign(cost));
        double brute = oracles::brute_force_assignment(cost);
        c.require(std::abs(hungarian - brute) <= 1e-9,
                  "hungarian total differs from permutation minimum");
    }
}

// ---- 6: detection F1 --------------------------------------------------------------

void criterion_detection(Check& c) {
    using namespace det;
    BBox box{0, 0, 10, 10};

    // perfect
    c.require(f1_dataset({{"i", "cat", {box}, {box}}}).score == 1.0,
              "perfect scenario != 1.0");
    // duplicate prediction
    c.require(std::abs(f1_dataset({{"i", "cat", {box}, {box, {0, 0, 10, 9.5}}}})
                           .score -
                       2.0 / 3.0) < 1e-12,
              "duplicate-prediction scenario != 2/3");
    // empty gt with predictions: zero precision contribution
    DetectionCounts empty_gt = match_label({}, {box, box}, {});
    c.require(empty_gt.tp == 0 && empty_gt.fp == 2 && empty_gt.fn == 0,
              "empty-gt scenario counts wrong");
    c.require(f1_dataset({{"i", "cat", {}, {box}}}).score == 0.0,
              "empty-gt scenario F1 != 0");
    // partial coverage: per-box FN counting
    DetectionCounts partial = match_label(
        {box, {20, 20, 30, 30}, {40, 40, 50, 50}}, {box}, {});
    c.require(partial.tp == 1 && partial.fn == 2,
              "partial coverage must count one FN per uncovered gt box");

    // one-to-one greedy vs exhaustive maximum matching on random instances
    std::mt19937_64 rng(15485863);
    std::uniform_real_distribution<double> unif(0, 1);
    LabelEvalConfig cfg;
    auto cluster_boxes = [&](int max_count) {
        std::vector<BBox> boxes;
        int count = static_cast<int>(rng() % (max_count + 1));
        for (int i = 0; i < count; ++i) {
            double cx = 10.0 * (1 + static_cast<double>(rng() % 3)) + unif(rng) * 3;
            double cy = 10.0 * (1 + static_cast<double>(rng() % 3)) + unif(rng) * 3;
            double w = 8 + unif(rng) * 4, h = 8 + unif(rng) * 4;
            boxes.push_back({cx - w / 2, cy - h / 2, cx + w / 2, cy + h / 2});
        }
        return boxes;
    };
    for (int it = 0; it < 500; ++it) {
        auto gt = cluster_boxes(5);
        auto pred = cluster_boxes(5);
        std::vector<std::vector<bool>> adj(pred.size(),
                                           std::vector<bool>(gt.size(), false));
        for (std::size_t p = 0; p < pred.size(); ++p)
            for (std::size_t g = 0; g < gt.size(); ++g)
                adj[p][g] = iou(pred[p], gt[g]) > cfg.iou_threshold;
        int optimum = gt.empty() || pred.empty()
                          ? 0
                          : oracles::max_bipartite_matching(adj);
        c.require(match_label(gt, pred, cfg).tp == optimum,
                  "greedy one-to-one disagrees with maximum matching");
    }
}

// ---- 7: GIoU / IoU properties -------------------------------------------------------

void criterion_giou(Check& c) {
    BBox unit{0, 0, 1, 1};
    c.require(kernels::giou(unit, unit).value == 1.0, "identity GIoU != 1.0");
    c.require(std::abs(kernels::giou(unit, BBox{2, 0, 3, 1}).value + 1.0 / 3.0) <=
                  1e-15,
              "disjoint fixture GIoU != -1/3");

    std::mt19937_64 rng(32452843);
    std::uniform_real_distribution<double> unif(0, 10);
    auto rand_box = [&]() {
        double x1 = unif(rng), x2 = unif(rng), y1 = unif(rng), y2 = unif(rng);
        return BBox{std::min(x1, x2), std::min(y1, y2), std::max(x1, x2),
                    std::max(y1, y2)};
    };
    for (int i = 0; i < 10000; ++i) {
        BBox a = rand_box(), b = rand_box();
        c.require(kernels::giou(a, b).value <= det::iou(a, b) + 1e-12,
                  "GIoU exceeded IoU");
    }
    int checked = 0;
    while (checked < 40) {
        BBox a = rand_box(), b = rand_box();
        if (a.area() < 1e-3 || b.area() < 1e-3) continue;
        kernels::GiouResult r = kernels::giou(a, b);
        auto coord = [](BBox& box, int k) -> double& {
            switch (k) {
                case 0: return box.x_min;
                case 1: return box.y_min;
                case 2: return box.x_max;
                default: return box.y_max;
            }
        };
        for (int k = 0; k < 4; ++k) {
            double numeric = oracles::central_difference(
                [&](double x) {
                    BBox pa = a;
                    coord(pa, k) = x;
                    return kernels::giou(pa, b).value;
                },
                coord(a, k));
            c.require(oracles::gradient_close(r.grad_a(k), numeric, 1e-4),
                      "GIoU gradient fails finite differences at 1e-4");
        }
        ++checked;
    }
}

// ---- 8: CodeBLEU ---------------------------------------------------------------------

void criterion_codebleu(Check& c) {
    using namespace code;
    std::string snippet = "def f(a):\n    b = a + 1\n    return b\n";
    CodeBleuScore identical = codebleu(snippet, {snippet}, Language::Python);
    c.require(std::abs(identical.total - 1.0) <= 1e-12,
              "identical snippet != 1.0");

    // 3-token n-gram fixture against the brute-force counter
    std::vector<CodeToken> abc{{TokenKind::Identifier, "a", 1, 1},
                               {TokenKind::Identifier, "b", 1, 1},
                               {TokenKind::Identifier, "c", 1, 1}};
    std::vector<CodeToken> abd = abc;
    abd[2].text = "d";
    c.require(ngram_match(abc, {abd}) == oracles::bleu_oracle(abc, abd, 4, false),
              "3-token fixture differs from brute-force n-gram counter");
    c.require(weighted_ngram_match(abc, {abd}) ==
                  oracles::bleu_oracle(abc, abd, 4, true),
              "3-token weighted fixture differs from brute-force counter");

    // components stay in [0,1] on a random 50-pair corpus
    std::mt19937_64 rng(49979687);
    const std::vector<std::string> stmts{
        "x = 1",     "y = x + 2",         "z = f(x, y)",  "return x",
        "if x:\n    y = 2",               "while y:\n    y -= 1",
        "import os", "x = [1, 2]",        "print(x)",
        "def g(a):\n    return a\n"};
    for (int i = 0; i < 50; ++i) {
        auto mk = [&]() {
            std::string src;
            int n = 1 + static_cast<int>(rng() % 4);
            for (int k = 0; k < n; ++k) src += stmts[rng() % stmts.size()] + "\n";
            return src;
        };
        CodeBleuScore s = codebleu(mk(), {mk()}, Language::Python);
        for (double v : {s.ngram, s.weighted_ngram, s.ast, s.dataflow, s.total})
            c.require(v >= 0.0 && v <= 1.0, "component left [0,1]");
    }

    // identifier-renaming invariance of ast/dataflow on 20 handwritten pairs
    const std::vector<std::pair<std::string, std::string>> renamed_pairs{
        {"x = 1", "y = 1"},
        {"x = 1\ny = x", "a = 1\nb = a"},
        {"x = y + 1", "p = q + 1"},
        {"def f(a):\n    return a\n", "def g(b):\n    return b\n"},
        {"for i in items:\n    s += i\n", "for j in rows:\n    t += j\n"},
        {"while n > 0:\n    n -= 1\n", "while k > 0:\n    k -= 1\n"},
        {"x = f(y)", "u = g(v)"},
        {"a = b = 1", "c = d = 1"},
        {"if x:\n    y = 2\n", "if w:\n    z = 2\n"},
        {"x = 1\nx += 2\ny = x", "m = 1\nm += 2\nn = m"},
        {"def f(a, b):\n    return a * b\n", "def h(x, y):\n    return x * y\n"},
        {"x = y.z(w)", "a = b.c(d)"},
        {"total = 0\nfor v in data:\n    total += v\n",
         "acc = 0\nfor item in values:\n    acc += item\n"},
        {"x = not y", "p = not q"},
        {"x = -y", "a = -b"},
        {"x = y ** 2", "s = t ** 2"},
        {"result = compute(alpha, beta)", "answer = evaluate(gamma, delta)"},
        {"x = 1\ny = 2\nz = x + y", "a = 1\nb = 2\nc = a + b"},
        {"def f():\n    return 1\n", "def q():\n    return 1\n"},
        {"x = y\nz = x\nw = z", "d = e\nf = d\ng = f"},
    };
    for (const auto& [lhs, rhs] : renamed_pairs) {
        auto lt = tokenize(lhs, Language::Python);
        auto rt = tokenize(rhs, Language::Python);
        AstNode la = parse_subset(lt, Language::Python);
        AstNode ra = parse_subset(rt, Language::Python);
        c.require(ast_match(la, ra) == 1.0,
                  "ast_match not renaming-invariant for: " + lhs);
        c.require(dataflow_match(build_dataflow(la), build_dataflow(ra)) == 1.0,
                  "dataflow_match not renaming-invariant for: " + lhs);
    }
}

// ---- 9: patch pipeline ------------------------------------------------------------------

void criterion_patches(Check& c) {
    std::mt19937_64 rng(67867967);
    std::uniform_real_distribution<double> unif(0, 1);
    for (int it = 0; it < 100; ++it) {
        Eigen::Index h = 8 + static_cast<Eigen::Index>(rng() % 250);
        Eigen::Index w = 8 + static_cast<Eigen::Index>(rng() % 900);
        kernels::ImageTensor img(h, w);
        for (auto& ch : img.channels)
            ch = Eigen::MatrixXd::NullaryExpr(h, w, [&]() { return unif(rng); });
        kernels::ImageTensor resized = kernels::smart_resize(img);
        c.require(resized.height() == 128 && resized.width() == 512,
                  "smart_resize output not 3x128x512");
        Eigen::MatrixXd patches = kernels::patchify(resized);
        c.require(patches.rows() == 64 && patches.cols() == 3072,
                  "patchify output not 64x3072");
        kernels::ImageTensor back = kernels::unpatchify(patches);
        for (int ch = 0; ch < 3; ++ch)
            c.require(back.channels[static_cast<std::size_t>(ch)] ==
                          resized.channels[static_cast<std::size_t>(ch)],
                      "unpatchify(patchify(x)) not bit-identical");
    }
}

// ---- 10: end-to-end ------------------------------------------------------------------------

class FixtureSet {
public:
    FixtureSet(const std::string& tag, int c2c_correct, int htr_correct,
               int zsod_tp, int vqa_correct) {
        root_ = fs::temp_directory_path() /
                ("fbeval_acceptance_" + std::to_string(::getpid()) + "_" + tag);
        fs::create_directories(root_ / "gt");
        fs::create_directories(root_ / "pred");

        // C2C: identical pairs score exactly 1, fully-disjoint pairs exactly 0.
        {
            std::ofstream gt(root_ / "gt" / "c2c.jsonl"),
                pred(root_ / "pred" / "c2c.jsonl");
            for (int i = 0; i < 1000; ++i) {
                std::string id = "p" + std::to_string(i);
                gt << "{\"id\": \"" << id
                   << "\", \"java\": \"\", \"python\": [\"x = 1\\ny = x\"]}\n";
                pred << "{\"id\": \"" << id << "\", \"python\": \""
                     << (i < c2c_correct ? "x = 1\\ny = x"
                                         : "if a:\\n    b(c)\\n")
                     << "\"}\n";
            }
        }
        // HTR: exact transcription or a miss.
        {
            std::ofstream gt(root_ / "gt" / "htr.jsonl"),
                pred(root_ / "pred" / "htr.jsonl");
            for (int i = 0; i < 1000; ++i) {
                std::string id = "h" + std::to_string(i);
                gt << "{\"id\": \"" << id << "\", \"text\": \"word" << i
                   << "\"}\n";
                pred << "{\"id\": \"" << id << "\", \"text\": \""
                     << (i < htr_correct ? "word" + std::to_string(i) : "miss")
                     << "\"}\n";
            }
        }
        // ZsOD: tp perfect matches, then (1000 - tp) false positives on
        // negative queries and (1000 - tp) misses, so 2T + FP + FN = 2000.
        {
            std::ofstream gt(root_ / "gt" / "zsod.jsonl"),
                pred(root_ / "pred" / "zsod.jsonl");
            int fp = 1000 - zsod_tp, fn = 1000 - zsod_tp;
            int img = 0;
            auto write_pair = [&](bool has_gt, bool has_pred) {
                std::string id = "img" + std::to_string(img++);
                gt << "{\"image_id\": \"" << id
                   << "\", \"queries\": [{\"label\": \"obj\", \"boxes\": ["
                   << (has_gt ? "[0, 0, 10, 10]" : "") << "]}]}\n";
                pred << "{\"image_id\": \"" << id
                     << "\", \"queries\": [{\"label\": \"obj\", \"boxes\": ["
                     << (has_pred ? "[0, 0, 10, 10]" : "") << "]}]}\n";
            };
            for (int i = 0; i < zsod_tp; ++i) write_pair(true, true);
            for (int i = 0; i < fp; ++i) write_pair(false, true);
            for (int i = 0; i < fn; ++i) write_pair(true, false);
        }
        // VQA: answer matches one of the gt answers or not.
        {
            std::ofstream gt(root_ / "gt" / "vqa.jsonl"),
                pred(root_ / "pred" / "vqa.jsonl");
            for (int i = 0; i < 1000; ++i) {
                std::string id = "q" + std::to_string(i);
                gt << "{\"id\": \"" << id
                   << "\", \"question\": \"?\", \"answers\": [\"yes\", \"да\"]}\n";
                pred << "{\"id\": \"" << id << "\", \"answer\": \""
                     << (i < vqa_correct ? "Yes" : "no") << "\"}\n";
            }
        }
    }
    ~FixtureSet() {
        std::error_code ec;
        fs::remove_all(root_, ec);
    }
    std::string gt_dir() const { return (root_ / "gt").string(); }
    std::string pred_dir() const { return (root_ / "pred").string(); }
    fs::path root() const { return root_; }

private:
    fs::path root_;
};

void criterion_end_to_end(Check& c) {
    {
        FixtureSet fusion("fusion", 132, 587, 191, 327);
        harness::OverallResult r =
            harness::score_overall(fusion.gt_dir(), fusion.pred_dir());
        c.require(std::abs(r.score.c2c - 0.132) <= 1e-12, "fixture c2c != 0.132");
        c.require(std::abs(r.score.htr - 0.587) <= 1e-12, "fixture htr != 0.587");
        c.require(std::abs(r.score.zsod - 0.191) <= 1e-12,
                  "fixture zsod != 0.191");
        c.require(std::abs(r.score.vqa - 0.327) <= 1e-12, "fixture vqa != 0.327");
        c.require(std::abs(r.score.total - 1.237) <= 1e-12,
                  "fixture total != 1.237");
    }
    {
        FixtureSet single("single", 123, 533, 193, 307);
        harness::OverallResult r =
            harness::score_overall(single.gt_dir(), single.pred_dir());
        c.require(std::abs(r.score.total - 1.156) <= 1e-12,
                  "fixture total != 1.156");
    }

    // leaderboard: replaying the log equals the live ranking
    fs::path store_path =
        fs::temp_directory_path() /
        ("fbeval_acceptance_store_" + std::to_string(::getpid()) + ".jsonl");
    std::error_code ec;
    fs::remove(store_path, ec);
    {
        harness::LeaderboardStore live(store_path.string());
        live.append("qbic", 0.320, 0.744, 0.250, 0.365);
        live.append("orzhan", 0.233, 0.314, 0.166, 0.318);
        live.append("Arasaka", 0.218, 0.377, 0.074, 0.237);
        harness::LeaderboardStore replayed(store_path.string());
        auto a = live.ranking();
        auto b = replayed.ranking();
        c.require(a.size() == b.size(), "replay size mismatch");
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            c.require(a[i].submission_id == b[i].submission_id &&
                          a[i].team == b[i].team && a[i].total == b[i].total,
                      "replayed ranking differs from live ranking");
        }
        c.require(a.size() == 3 && a[0].team == "qbic" && a[1].team == "orzhan" &&
                      a[2].team == "Arasaka",
                  "ranking order is not qbic/orzhan/Arasaka");
    }
    fs::remove(store_path, ec);
    fs::remove(store_path.string() + ".idx", ec);
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "overall-score arithmetic", criterion_overall},
        {2, "sampler-weight derivation", criterion_sampler},
        {3, "emissions fit and estimates", criterion_emissions},
        {4, "ctc oracle equivalence", criterion_ctc},
        {5, "assignment optimality", criterion_assignment},
        {6, "detection f1", criterion_detection},
        {7, "giou/iou properties", criterion_giou},
        {8, "codebleu", criterion_codebleu},
        {9, "patch pipeline", criterion_patches},
        {10, "end-to-end overall and leaderboard replay", criterion_end_to_end},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.ok = false;
            check.detail = std::string("exception: ") + e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n",
                    check.ok ? "PASS" : "FAIL", criterion.id, criterion.name,
                    seconds, check.ok ? "" : " -- ",
                    check.ok ? "" : check.detail.c_str());
        if (!check.ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
