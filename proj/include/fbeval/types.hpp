#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fbeval {

// The four competition tasks. Every submission record carries exactly one.
enum class TaskKind { C2C, HTR, ZsOD, VQA };

constexpr const char* task_name(TaskKind t) {
    switch (t) {
        case TaskKind::C2C: return "c2c";
        case TaskKind::HTR: return "htr";
        case TaskKind::ZsOD: return "zsod";
        case TaskKind::VQA: return "vqa";
    }
    return "?";
}

TaskKind parse_task(const std::string& name);

constexpr TaskKind kAllTasks[] = {TaskKind::C2C, TaskKind::HTR, TaskKind::ZsOD,
                                  TaskKind::VQA};

// Axis-aligned box in corner form, absolute pixels.
struct BBox {
    double x_min = 0;
    double y_min = 0;
    double x_max = 0;
    double y_max = 0;

    bool valid() const {
        return x_min >= 0 && y_min >= 0 && x_min <= x_max && y_min <= y_max;
    }
    double area() const { return (x_max - x_min) * (y_max - y_min); }
};

// Raised when an input file or record violates its schema. Carries the file
// and line the problem was found at, when known.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg)
        : std::runtime_error(msg) {}
    ValidationError(const std::string& file, int line, const std::string& msg)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + msg),
          file_(file),
          line_(line) {}

    const std::string& file() const { return file_; }
    int line() const { return line_; }

private:
    std::string file_;
    int line_ = 0;
};

struct ScoreReport {
    TaskKind task = TaskKind::C2C;
    double score = 0.0;  // in [0, 1]
    int sample_count = 0;
    std::vector<std::pair<std::string, double>> per_sample;
    int warnings = 0;  // e.g. ids with no prediction, scored as wrong
};

struct OverallScore {
    double c2c = 0, htr = 0, zsod = 0, vqa = 0;
    double total = 0;                        // exact sum of the four
    std::vector<TaskKind> missing;           // tasks that contributed 0 by absence
};

// Sums four unit-interval task scores. Inputs must already be on the 0-1
// scale; a percent-scale CodeBLEU value is the caller's problem (the CLI
// exposes a x0.01 flag for that).
OverallScore overall(double c2c, double htr, double zsod, double vqa);

// Display rounding used at report emission; scores stay full-precision
// everywhere else.
double round3(double v);

}  // namespace fbeval
