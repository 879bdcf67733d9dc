#include "fbeval/types.hpp"

#include <cmath>

namespace fbeval {

TaskKind parse_task(const std::string& name) {
    if (name == "c2c" || name == "C2C") return TaskKind::C2C;
    if (name == "htr" || name == "HTR") return TaskKind::HTR;
    if (name == "zsod" || name == "ZsOD" || name == "ZSOD") return TaskKind::ZsOD;
    if (name == "vqa" || name == "VQA") return TaskKind::VQA;
    throw ValidationError("unknown task: " + name);
}

OverallScore overall(double c2c, double htr, double zsod, double vqa) {
    auto check = [](double v, const char* which) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::range_error(std::string(which) +
                                   " score outside [0,1]: " + std::to_string(v));
    };
    check(c2c, "c2c");
    check(htr, "htr");
    check(zsod, "zsod");
    check(vqa, "vqa");
    OverallScore s;
    s.c2c = c2c;
    s.htr = htr;
    s.zsod = zsod;
    s.vqa = vqa;
    s.total = c2c + htr + zsod + vqa;
    return s;
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

}  // namespace fbeval
