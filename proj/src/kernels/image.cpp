#include "fbeval/kernels/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fbeval::kernels {

ImageTensor smart_resize(const ImageTensor& img, Eigen::Index target_h,
                         Eigen::Index target_w) {
    const Eigen::Index h = img.height(), w = img.width();
    if (h < 1 || w < 1) throw std::invalid_argument("smart_resize: empty image");

    const double scale = std::min(static_cast<double>(target_h) / h,
                                  static_cast<double>(target_w) / w);
    const Eigen::Index out_h =
        std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::llround(h * scale)),
                                 1, target_h);
    const Eigen::Index out_w =
        std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::llround(w * scale)),
                                 1, target_w);

    ImageTensor out(target_h, target_w);
    // Bilinear, half-pixel centers (align_corners = false); scale 1 is exact.
    const double sy = static_cast<double>(h) / out_h;
    const double sx = static_cast<double>(w) / out_w;
    for (int c = 0; c < 3; ++c) {
        const Eigen::MatrixXd& src = img.channels[c];
        Eigen::MatrixXd& dst = out.channels[c];
        for (Eigen::Index y = 0; y < out_h; ++y) {
            double fy = (y + 0.5) * sy - 0.5;
            Eigen::Index y0 = static_cast<Eigen::Index>(std::floor(fy));
            double wy = fy - y0;
            Eigen::Index y0c = std::clamp<Eigen::Index>(y0, 0, h - 1);
            Eigen::Index y1c = std::clamp<Eigen::Index>(y0 + 1, 0, h - 1);
            for (Eigen::Index x = 0; x < out_w; ++x) {
                double fx = (x + 0.5) * sx - 0.5;
                Eigen::Index x0 = static_cast<Eigen::Index>(std::floor(fx));
                double wx = fx - x0;
                Eigen::Index x0c = std::clamp<Eigen::Index>(x0, 0, w - 1);
                Eigen::Index x1c = std::clamp<Eigen::Index>(x0 + 1, 0, w - 1);
                dst(y, x) = (1 - wy) * ((1 - wx) * src(y0c, x0c) + wx * src(y0c, x1c)) +
                            wy * ((1 - wx) * src(y1c, x0c) + wx * src(y1c, x1c));
            }
        }
    }
    return out;
}

Eigen::MatrixXd patchify(const ImageTensor& img) {
    if (img.height() != kHtrHeight || img.width() != kHtrWidth)
        throw std::invalid_argument("patchify: expected 3x128x512 input");
    Eigen::MatrixXd patches(kPatchCount, kPatchDim);
    for (Eigen::Index p = 0; p < kPatchCount; ++p)
        for (Eigen::Index y = 0; y < kHtrHeight; ++y)
            for (Eigen::Index x = 0; x < kPatchWidth; ++x)
                for (Eigen::Index c = 0; c < 3; ++c)
                    patches(p, (y * kPatchWidth + x) * 3 + c) =
                        img.channels[static_cast<std::size_t>(c)](y, p * kPatchWidth + x);
    return patches;
}

ImageTensor unpatchify(const Eigen::MatrixXd& patches) {
    if (patches.rows() != kPatchCount || patches.cols() != kPatchDim)
        throw std::invalid_argument("unpatchify: expected 64x3072 input");
    ImageTensor img(kHtrHeight, kHtrWidth);
    for (Eigen::Index p = 0; p < kPatchCount; ++p)
        for (Eigen::Index y = 0; y < kHtrHeight; ++y)
            for (Eigen::Index x = 0; x < kPatchWidth; ++x)
                for (Eigen::Index c = 0; c < 3; ++c)
                    img.channels[static_cast<std::size_t>(c)](y, p * kPatchWidth + x) =
                        patches(p, (y * kPatchWidth + x) * 3 + c);
    return img;
}

}  // namespace fbeval::kernels
