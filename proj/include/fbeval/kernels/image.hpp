#pragma once

#include <Eigen/Dense>
#include <array>

namespace fbeval::kernels {

// 3-channel image, unit-interval values, channel matrices are height x width.
struct ImageTensor {
    std::array<Eigen::MatrixXd, 3> channels;

    ImageTensor() = default;
    ImageTensor(Eigen::Index height, Eigen::Index width) {
        for (auto& c : channels) c = Eigen::MatrixXd::Zero(height, width);
    }

    Eigen::Index height() const { return channels[0].rows(); }
    Eigen::Index width() const { return channels[0].cols(); }
};

inline constexpr Eigen::Index kHtrHeight = 128;
inline constexpr Eigen::Index kHtrWidth = 512;
inline constexpr Eigen::Index kPatchWidth = 8;
inline constexpr Eigen::Index kPatchCount = kHtrWidth / kPatchWidth;       // 64
inline constexpr Eigen::Index kPatchDim = kHtrHeight * kPatchWidth * 3;    // 3072

// Proportion-preserving bilinear resize into a target_h x target_w canvas:
// scale = min(target_h/H, target_w/W), scaled image at the top-left, the rest
// zero padding.
ImageTensor smart_resize(const ImageTensor& img,
                         Eigen::Index target_h = kHtrHeight,
                         Eigen::Index target_w = kHtrWidth);

// 3 x 128 x 512 -> 64 x 3072. Patch i is the full-height vertical slice over
// columns [8i, 8i+8), flattened row-major as (y, x, channel):
// flat[(y*8 + x)*3 + c]. Throws on a wrong input shape.
Eigen::MatrixXd patchify(const ImageTensor& img);

// Exact inverse of patchify.
ImageTensor unpatchify(const Eigen::MatrixXd& patches);

}  // namespace fbeval::kernels
