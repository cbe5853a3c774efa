#include "chernweil/torus.hpp"

#include "chernweil/errors.hpp"

namespace chernweil {

void validate_chart(const TorusChart& chart) {
    if (chart.dim < 1 || chart.dim > kMaxDim)
        throw EngineError("torus dimension must be in 1.." + std::to_string(kMaxDim));
    if (chart.k_max < 0)
        throw EngineError("k_max must be nonnegative");
}

bool freq_in_band(const Freq& k, const TorusChart& chart) {
    for (int i = 0; i < kMaxDim; ++i) {
        if (i >= chart.dim && k[i] != 0) return false;
        if (k[i] > chart.k_max || k[i] < -chart.k_max) return false;
    }
    return true;
}

double freq_norm_sq(const Freq& k) {
    double s = 0.0;
    for (int i = 0; i < kMaxDim; ++i) s += double(k[i]) * double(k[i]);
    return s;
}

int merge_sign(AxisMask a, AxisMask b) {
    if (a & b) return 0;
    // count pairs (i in a, j in b) with i > j
    int inversions = 0;
    for (int j = 0; j < kMaxDim; ++j) {
        if (!(b & (1u << j))) continue;
        inversions += __builtin_popcount(a & ~((2u << j) - 1u));
    }
    return (inversions & 1) ? -1 : 1;
}

int insert_sign(int axis, AxisMask into) {
    if (into & (1u << axis)) return 0;
    int below = __builtin_popcount(into & ((1u << axis) - 1u));
    return (below & 1) ? -1 : 1;
}

std::vector<int> mask_axes(AxisMask m) {
    std::vector<int> axes;
    for (int i = 0; i < kMaxDim; ++i)
        if (m & (1u << i)) axes.push_back(i);
    return axes;
}

AxisMask mask_from_axes_1based(const std::vector<int>& axes, int dim) {
    AxisMask m = 0;
    for (int a : axes) {
        if (a < 1 || a > dim) throw EngineError("cycle axis out of range");
        AxisMask bit = 1u << (a - 1);
        if (m & bit) throw EngineError("repeated cycle axis");
        m |= bit;
    }
    return m;
}

}  // namespace chernweil
