#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace chernweil {

inline constexpr int kMaxDim = 6;
inline constexpr int kMaxRank = 4;
inline constexpr int kMaxPathDegree = 8;
inline constexpr int kMaxPolyDegree = 4;  // invariant polynomial degree p

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Flat torus T^n. Angular coordinates x_1..x_n have period 2*pi. The chart
/// also carries the hard Fourier truncation bound K_max: products that would
/// leave the band raise FrequencyOverflow instead of silently truncating.
struct TorusChart {
    int dim = 1;
    int k_max = 4;

    friend bool operator==(const TorusChart&, const TorusChart&) = default;
};

void validate_chart(const TorusChart& chart);

/// Frequency vector k in Z^n; entries beyond dim stay zero.
using Freq = std::array<int, kMaxDim>;

inline Freq freq_zero() { return Freq{}; }

bool freq_in_band(const Freq& k, const TorusChart& chart);
double freq_norm_sq(const Freq& k);

inline Freq freq_add(const Freq& a, const Freq& b) {
    Freq r{};
    for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] + b[i];
    return r;
}

/// Antisymmetric index tuples dx_{i_1} ^ ... ^ dx_{i_g} (i_1 < ... < i_g) are
/// stored as bitmasks over axes 0..dim-1.
using AxisMask = unsigned;

inline int mask_grade(AxisMask m) { return __builtin_popcount(m); }

/// Sign of dx_A ^ dx_B -> dx_{A u B}; 0 when the tuples share an axis.
int merge_sign(AxisMask a, AxisMask b);

/// Sign of dx_axis ^ dx_I -> dx_{I u {axis}}; 0 when axis already in I.
int insert_sign(int axis, AxisMask into);

std::vector<int> mask_axes(AxisMask m);  // 0-based, ascending
AxisMask mask_from_axes_1based(const std::vector<int>& axes, int dim);

}  // namespace chernweil
