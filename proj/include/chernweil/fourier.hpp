#pragma once

#include <map>
#include <vector>

#include "chernweil/torus.hpp"

namespace chernweil {

/// Truncated Fourier series on T^n with r x r complex matrix coefficients:
/// f(x) = sum_k M_k exp(i k.x). Missing frequencies are zero. Exact-zero
/// coefficients are pruned so the zero function has an empty term map.
class FourierMatrix {
public:
    FourierMatrix() = default;
    explicit FourierMatrix(int rank) : rank_(rank) {}

    int rank() const { return rank_; }
    bool empty() const { return terms_.empty(); }
    const std::map<Freq, Mat>& terms() const { return terms_; }

    /// Adds m to the coefficient at frequency k.
    void accumulate(const Freq& k, const Mat& m);

    /// Drops coefficients that are exactly zero.
    void prune();

    const Mat* find(const Freq& k) const;

private:
    int rank_ = 1;
    std::map<Freq, Mat> terms_;
};

FourierMatrix fm_scale(Complex c, const FourierMatrix& a);
void fm_axpy(Complex c, const FourierMatrix& x, FourierMatrix& into);

/// Pointwise product (frequency convolution). Matrix coefficients multiply;
/// a rank-1 factor acts by scalar multiplication on the other operand.
/// Throws FrequencyOverflow when a product mode leaves the truncation band.
FourierMatrix fm_mul(const FourierMatrix& a, const FourierMatrix& b,
                     const TorusChart& chart);

/// d/dx_axis: multiplies the coefficient at k by (i k_axis).
FourierMatrix fm_partial(const FourierMatrix& a, int axis);

FourierMatrix fm_trace(const FourierMatrix& a);

/// Keeps only the zero-frequency coefficient.
FourierMatrix fm_harmonic(const FourierMatrix& a);

Mat fm_eval(const FourierMatrix& a, const std::vector<double>& x);

/// max over matrix entries of sum_k |c_k|; a rigorous pointwise sup bound.
double fm_norm1(const FourierMatrix& a);

}  // namespace chernweil
