#include "chernweil/fourier.hpp"

#include "chernweil/errors.hpp"

namespace chernweil {

namespace {

bool is_exact_zero(const Mat& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != Complex(0.0, 0.0)) return false;
    return true;
}

}  // namespace

void FourierMatrix::accumulate(const Freq& k, const Mat& m) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        if (!is_exact_zero(m)) terms_.emplace(k, m);
    } else {
        it->second += m;
        if (is_exact_zero(it->second)) terms_.erase(it);
    }
}

void FourierMatrix::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (is_exact_zero(it->second))
            it = terms_.erase(it);
        else
            ++it;
    }
}

const Mat* FourierMatrix::find(const Freq& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? nullptr : &it->second;
}

FourierMatrix fm_scale(Complex c, const FourierMatrix& a) {
    FourierMatrix r(a.rank());
    if (c == Complex(0.0, 0.0)) return r;
    for (const auto& [k, m] : a.terms()) r.accumulate(k, c * m);
    return r;
}

void fm_axpy(Complex c, const FourierMatrix& x, FourierMatrix& into) {
    if (c == Complex(0.0, 0.0)) return;
    for (const auto& [k, m] : x.terms()) into.accumulate(k, c * m);
}

FourierMatrix fm_mul(const FourierMatrix& a, const FourierMatrix& b,
                     const TorusChart& chart) {
    int ra = a.rank(), rb = b.rank();
    int rout = (ra == 1) ? rb : ra;
    if (ra != rb && ra != 1 && rb != 1)
        throw RankMismatch("matrix ranks differ and neither factor is scalar");
    FourierMatrix r(rout);
    for (const auto& [ka, ma] : a.terms()) {
        for (const auto& [kb, mb] : b.terms()) {
            Freq k = freq_add(ka, kb);
            if (!freq_in_band(k, chart)) throw FrequencyOverflow(chart.k_max);
            if (ra == rb)
                r.accumulate(k, ma * mb);
            else if (ra == 1)
                r.accumulate(k, ma(0, 0) * mb);
            else
                r.accumulate(k, mb(0, 0) * ma);
        }
    }
    return r;
}

FourierMatrix fm_partial(const FourierMatrix& a, int axis) {
    FourierMatrix r(a.rank());
    for (const auto& [k, m] : a.terms()) {
        if (k[axis] == 0) continue;
        r.accumulate(k, Complex(0.0, double(k[axis])) * m);
    }
    return r;
}

FourierMatrix fm_trace(const FourierMatrix& a) {
    FourierMatrix r(1);
    for (const auto& [k, m] : a.terms()) {
        Mat t(1, 1);
        t(0, 0) = m.trace();
        r.accumulate(k, t);
    }
    return r;
}

FourierMatrix fm_harmonic(const FourierMatrix& a) {
    FourierMatrix r(a.rank());
    if (const Mat* m = a.find(freq_zero())) r.accumulate(freq_zero(), *m);
    return r;
}

Mat fm_eval(const FourierMatrix& a, const std::vector<double>& x) {
    Mat r = Mat::Zero(a.rank(), a.rank());
    for (const auto& [k, m] : a.terms()) {
        double phase = 0.0;
        for (size_t i = 0; i < x.size() && i < size_t(kMaxDim); ++i)
            phase += double(k[i]) * x[i];
        r += std::exp(Complex(0.0, phase)) * m;
    }
    return r;
}

double fm_norm1(const FourierMatrix& a) {
    if (a.empty()) return 0.0;
    int r = a.rank();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(r, r);
    for (const auto& [k, m] : a.terms()) acc += m.cwiseAbs();
    return acc.maxCoeff();
}

}  // namespace chernweil
