#include "chernweil/rng.hpp"

#include <Eigen/QR>

namespace chernweil {

uint64_t Rng::next() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::unit() { return double(next() >> 11) * 0x1.0p-53; }

double Rng::range(double lo, double hi) { return lo + (hi - lo) * unit(); }

int Rng::integer(int lo, int hi) {
    return lo + int(next() % uint64_t(hi - lo + 1));
}

Complex Rng::cplx(double amplitude) {
    return Complex(range(-amplitude, amplitude), range(-amplitude, amplitude));
}

uint64_t seed_mix(uint64_t seed, const std::string& label, uint64_t index) {
    // FNV-1a over the label, folded with the seed and index
    uint64_t h = 1469598103934665603ull;
    for (char c : label) {
        h ^= uint64_t(uint8_t(c));
        h *= 1099511628211ull;
    }
    h ^= seed + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= index * 0xd1342543de82ef95ull + 1;
    return h;
}

Mat random_skew_hermitian(Rng& rng, int rank, double scale) {
    Mat m(rank, rank);
    for (int i = 0; i < rank; ++i) {
        m(i, i) = Complex(0.0, rng.range(-scale, scale));
        for (int j = i + 1; j < rank; ++j) {
            Complex z = rng.cplx(scale);
            m(i, j) = z;
            m(j, i) = -std::conj(z);
        }
    }
    return m;
}

Mat random_unitary(Rng& rng, int rank) {
    Mat m(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) m(i, j) = rng.cplx(1.0);
    Eigen::HouseholderQR<Mat> qr(m);
    Mat q = qr.householderQ();
    return q;
}

MatrixValuedForm random_form(Rng& rng, const TorusChart& chart, int rank, int grade,
                             int modes, double amplitude, bool skew) {
    MatrixValuedForm f(chart, rank, grade);
    if (grade > chart.dim) return f;
    int n = chart.dim;
    modes = std::min(modes, chart.k_max);

    // iterate over all grade-subsets of axes
    for (AxisMask comp = 0; comp < (1u << n); ++comp) {
        if (mask_grade(comp) != grade) continue;
        // a handful of random modes per component
        int nmodes = 2 + int(rng.next() % 2);
        for (int m = 0; m < nmodes; ++m) {
            Freq k = freq_zero();
            for (int j = 0; j < n; ++j) k[j] = rng.integer(-modes, modes);
            if (skew) {
                Mat a(rank, rank);
                for (int i = 0; i < rank; ++i)
                    for (int j = 0; j < rank; ++j) a(i, j) = rng.cplx(amplitude);
                bool self_paired = true;
                for (int j = 0; j < n; ++j)
                    if (k[j] != 0) self_paired = false;
                if (self_paired) {
                    f.add_term(comp, k, 0.5 * (a - Mat(a.adjoint())));
                } else {
                    Freq mk = freq_zero();
                    for (int j = 0; j < n; ++j) mk[j] = -k[j];
                    f.add_term(comp, k, a);
                    f.add_term(comp, mk, Mat(-a.adjoint()));
                }
            } else {
                Mat a(rank, rank);
                for (int i = 0; i < rank; ++i)
                    for (int j = 0; j < rank; ++j) a(i, j) = rng.cplx(amplitude);
                f.add_term(comp, k, a);
            }
        }
    }
    return f;
}

}  // namespace chernweil
