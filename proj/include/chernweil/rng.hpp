#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chernweil/forms.hpp"

namespace chernweil {

/// Deterministic generator with platform-independent output (splitmix64 under
/// the hood), so identical seeds give byte-identical reports everywhere.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next();
    double unit();                       // [0,1)
    double range(double lo, double hi);  // [lo,hi)
    int integer(int lo, int hi);         // inclusive bounds
    Complex cplx(double amplitude);

private:
    uint64_t state_;
};

uint64_t seed_mix(uint64_t seed, const std::string& label, uint64_t index = 0);

/// Random skew-Hermitian r x r matrix, entries of the given scale.
Mat random_skew_hermitian(Rng& rng, int rank, double scale);

/// Random unitary matrix (QR of a random complex matrix).
Mat random_unitary(Rng& rng, int rank);

/// Random matrix-valued grade-g form with Fourier modes |k_i| <= modes.
/// When skew is set, coefficients pair as M_{-k} = -M_k^*, so the form takes
/// skew-Hermitian values pointwise.
MatrixValuedForm random_form(Rng& rng, const TorusChart& chart, int rank, int grade,
                             int modes, double amplitude, bool skew = false);

}  // namespace chernweil
