#pragma once

#include <map>
#include <vector>

#include "chernweil/fourier.hpp"

namespace chernweil {

/// A coordinate cycle: the subtorus spanned by `axes` (1-based), translated so
/// the remaining coordinates sit at `basepoint` (full-length vector of angles;
/// entries along `axes` are ignored). These cycles and their translates
/// generate the homology of T^n.
struct CycleSpec {
    std::vector<int> axes;
    std::vector<double> basepoint;  // may be empty: all zeros
};

/// Grade-g differential form on T^n whose components are r x r matrices of
/// truncated Fourier series. Missing components are zero. Grades above n are
/// permitted as a representation of the zero form (products past the top
/// grade collapse to it); such forms never carry components.
class MatrixValuedForm {
public:
    MatrixValuedForm() = default;
    MatrixValuedForm(TorusChart chart, int rank, int grade);

    static MatrixValuedForm zero(TorusChart chart, int rank, int grade) {
        return MatrixValuedForm(chart, rank, grade);
    }

    const TorusChart& chart() const { return chart_; }
    int rank() const { return rank_; }
    int grade() const { return grade_; }
    bool is_zero() const { return comps_.empty(); }

    const std::map<AxisMask, FourierMatrix>& components() const { return comps_; }

    void add_term(AxisMask comp, const Freq& k, const Mat& m);
    void accumulate(AxisMask comp, const FourierMatrix& f);
    void accumulate(AxisMask comp, Complex c, const FourierMatrix& f);

    /// Value of the dx_comp component at the point x (zero matrix if absent).
    Mat eval_component(AxisMask comp, const std::vector<double>& x) const;

    void prune();

private:
    void check_component(AxisMask comp) const;

    TorusChart chart_{};
    int rank_ = 1;
    int grade_ = 0;
    std::map<AxisMask, FourierMatrix> comps_;
};

/// Graded wedge product with matrix multiplication of coefficients. A rank-1
/// operand acts by scalar multiplication. Grade adds; products past the top
/// grade are the zero form.
MatrixValuedForm wedge(const MatrixValuedForm& a, const MatrixValuedForm& b);

/// Exact spectral exterior derivative. Throws GradeOverflow at the top grade.
MatrixValuedForm exterior_derivative(const MatrixValuedForm& a);

MatrixValuedForm linear_combine(Complex c1, const MatrixValuedForm& a,
                                Complex c2, const MatrixValuedForm& b);
MatrixValuedForm scaled(Complex c, const MatrixValuedForm& a);

inline MatrixValuedForm add(const MatrixValuedForm& a, const MatrixValuedForm& b) {
    return linear_combine(1.0, a, 1.0, b);
}
inline MatrixValuedForm sub(const MatrixValuedForm& a, const MatrixValuedForm& b) {
    return linear_combine(1.0, a, -1.0, b);
}

MatrixValuedForm trace_form(const MatrixValuedForm& a);

/// Integrates a scalar grade-|S| form over the coordinate subtorus of the
/// cycle: pulls back to {x_j = basepoint_j, j not in S} and integrates the
/// dx_S component.
Complex integrate_over_subtorus(const MatrixValuedForm& a, const CycleSpec& cycle);

/// Coefficient-sum norm: max over components and matrix entries of sum_k |c_k|.
double sup_norm(const MatrixValuedForm& a);

/// Zero-frequency part of every component; on a flat torus this is exactly the
/// harmonic projection.
MatrixValuedForm harmonic_projection(const MatrixValuedForm& a);

/// Solves d beta = omega for a closed scalar form with no harmonic part, via
/// the Green operator of the flat Laplacian in Fourier space. Throws NotClosed
/// or HarmonicObstruction (the latter carries the harmonic residual).
MatrixValuedForm solve_potential(const MatrixValuedForm& omega, double tol);

namespace detail {
/// d that treats grades >= n as vacuous (returns the empty zero form) instead
/// of throwing; used where top-grade inputs are legitimate.
MatrixValuedForm d_or_vacuous(const MatrixValuedForm& a);
}  // namespace detail

}  // namespace chernweil
