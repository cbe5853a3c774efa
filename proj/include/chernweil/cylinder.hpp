#pragma once

#include "chernweil/forms.hpp"

namespace chernweil {

/// Polynomial in the interval coordinate t whose coefficients are forms of one
/// shape (chart, rank, grade). An empty coefficient list is the zero
/// polynomial.
class FormPoly {
public:
    FormPoly() = default;
    FormPoly(TorusChart chart, int rank, int grade);
    explicit FormPoly(std::vector<MatrixValuedForm> coeffs);

    const TorusChart& chart() const { return chart_; }
    int rank() const { return rank_; }
    int grade() const { return grade_; }
    int degree() const { return int(coeffs_.size()) - 1; }  // -1 for zero
    bool is_zero() const;

    const std::vector<MatrixValuedForm>& coeffs() const { return coeffs_; }
    MatrixValuedForm coeff(int j) const;  // zero form past the degree

    MatrixValuedForm eval(double t) const;
    FormPoly t_derivative() const;
    FormPoly x_derivative() const;                 // d_X coefficientwise
    MatrixValuedForm integrate01() const;          // exact: t^j -> 1/(j+1)
    void trim();

    /// Sum of coefficient sup norms: bounds sup over t in [0,1].
    double norm_bound() const;

private:
    TorusChart chart_{};
    int rank_ = 1;
    int grade_ = 0;
    std::vector<MatrixValuedForm> coeffs_;
};

FormPoly fp_linear_combine(Complex c1, const FormPoly& a, Complex c2, const FormPoly& b);
FormPoly fp_scale(Complex c, const FormPoly& a);
FormPoly fp_wedge(const FormPoly& a, const FormPoly& b);
FormPoly fp_trace(const FormPoly& a);

/// Form on the cylinder I x X, split as omega = base(t) + dt ^ fiber(t). The
/// grade counts dt, so base has grade g and fiber grade g-1 (absent for g=0).
class CylinderForm {
public:
    CylinderForm() = default;
    CylinderForm(TorusChart chart, int rank, int grade);
    CylinderForm(FormPoly base, FormPoly fiber);

    const TorusChart& chart() const { return base_.chart(); }
    int rank() const { return base_.rank(); }
    int grade() const { return grade_; }
    int t_degree() const { return std::max(base_.degree(), fiber_.degree()); }
    bool is_zero() const { return base_.is_zero() && fiber_.is_zero(); }

    const FormPoly& base() const { return base_; }
    const FormPoly& fiber() const { return fiber_; }

private:
    FormPoly base_;
    FormPoly fiber_;
    int grade_ = 0;
};

CylinderForm cyl_wedge(const CylinderForm& a, const CylinderForm& b);
CylinderForm cyl_d(const CylinderForm& a);
CylinderForm cyl_linear_combine(Complex c1, const CylinderForm& a,
                                Complex c2, const CylinderForm& b);
CylinderForm cyl_scale(Complex c, const CylinderForm& a);
CylinderForm cyl_trace(const CylinderForm& a);

/// Integration along the interval fiber: returns int_0^1 fiber(t) dt on X.
MatrixValuedForm fiber_integrate_t(const CylinderForm& a);

/// Bound for the sup norm over the cylinder.
double cyl_norm_bound(const CylinderForm& a);

/// A form on X viewed as a t-constant cylinder form with no dt part.
CylinderForm cyl_from_form(const MatrixValuedForm& a);

}  // namespace chernweil
