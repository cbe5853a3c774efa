#include "chernweil/cylinder.hpp"

#include "chernweil/errors.hpp"

namespace chernweil {

FormPoly::FormPoly(TorusChart chart, int rank, int grade)
    : chart_(chart), rank_(rank), grade_(grade) {}

FormPoly::FormPoly(std::vector<MatrixValuedForm> coeffs) {
    if (coeffs.empty()) throw EngineError("FormPoly needs at least one coefficient");
    chart_ = coeffs.front().chart();
    rank_ = coeffs.front().rank();
    grade_ = coeffs.front().grade();
    for (const auto& c : coeffs) {
        if (!(c.chart() == chart_) || c.rank() != rank_ || c.grade() != grade_)
            throw GradeMismatch("FormPoly coefficients must share one shape");
    }
    coeffs_ = std::move(coeffs);
    trim();
}

bool FormPoly::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

MatrixValuedForm FormPoly::coeff(int j) const {
    if (j >= 0 && j < int(coeffs_.size())) return coeffs_[size_t(j)];
    return MatrixValuedForm(chart_, rank_, grade_);
}

MatrixValuedForm FormPoly::eval(double t) const {
    MatrixValuedForm r(chart_, rank_, grade_);
    double tj = 1.0;
    for (const auto& c : coeffs_) {
        r = linear_combine(1.0, r, tj, c);
        tj *= t;
    }
    return r;
}

FormPoly FormPoly::t_derivative() const {
    FormPoly r(chart_, rank_, grade_);
    for (size_t j = 1; j < coeffs_.size(); ++j)
        r.coeffs_.push_back(scaled(double(j), coeffs_[j]));
    r.trim();
    return r;
}

FormPoly FormPoly::x_derivative() const {
    FormPoly r(chart_, rank_, grade_ + 1);
    for (const auto& c : coeffs_) r.coeffs_.push_back(detail::d_or_vacuous(c));
    r.trim();
    return r;
}

MatrixValuedForm FormPoly::integrate01() const {
    MatrixValuedForm r(chart_, rank_, grade_);
    for (size_t j = 0; j < coeffs_.size(); ++j)
        r = linear_combine(1.0, r, 1.0 / double(j + 1), coeffs_[j]);
    return r;
}

void FormPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

double FormPoly::norm_bound() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += sup_norm(c);
    return s;
}

FormPoly fp_linear_combine(Complex c1, const FormPoly& a, Complex c2, const FormPoly& b) {
    if (!(a.chart() == b.chart()) || a.rank() != b.rank() || a.grade() != b.grade())
        throw GradeMismatch("FormPoly shapes differ");
    int deg = std::max(a.degree(), b.degree());
    if (deg < 0) return FormPoly(a.chart(), a.rank(), a.grade());
    std::vector<MatrixValuedForm> coeffs;
    coeffs.reserve(size_t(deg + 1));
    for (int j = 0; j <= deg; ++j)
        coeffs.push_back(linear_combine(c1, a.coeff(j), c2, b.coeff(j)));
    return FormPoly(std::move(coeffs));
}

FormPoly fp_scale(Complex c, const FormPoly& a) {
    if (a.degree() < 0) return a;
    std::vector<MatrixValuedForm> coeffs;
    for (const auto& x : a.coeffs()) coeffs.push_back(scaled(c, x));
    return FormPoly(std::move(coeffs));
}

FormPoly fp_wedge(const FormPoly& a, const FormPoly& b) {
    int rout = (a.rank() == 1) ? b.rank() : a.rank();
    FormPoly zero(a.chart(), rout, a.grade() + b.grade());
    if (a.is_zero() || b.is_zero()) return zero;
    std::vector<MatrixValuedForm> coeffs(
        size_t(a.degree() + b.degree() + 1),
        MatrixValuedForm(a.chart(), rout, a.grade() + b.grade()));
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j)
            coeffs[size_t(i + j)] = linear_combine(
                1.0, coeffs[size_t(i + j)], 1.0, wedge(a.coeff(i), b.coeff(j)));
    return FormPoly(std::move(coeffs));
}

FormPoly fp_trace(const FormPoly& a) {
    if (a.degree() < 0) return FormPoly(a.chart(), 1, a.grade());
    std::vector<MatrixValuedForm> coeffs;
    for (const auto& c : a.coeffs()) coeffs.push_back(trace_form(c));
    return FormPoly(std::move(coeffs));
}

CylinderForm::CylinderForm(TorusChart chart, int rank, int grade)
    : base_(chart, rank, grade),
      fiber_(chart, rank, grade > 0 ? grade - 1 : 0),
      grade_(grade) {
    if (grade < 0) throw GradeMismatch("negative cylinder grade");
}

CylinderForm::CylinderForm(FormPoly base, FormPoly fiber)
    : base_(std::move(base)), fiber_(std::move(fiber)) {
    grade_ = base_.grade();
    if (grade_ > 0 && fiber_.grade() != grade_ - 1)
        throw GradeMismatch("cylinder fiber grade must be base grade - 1");
    if (grade_ == 0 && !fiber_.is_zero())
        throw GradeMismatch("a grade-0 cylinder form has no dt part");
    if (!(base_.chart() == fiber_.chart()) || base_.rank() != fiber_.rank())
        throw ChartMismatch("cylinder base and fiber shapes differ");
}

CylinderForm cyl_wedge(const CylinderForm& a, const CylinderForm& b) {
    // (a0 + dt^a1)^(b0 + dt^b1) = a0^b0 + dt^(a1^b0 + (-1)^{|a0|} a0^b1)
    FormPoly base = fp_wedge(a.base(), b.base());
    int g = a.grade() + b.grade();
    if (g == 0) return CylinderForm(std::move(base), FormPoly(base.chart(), base.rank(), 0));
    FormPoly fiber(base.chart(), base.rank(), g - 1);
    if (a.grade() > 0) fiber = fp_linear_combine(1.0, fiber, 1.0, fp_wedge(a.fiber(), b.base()));
    if (b.grade() > 0) {
        double sgn = (a.grade() % 2 == 0) ? 1.0 : -1.0;
        fiber = fp_linear_combine(1.0, fiber, sgn, fp_wedge(a.base(), b.fiber()));
    }
    return CylinderForm(std::move(base), std::move(fiber));
}

CylinderForm cyl_d(const CylinderForm& a) {
    // d(a0 + dt^a1) = d_X a0 + dt^(dt a0 - d_X a1)
    FormPoly base = a.base().x_derivative();
    FormPoly fiber = a.base().t_derivative();
    if (a.grade() > 0)
        fiber = fp_linear_combine(1.0, fiber, -1.0, a.fiber().x_derivative());
    return CylinderForm(std::move(base), std::move(fiber));
}

CylinderForm cyl_linear_combine(Complex c1, const CylinderForm& a,
                                Complex c2, const CylinderForm& b) {
    return CylinderForm(fp_linear_combine(c1, a.base(), c2, b.base()),
                        fp_linear_combine(c1, a.fiber(), c2, b.fiber()));
}

CylinderForm cyl_scale(Complex c, const CylinderForm& a) {
    return CylinderForm(fp_scale(c, a.base()), fp_scale(c, a.fiber()));
}

CylinderForm cyl_trace(const CylinderForm& a) {
    return CylinderForm(fp_trace(a.base()), fp_trace(a.fiber()));
}

MatrixValuedForm fiber_integrate_t(const CylinderForm& a) {
    return a.fiber().integrate01();
}

double cyl_norm_bound(const CylinderForm& a) {
    return a.base().norm_bound() + a.fiber().norm_bound();
}

CylinderForm cyl_from_form(const MatrixValuedForm& a) {
    FormPoly base = a.is_zero() ? FormPoly(a.chart(), a.rank(), a.grade())
                                : FormPoly(std::vector<MatrixValuedForm>{a});
    FormPoly fiber(a.chart(), a.rank(), a.grade() > 0 ? a.grade() - 1 : 0);
    return CylinderForm(std::move(base), std::move(fiber));
}

}  // namespace chernweil
