#include "chernweil/forms.hpp"

#include <cmath>

#include "chernweil/errors.hpp"

namespace chernweil {

MatrixValuedForm::MatrixValuedForm(TorusChart chart, int rank, int grade)
    : chart_(chart), rank_(rank), grade_(grade) {
    validate_chart(chart_);
    if (rank_ < 1 || rank_ > kMaxRank)
        throw RankMismatch("rank must be in 1.." + std::to_string(kMaxRank));
    if (grade_ < 0) throw GradeMismatch("negative grade");
}

void MatrixValuedForm::check_component(AxisMask comp) const {
    if (mask_grade(comp) != grade_)
        throw GradeMismatch("component tuple length does not match the grade");
    if (comp >= (1u << chart_.dim))
        throw GradeMismatch("component axis outside the chart");
}

void MatrixValuedForm::add_term(AxisMask comp, const Freq& k, const Mat& m) {
    check_component(comp);
    if (!freq_in_band(k, chart_)) throw FrequencyOverflow(chart_.k_max);
    if (m.rows() != rank_ || m.cols() != rank_)
        throw RankMismatch("coefficient matrix size does not match the rank");
    auto it = comps_.find(comp);
    if (it == comps_.end()) it = comps_.emplace(comp, FourierMatrix(rank_)).first;
    it->second.accumulate(k, m);
    if (it->second.empty()) comps_.erase(it);
}

void MatrixValuedForm::accumulate(AxisMask comp, const FourierMatrix& f) {
    accumulate(comp, Complex(1.0, 0.0), f);
}

void MatrixValuedForm::accumulate(AxisMask comp, Complex c, const FourierMatrix& f) {
    if (f.empty() || c == Complex(0.0, 0.0)) return;
    check_component(comp);
    auto it = comps_.find(comp);
    if (it == comps_.end()) it = comps_.emplace(comp, FourierMatrix(rank_)).first;
    fm_axpy(c, f, it->second);
    if (it->second.empty()) comps_.erase(it);
}

Mat MatrixValuedForm::eval_component(AxisMask comp, const std::vector<double>& x) const {
    auto it = comps_.find(comp);
    if (it == comps_.end()) return Mat::Zero(rank_, rank_);
    return fm_eval(it->second, x);
}

void MatrixValuedForm::prune() {
    for (auto it = comps_.begin(); it != comps_.end();) {
        it->second.prune();
        if (it->second.empty())
            it = comps_.erase(it);
        else
            ++it;
    }
}

namespace {

void require_same_chart(const MatrixValuedForm& a, const MatrixValuedForm& b) {
    if (!(a.chart() == b.chart()))
        throw ChartMismatch("operands live on different charts");
}

int common_rank(const MatrixValuedForm& a, const MatrixValuedForm& b) {
    if (a.rank() == b.rank()) return a.rank();
    if (a.rank() == 1) return b.rank();
    if (b.rank() == 1) return a.rank();
    throw RankMismatch("ranks differ and neither operand is scalar");
}

}  // namespace

MatrixValuedForm wedge(const MatrixValuedForm& a, const MatrixValuedForm& b) {
    require_same_chart(a, b);
    int rout = common_rank(a, b);
    MatrixValuedForm r(a.chart(), rout, a.grade() + b.grade());
    if (a.grade() + b.grade() > a.chart().dim) return r;  // zero past top grade
    for (const auto& [ia, fa] : a.components()) {
        for (const auto& [ib, fb] : b.components()) {
            int sign = merge_sign(ia, ib);
            if (sign == 0) continue;
            FourierMatrix prod = fm_mul(fa, fb, a.chart());
            r.accumulate(ia | ib, Complex(double(sign), 0.0), prod);
        }
    }
    return r;
}

MatrixValuedForm exterior_derivative(const MatrixValuedForm& a) {
    if (a.grade() >= a.chart().dim)
        throw GradeOverflow("exterior derivative of a top-grade form");
    return detail::d_or_vacuous(a);
}

namespace detail {

MatrixValuedForm d_or_vacuous(const MatrixValuedForm& a) {
    MatrixValuedForm r(a.chart(), a.rank(), a.grade() + 1);
    if (a.grade() >= a.chart().dim) return r;
    for (const auto& [comp, f] : a.components()) {
        for (int j = 0; j < a.chart().dim; ++j) {
            int sign = insert_sign(j, comp);
            if (sign == 0) continue;
            FourierMatrix df = fm_partial(f, j);
            if (df.empty()) continue;
            r.accumulate(comp | (1u << j), Complex(double(sign), 0.0), df);
        }
    }
    return r;
}

}  // namespace detail

MatrixValuedForm linear_combine(Complex c1, const MatrixValuedForm& a,
                                Complex c2, const MatrixValuedForm& b) {
    require_same_chart(a, b);
    if (a.rank() != b.rank()) throw RankMismatch("linear_combine needs equal ranks");
    if (a.grade() != b.grade()) throw GradeMismatch("linear_combine needs equal grades");
    MatrixValuedForm r(a.chart(), a.rank(), a.grade());
    for (const auto& [comp, f] : a.components()) r.accumulate(comp, c1, f);
    for (const auto& [comp, f] : b.components()) r.accumulate(comp, c2, f);
    return r;
}

MatrixValuedForm scaled(Complex c, const MatrixValuedForm& a) {
    MatrixValuedForm r(a.chart(), a.rank(), a.grade());
    for (const auto& [comp, f] : a.components()) r.accumulate(comp, c, f);
    return r;
}

MatrixValuedForm trace_form(const MatrixValuedForm& a) {
    MatrixValuedForm r(a.chart(), 1, a.grade());
    for (const auto& [comp, f] : a.components()) r.accumulate(comp, fm_trace(f));
    return r;
}

Complex integrate_over_subtorus(const MatrixValuedForm& a, const CycleSpec& cycle) {
    if (a.rank() != 1) throw RankNotScalar("integration needs a scalar form");
    int n = a.chart().dim;
    AxisMask s = mask_from_axes_1based(cycle.axes, n);
    if (mask_grade(s) != a.grade())
        throw GradeMismatch("cycle dimension does not match the form grade");
    std::vector<double> bp(size_t(n), 0.0);
    for (size_t i = 0; i < cycle.basepoint.size() && i < size_t(n); ++i)
        bp[i] = cycle.basepoint[i];

    auto it = a.components().find(s);
    if (it == a.components().end()) return Complex(0.0, 0.0);

    Complex acc(0.0, 0.0);
    for (const auto& [k, m] : it->second.terms()) {
        bool zero_on_s = true;
        double phase = 0.0;
        for (int j = 0; j < n; ++j) {
            if (s & (1u << j)) {
                if (k[j] != 0) { zero_on_s = false; break; }
            } else {
                phase += double(k[j]) * bp[size_t(j)];
            }
        }
        if (!zero_on_s) continue;
        acc += m(0, 0) * std::exp(Complex(0.0, phase));
    }
    double vol = std::pow(kTwoPi, double(mask_grade(s)));
    return vol * acc;
}

double sup_norm(const MatrixValuedForm& a) {
    double r = 0.0;
    for (const auto& [comp, f] : a.components()) r = std::max(r, fm_norm1(f));
    return r;
}

MatrixValuedForm harmonic_projection(const MatrixValuedForm& a) {
    MatrixValuedForm r(a.chart(), a.rank(), a.grade());
    for (const auto& [comp, f] : a.components()) r.accumulate(comp, fm_harmonic(f));
    return r;
}

MatrixValuedForm solve_potential(const MatrixValuedForm& omega, double tol) {
    if (omega.grade() < 1) throw GradeMismatch("a 0-form has no potential");
    double closed_res = sup_norm(detail::d_or_vacuous(omega));
    if (closed_res > tol) throw NotClosed("input is not closed within tolerance");
    double harm_res = sup_norm(harmonic_projection(omega));
    if (harm_res > tol) throw HarmonicObstruction(harm_res);

    // beta = delta G omega, frequency by frequency:
    //   delta(f dx_I) = -sum_{j in I} (-1)^{pos(j,I)} (d/dx_j f) dx_{I \ j}
    //   G multiplies the mode k != 0 by 1/|k|^2.
    MatrixValuedForm beta(omega.chart(), omega.rank(), omega.grade() - 1);
    for (const auto& [comp, f] : omega.components()) {
        for (const auto& [k, m] : f.terms()) {
            double k2 = freq_norm_sq(k);
            if (k2 == 0.0) continue;  // harmonic part already certified small
            int pos = 0;
            for (int j = 0; j < omega.chart().dim; ++j) {
                if (!(comp & (1u << j))) continue;
                if (k[j] != 0) {
                    Complex c = -Complex(0.0, double(k[j])) / k2;
                    if (pos & 1) c = -c;
                    beta.add_term(comp & ~(1u << j), k, c * m);
                }
                ++pos;
            }
        }
    }
    return beta;
}

}  // namespace chernweil
