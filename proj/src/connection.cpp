#include "chernweil/connection.hpp"

#include <cmath>

#include "chernweil/errors.hpp"
#include "chernweil/quadrature.hpp"

namespace chernweil {

Connection::Connection(MatrixValuedForm a) : a_(std::move(a)) {
    if (a_.grade() != 1) throw GradeMismatch("a connection form has grade 1");
}

MatrixValuedForm curvature(const Connection& c) {
    MatrixValuedForm da = detail::d_or_vacuous(c.form());
    return linear_combine(1.0, da, 1.0, wedge(c.form(), c.form()));
}

std::pair<bool, double> is_flat(const Connection& c, double tol) {
    if (tol <= 0.0) throw EngineError("flatness tolerance must be positive");
    double res = sup_norm(curvature(c));
    return {res <= tol, res};
}

ConnectionPath::ConnectionPath(std::vector<MatrixValuedForm> coeffs)
    : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw EngineError("a path needs at least one coefficient");
    if (degree() > kMaxPathDegree)
        throw EngineError("path degree exceeds " + std::to_string(kMaxPathDegree));
    const auto& front = coeffs_.front();
    for (const auto& c : coeffs_) {
        if (c.grade() != 1) throw GradeMismatch("path coefficients have grade 1");
        if (!(c.chart() == front.chart()) || c.rank() != front.rank())
            throw ChartMismatch("path coefficients must share chart and rank");
    }
}

MatrixValuedForm path_eval_form(const ConnectionPath& p, double t) {
    MatrixValuedForm r(p.chart(), p.rank(), 1);
    double tj = 1.0;
    for (const auto& c : p.coeffs()) {
        r = linear_combine(1.0, r, tj, c);
        tj *= t;
    }
    return r;
}

Connection path_eval(const ConnectionPath& p, double t) {
    return Connection(path_eval_form(p, t));
}

ConnectionPath path_derivative(const ConnectionPath& p) {
    std::vector<MatrixValuedForm> coeffs;
    for (int j = 1; j <= p.degree(); ++j)
        coeffs.push_back(scaled(double(j), p.coeffs()[size_t(j)]));
    if (coeffs.empty()) coeffs.push_back(MatrixValuedForm(p.chart(), p.rank(), 1));
    return ConnectionPath(std::move(coeffs));
}

ConnectionPath convex_path(const Connection& c0, const Connection& c1) {
    if (!(c0.chart() == c1.chart()) || c0.rank() != c1.rank())
        throw ChartMismatch("convex_path endpoints must share chart and rank");
    std::vector<MatrixValuedForm> coeffs;
    coeffs.push_back(c0.form());
    coeffs.push_back(sub(c1.form(), c0.form()));
    return ConnectionPath(std::move(coeffs));
}

ConnectionPath reparametrize(const ConnectionPath& p, const std::vector<double>& phi) {
    // Horner over polynomial coefficients: A(phi(t)).
    int dphi = int(phi.size()) - 1;
    if (dphi < 0) throw EngineError("empty reparametrization polynomial");
    int dout = p.degree() * std::max(dphi, 0);
    if (dout > kMaxPathDegree)
        throw EngineError("reparametrized path degree exceeds " +
                          std::to_string(kMaxPathDegree));
    // powers of phi as scalar polynomials
    std::vector<std::vector<double>> pow(size_t(p.degree()) + 1);
    pow[0] = {1.0};
    for (int j = 1; j <= p.degree(); ++j) {
        const auto& prev = pow[size_t(j - 1)];
        std::vector<double> cur(prev.size() + phi.size() - 1, 0.0);
        for (size_t a = 0; a < prev.size(); ++a)
            for (size_t b = 0; b < phi.size(); ++b) cur[a + b] += prev[a] * phi[b];
        pow[size_t(j)] = std::move(cur);
    }
    std::vector<MatrixValuedForm> coeffs(
        size_t(dout) + 1, MatrixValuedForm(p.chart(), p.rank(), 1));
    for (int j = 0; j <= p.degree(); ++j)
        for (size_t m = 0; m < pow[size_t(j)].size(); ++m)
            coeffs[m] = linear_combine(1.0, coeffs[m], pow[size_t(j)][m],
                                       p.coeffs()[size_t(j)]);
    return ConnectionPath(std::move(coeffs));
}

namespace {

std::vector<double> flatness_samples(int curvature_degree) {
    int nodes = std::max(9, curvature_degree + 1);
    const auto& rule = gauss_legendre_01(nodes);
    std::vector<double> ts = rule.nodes;
    ts.push_back(0.0);
    ts.push_back(1.0);
    return ts;
}

}  // namespace

double path_flat_residual(const ConnectionPath& p) {
    double res = 0.0;
    for (double t : flatness_samples(2 * std::max(p.degree(), 0)))
        res = std::max(res, sup_norm(curvature(path_eval(p, t))));
    return res;
}

ConnectionSheet::ConnectionSheet(std::vector<std::vector<MatrixValuedForm>> coeffs)
    : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty() || coeffs_.front().empty())
        throw EngineError("a sheet needs at least one coefficient");
    size_t cols = coeffs_.front().size();
    const auto& front = coeffs_.front().front();
    for (const auto& row : coeffs_) {
        if (row.size() != cols) throw EngineError("ragged sheet coefficients");
        for (const auto& c : row) {
            if (c.grade() != 1) throw GradeMismatch("sheet coefficients have grade 1");
            if (!(c.chart() == front.chart()) || c.rank() != front.rank())
                throw ChartMismatch("sheet coefficients must share chart and rank");
        }
    }
    if (s_degree() > kMaxPathDegree || t_degree() > kMaxPathDegree)
        throw EngineError("sheet degree exceeds " + std::to_string(kMaxPathDegree));
}

double endpoints_residual(const ConnectionSheet& sh) {
    double res = 0.0;
    for (int j = 1; j <= sh.s_degree(); ++j) {
        // s^j coefficient of A(s,0) and of A(s,1)
        res = std::max(res, sup_norm(sh.coeff(j, 0)));
        MatrixValuedForm at1(sh.chart(), sh.rank(), 1);
        for (int k = 0; k <= sh.t_degree(); ++k)
            at1 = linear_combine(1.0, at1, 1.0, sh.coeff(j, k));
        res = std::max(res, sup_norm(at1));
    }
    return res;
}

bool endpoints_fixed(const ConnectionSheet& sh, double tol) {
    return endpoints_residual(sh) <= tol;
}

ConnectionPath path_at_s(const ConnectionSheet& sh, double s) {
    std::vector<MatrixValuedForm> coeffs;
    for (int k = 0; k <= sh.t_degree(); ++k) {
        MatrixValuedForm c(sh.chart(), sh.rank(), 1);
        double sj = 1.0;
        for (int j = 0; j <= sh.s_degree(); ++j) {
            c = linear_combine(1.0, c, sj, sh.coeff(j, k));
            sj *= s;
        }
        coeffs.push_back(std::move(c));
    }
    return ConnectionPath(std::move(coeffs));
}

Connection sheet_eval(const ConnectionSheet& sh, double s, double t) {
    return path_eval(path_at_s(sh, s), t);
}

ConnectionSheet sheet_partial_s(const ConnectionSheet& sh) {
    std::vector<std::vector<MatrixValuedForm>> coeffs;
    for (int j = 1; j <= sh.s_degree(); ++j) {
        std::vector<MatrixValuedForm> row;
        for (int k = 0; k <= sh.t_degree(); ++k)
            row.push_back(scaled(double(j), sh.coeff(j, k)));
        coeffs.push_back(std::move(row));
    }
    if (coeffs.empty())
        coeffs.push_back({MatrixValuedForm(sh.chart(), sh.rank(), 1)});
    return ConnectionSheet(std::move(coeffs));
}

ConnectionSheet sheet_partial_t(const ConnectionSheet& sh) {
    std::vector<std::vector<MatrixValuedForm>> coeffs;
    for (int j = 0; j <= sh.s_degree(); ++j) {
        std::vector<MatrixValuedForm> row;
        for (int k = 1; k <= sh.t_degree(); ++k)
            row.push_back(scaled(double(k), sh.coeff(j, k)));
        if (row.empty()) row.push_back(MatrixValuedForm(sh.chart(), sh.rank(), 1));
        coeffs.push_back(std::move(row));
    }
    return ConnectionSheet(std::move(coeffs));
}

double sheet_flat_residual(const ConnectionSheet& sh) {
    double res = 0.0;
    auto ss = flatness_samples(2 * std::max(sh.s_degree(), 0));
    auto ts = flatness_samples(2 * std::max(sh.t_degree(), 0));
    for (double s : ss)
        for (double t : ts)
            res = std::max(res, sup_norm(curvature(sheet_eval(sh, s, t))));
    return res;
}

ConnectionSheet line_homotopy(const ConnectionPath& gamma, const ConnectionPath& target) {
    if (!(gamma.chart() == target.chart()) || gamma.rank() != target.rank())
        throw ChartMismatch("homotopy endpoints must share chart and rank");
    int dt = std::max(gamma.degree(), target.degree());
    auto coeff_of = [&](const ConnectionPath& p, int k) {
        if (k <= p.degree()) return p.coeffs()[size_t(k)];
        return MatrixValuedForm(p.chart(), p.rank(), 1);
    };
    std::vector<MatrixValuedForm> row0, row1;
    for (int k = 0; k <= dt; ++k) {
        row0.push_back(coeff_of(gamma, k));
        row1.push_back(sub(coeff_of(target, k), coeff_of(gamma, k)));
    }
    return ConnectionSheet({std::move(row0), std::move(row1)});
}

Mat holonomy(const Connection& c, int axis, const std::vector<double>& basepoint,
             int steps) {
    int n = c.chart().dim;
    if (axis < 1 || axis > n) throw EngineError("holonomy axis out of range");
    if (steps < 16) throw EngineError("holonomy needs at least 16 steps");
    int r = c.rank();
    AxisMask comp = 1u << (axis - 1);
    std::vector<double> x(basepoint.begin(), basepoint.end());
    x.resize(size_t(n), 0.0);

    // transport matrix U' = -2*pi * A_axis(x(u)) U on u in [0,1]
    auto rhs = [&](double u, const Mat& U) {
        std::vector<double> pt = x;
        pt[size_t(axis - 1)] += kTwoPi * u;
        Mat a = c.form().eval_component(comp, pt);
        return Mat(-kTwoPi * (a * U));
    };

    Mat U = Mat::Identity(r, r);
    double h = 1.0 / double(steps);
    for (int i = 0; i < steps; ++i) {
        double u = i * h;
        Mat k1 = rhs(u, U);
        Mat k2 = rhs(u + 0.5 * h, U + 0.5 * h * k1);
        Mat k3 = rhs(u + 0.5 * h, U + 0.5 * h * k2);
        Mat k4 = rhs(u + h, U + h * k3);
        U = U + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return U;
}

}  // namespace chernweil
