#include "chernweil/transgression.hpp"

#include <cmath>

#include "chernweil/errors.hpp"
#include "chernweil/quadrature.hpp"

namespace chernweil {

TransgressionReport fiber_transgression(const ConnectionPath& path, int p) {
    if (p < 1) throw EngineError("transgression needs p >= 1");
    int n = path.chart().dim;
    if (2 * p - 1 > n)
        throw GradeOverflow("transgression form of grade 2p-1 exceeds the torus dimension");

    InvariantPolynomial P(p);
    int d = std::max(path.degree(), 0);
    int integrand_degree = std::max(0, d - 1) + 2 * d * (p - 1);
    int nodes = nodes_for_degree(integrand_degree);
    const auto& rule = gauss_legendre_01(nodes);

    ConnectionPath adot = path_derivative(path);
    MatrixValuedForm acc(path.chart(), 1, 2 * p - 1);
    for (int q = 0; q < nodes; ++q) {
        double t = rule.nodes[size_t(q)];
        MatrixValuedForm at = path_eval_form(adot, t);
        MatrixValuedForm theta = curvature(path_eval(path, t));
        std::vector<const MatrixValuedForm*> args{&at};
        for (int i = 1; i < p; ++i) args.push_back(&theta);
        MatrixValuedForm term = polarized_chern(P, args);
        acc = linear_combine(1.0, acc, double(p) * rule.weights[size_t(q)], term);
    }

    TransgressionReport rep;
    rep.form = acc;
    rep.quadrature_nodes = nodes;
    if (2 * p <= n) {
        MatrixValuedForm dtp = exterior_derivative(acc);
        rep.closed_residual = sup_norm(dtp);
        MatrixValuedForm rhs = sub(chern_form(path_eval(path, 1.0), p),
                                   chern_form(path_eval(path, 0.0), p));
        rep.stokes_residual = sup_norm(sub(dtp, rhs));
    }
    return rep;
}

bool check_transgression_stokes(const ConnectionPath& path, int p, double tol) {
    return fiber_transgression(path, p).stokes_residual <= tol;
}

DoubleTransgressionReport double_transgression(const ConnectionSheet& sheet, int p,
                                               double endpoint_tol) {
    if (p < 2) throw EngineError("double transgression needs p >= 2");
    int n = sheet.chart().dim;
    if (2 * p - 2 > n)
        throw GradeOverflow("double transgression grade 2p-2 exceeds the torus dimension");
    if (!endpoints_fixed(sheet, endpoint_tol))
        throw EndpointsNotFixed("sheet endpoints vary with s");

    InvariantPolynomial P(p);
    ConnectionSheet ds = sheet_partial_s(sheet);
    ConnectionSheet dt = sheet_partial_t(sheet);
    int dsd = sheet.s_degree(), dtd = sheet.t_degree();
    int nodes_s = nodes_for_degree(std::max(0, 2 * dsd * (p - 1) - 1));
    int nodes_t = nodes_for_degree(std::max(0, 2 * dtd * (p - 1) - 1));
    const auto& rs = gauss_legendre_01(nodes_s);
    const auto& rt = gauss_legendre_01(nodes_t);

    MatrixValuedForm acc(sheet.chart(), 1, 2 * p - 2);
    for (int a = 0; a < nodes_s; ++a) {
        for (int b = 0; b < nodes_t; ++b) {
            double s = rs.nodes[size_t(a)], t = rt.nodes[size_t(b)];
            MatrixValuedForm u = path_eval_form(path_at_s(ds, s), t);
            MatrixValuedForm v = path_eval_form(path_at_s(dt, s), t);
            MatrixValuedForm theta = curvature(sheet_eval(sheet, s, t));
            MatrixValuedForm term = polarized_chern_two_odd(P, u, v, theta);
            double w = double(p) * double(p - 1) * rs.weights[size_t(a)] *
                       rt.weights[size_t(b)];
            acc = linear_combine(1.0, acc, w, term);
        }
    }

    DoubleTransgressionReport rep;
    rep.form = acc;
    rep.nodes_s = nodes_s;
    rep.nodes_t = nodes_t;
    if (2 * p - 1 <= n) {
        MatrixValuedForm lhs = exterior_derivative(acc);
        MatrixValuedForm rhs = sub(fiber_transgression(path_at_s(sheet, 1.0), p).form,
                                   fiber_transgression(path_at_s(sheet, 0.0), p).form);
        rep.square_stokes_residual = sup_norm(sub(lhs, rhs));
    } else {
        rep.square_stokes_vacuous = true;
    }
    return rep;
}

BetaReport beta_for_pair(const ConnectionPath& gamma, int p) {
    if (p < 2) throw EngineError("beta potential needs p >= 2");
    ConnectionPath chord = convex_path(path_eval(gamma, 0.0), path_eval(gamma, 1.0));
    ConnectionSheet sheet = line_homotopy(gamma, chord);
    DoubleTransgressionReport dt = double_transgression(sheet, p);

    BetaReport rep;
    rep.beta = dt.form;
    rep.square_stokes_residual = dt.square_stokes_residual;
    rep.square_stokes_vacuous = dt.square_stokes_vacuous;

    int n = gamma.chart().dim;
    if (2 * p - 1 <= n) {
        MatrixValuedForm omega = sub(fiber_transgression(chord, p).form,
                                     fiber_transgression(gamma, p).form);
        try {
            MatrixValuedForm beta2 = solve_potential(omega, 1e-9);
            rep.hodge_checked = true;
            rep.hodge_closed_residual =
                sup_norm(detail::d_or_vacuous(sub(rep.beta, beta2)));
        } catch (const HarmonicObstruction& e) {
            rep.harmonic_obstruction = true;
            rep.harmonic_residual = e.residual;
        }
    }
    return rep;
}

namespace {

CylinderForm cyl_chern_form(const InvariantPolynomial& P, const CylinderForm& theta) {
    std::vector<const CylinderForm*> args(size_t(P.degree()), &theta);
    return polarized_chern_cyl(P, args);
}

CylinderForm path_as_cylinder(const ConnectionPath& path) {
    FormPoly base(path.coeffs());
    FormPoly fiber(path.chart(), path.rank(), 0);
    return CylinderForm(std::move(base), std::move(fiber));
}

}  // namespace

CylinderForm relative_cs_cylinder(const ConnectionPath& path, int p) {
    if (p < 1) throw EngineError("relative Chern-Simons needs p >= 1");
    int n = path.chart().dim;
    if (2 * p - 1 > n + 1)
        throw GradeOverflow("cylinder form of grade 2p-1 exceeds the cylinder dimension");

    InvariantPolynomial P(p);
    CylinderForm a = path_as_cylinder(path);
    CylinderForm da = cyl_d(a);
    CylinderForm aa = cyl_wedge(a, a);

    int nodes = nodes_for_degree(2 * (p - 1));
    const auto& rule = gauss_legendre_01(nodes);
    CylinderForm acc(path.chart(), 1, 2 * p - 1);
    for (int q = 0; q < nodes; ++q) {
        double u = rule.nodes[size_t(q)];
        CylinderForm theta_u = cyl_linear_combine(u, da, u * u, aa);
        std::vector<const CylinderForm*> args{&a};
        for (int i = 1; i < p; ++i) args.push_back(&theta_u);
        CylinderForm term = polarized_chern_cyl(P, args);
        acc = cyl_linear_combine(1.0, acc, double(p) * rule.weights[size_t(q)], term);
    }
    return acc;
}

double relative_cs_residual(const ConnectionPath& path, int p) {
    CylinderForm cs = relative_cs_cylinder(path, p);
    CylinderForm a = path_as_cylinder(path);
    CylinderForm theta = cyl_linear_combine(1.0, cyl_d(a), 1.0, cyl_wedge(a, a));
    InvariantPolynomial P(p);
    CylinderForm rhs = cyl_chern_form(P, theta);
    CylinderForm diff = cyl_linear_combine(1.0, cyl_d(cs), -1.0, rhs);
    return cyl_norm_bound(diff);
}

}  // namespace chernweil
