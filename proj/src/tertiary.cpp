#include "chernweil/tertiary.hpp"

#include <cmath>

#include "chernweil/errors.hpp"
#include "chernweil/quadrature.hpp"

namespace chernweil {

CharacterValue reduce_mod_z(Complex raw) {
    CharacterValue cv;
    cv.raw = raw;
    double shift = std::floor(raw.real());
    cv.value = Complex(raw.real() - shift, raw.imag());
    if (cv.value.real() >= 1.0) cv.value -= 1.0;  // guard against floor rounding
    if (cv.value.real() < 0.0) cv.value += 1.0;
    return cv;
}

double modz_distance(Complex a, Complex b) {
    Complex d = a - b;
    double k = std::round(d.real());
    return std::abs(d - Complex(k, 0.0));
}

CharacterValue character_of_connection(const Connection& c, int p,
                                       const CycleSpec& cycle, bool allow_nonflat,
                                       double flat_tol) {
    if (int(cycle.axes.size()) != 2 * p - 1)
        throw GradeMismatch("secondary character needs a cycle of dimension 2p-1");
    auto [flat, res] = is_flat(c, flat_tol);
    if (!flat && !allow_nonflat)
        throw NotFlatFamily("connection is not flat (residual " +
                            std::to_string(res) + ")");

    // relative Chern-Simons form: transgression of the straight path 0 -> A
    std::vector<MatrixValuedForm> coeffs;
    coeffs.push_back(MatrixValuedForm(c.chart(), c.rank(), 1));
    coeffs.push_back(c.form());
    TransgressionReport rep = fiber_transgression(ConnectionPath(std::move(coeffs)), p);

    CharacterValue cv = reduce_mod_z(integrate_over_subtorus(rep.form, cycle));
    cv.residuals["flatness"] = res;
    cv.residuals["cs_stokes"] = rep.stokes_residual;
    cv.residuals["imag"] = std::abs(cv.raw.imag());
    return cv;
}

namespace {

double flat_path_residual_or_throw(const ConnectionPath& gamma, double tol) {
    double res = path_flat_residual(gamma);
    if (res > tol)
        throw NotFlatFamily("path is not a family of flat connections (residual " +
                            std::to_string(res) + ")");
    return res;
}

}  // namespace

CharacterValue tertiary_character(const ConnectionPath& gamma, int p,
                                  const CycleSpec& cycle, double flat_tol) {
    if (p < 2) throw EngineError("tertiary character needs p >= 2");
    int n = gamma.chart().dim;
    if (2 * p - 2 > n)
        throw GradeOverflow("tertiary character grade 2p-2 exceeds the torus dimension");
    if (int(cycle.axes.size()) != 2 * p - 2)
        throw GradeMismatch("tertiary character needs a cycle of dimension 2p-2");
    double flat_res = flat_path_residual_or_throw(gamma, flat_tol);

    ConnectionPath chord = convex_path(path_eval(gamma, 0.0), path_eval(gamma, 1.0));
    CylinderForm cs = relative_cs_cylinder(chord, p);
    MatrixValuedForm tp_fiber = fiber_integrate_t(cs);
    BetaReport beta = beta_for_pair(gamma, p);

    Complex raw = integrate_over_subtorus(tp_fiber, cycle) -
                  integrate_over_subtorus(beta.beta, cycle);
    CharacterValue cv = reduce_mod_z(raw);
    cv.residuals["flatness"] = flat_res;
    cv.residuals["dbeta_minus_tp"] = beta.square_stokes_residual;
    if (2 * p - 1 <= n) {
        TransgressionReport eta = fiber_transgression(gamma, p);
        cv.residuals["eta_sup"] = sup_norm(eta.form);
        cv.residuals["d_tp"] = fiber_transgression(chord, p).closed_residual;
    } else {
        // grade 2p-1 forms do not exist on this torus; the residuals are vacuous
        cv.residuals["eta_sup"] = 0.0;
        cv.residuals["d_tp"] = 0.0;
    }
    if (beta.hodge_checked)
        cv.residuals["hodge_closed"] = beta.hodge_closed_residual;
    if (beta.harmonic_obstruction)
        cv.residuals["harmonic_obstruction"] = beta.harmonic_residual;
    cv.residuals["imag"] = std::abs(cv.raw.imag());
    return cv;
}

CharacterDifferenceReport character_difference_check(const ConnectionPath& gamma,
                                                     int p, const CycleSpec& cycle,
                                                     double tol) {
    CharacterDifferenceReport rep;
    rep.end0 = character_of_connection(path_eval(gamma, 0.0), p, cycle, true);
    rep.end1 = character_of_connection(path_eval(gamma, 1.0), p, cycle, true);
    TransgressionReport eta = fiber_transgression(gamma, p);
    rep.eta_integral = integrate_over_subtorus(eta.form, cycle);
    Complex delta = rep.end1.raw - rep.end0.raw;
    rep.modz_mismatch = modz_distance(delta, rep.eta_integral);
    rep.integer_shift = llround((delta - rep.eta_integral).real());
    rep.pass = rep.modz_mismatch <= tol;
    return rep;
}

MatrixValuedForm variational_integrand(const ConnectionSheet& sheet, int p, double s,
                                       double endpoint_tol) {
    if (p < 2) throw EngineError("variational integrand needs p >= 2");
    if (!endpoints_fixed(sheet, endpoint_tol))
        throw EndpointsNotFixed("sheet endpoints vary with s");

    InvariantPolynomial P(p);
    ConnectionSheet dsh = sheet_partial_s(sheet);
    ConnectionSheet dth = sheet_partial_t(sheet);
    ConnectionSheet dsth = sheet_partial_t(dsh);
    int dtd = sheet.t_degree();
    int nodes = nodes_for_degree(std::max(0, dtd - 1) + 2 * dtd * (p - 1));
    const auto& rule = gauss_legendre_01(nodes);

    ConnectionPath at_s = path_at_s(sheet, s);
    ConnectionPath ds_s = path_at_s(dsh, s);
    ConnectionPath dt_s = path_at_s(dth, s);
    ConnectionPath dst_s = path_at_s(dsth, s);

    MatrixValuedForm acc(sheet.chart(), 1, 2 * p - 1);
    for (int q = 0; q < nodes; ++q) {
        double t = rule.nodes[size_t(q)];
        MatrixValuedForm a = path_eval_form(at_s, t);
        MatrixValuedForm dsa = path_eval_form(ds_s, t);
        MatrixValuedForm dta = path_eval_form(dt_s, t);
        MatrixValuedForm dsta = path_eval_form(dst_s, t);
        MatrixValuedForm theta = curvature(Connection(a));
        // dTheta/ds = d(dA/ds) + dA/ds ^ A + A ^ dA/ds
        MatrixValuedForm dstheta = linear_combine(
            1.0, detail::d_or_vacuous(dsa),
            1.0, add(wedge(dsa, a), wedge(a, dsa)));

        std::vector<const MatrixValuedForm*> args1{&dsta};
        for (int i = 1; i < p; ++i) args1.push_back(&theta);
        MatrixValuedForm term = polarized_chern(P, args1);

        std::vector<const MatrixValuedForm*> args2{&dta, &dstheta};
        for (int i = 2; i < p; ++i) args2.push_back(&theta);
        term = linear_combine(1.0, term, double(p - 1), polarized_chern(P, args2));

        acc = linear_combine(1.0, acc, double(p) * rule.weights[size_t(q)], term);
    }
    return acc;
}

RigiditySweepReport rigidity_sweep(const ConnectionSheet& sheet, int p,
                                   const std::vector<CycleSpec>& cycles,
                                   const std::vector<double>& s_grid, double tol) {
    if (p < 2) throw EngineError("rigidity sweep needs p >= 2");
    if (!endpoints_fixed(sheet, 1e-10))
        throw EndpointsNotFixed("sheet endpoints vary with s");
    double flat_res = sheet_flat_residual(sheet);
    if (flat_res > 1e-10)
        throw NotFlatSheet("sheet is not flat (residual " + std::to_string(flat_res) +
                           ")");

    RigiditySweepReport rep;
    rep.asserted = p >= 3;
    int n = sheet.chart().dim;

    std::vector<MatrixValuedForm> dbetas;
    for (double s : s_grid) {
        ConnectionPath gs = path_at_s(sheet, s);
        for (const auto& z : cycles) {
            RigiditySweepEntry e;
            e.s = s;
            e.cycle_axes = z.axes;
            e.value = tertiary_character(gs, p, z);
            rep.values.push_back(std::move(e));
        }
        if (2 * p - 1 <= n)
            dbetas.push_back(exterior_derivative(beta_for_pair(gs, p).beta));
    }

    for (size_t c = 0; c < cycles.size(); ++c) {
        for (size_t i = 0; i < s_grid.size(); ++i) {
            for (size_t j = i + 1; j < s_grid.size(); ++j) {
                double d = modz_distance(
                    rep.values[i * cycles.size() + c].value.raw,
                    rep.values[j * cycles.size() + c].value.raw);
                rep.max_spread_modz = std::max(rep.max_spread_modz, d);
            }
        }
    }
    for (size_t i = 0; i + 1 < dbetas.size(); ++i) {
        double ds = s_grid[i + 1] - s_grid[i];
        if (ds == 0.0) continue;
        rep.dbeta_variation = std::max(
            rep.dbeta_variation, sup_norm(sub(dbetas[i + 1], dbetas[i])) / ds);
    }
    if (rep.asserted) rep.pass = rep.max_spread_modz <= tol;
    return rep;
}

}  // namespace chernweil
