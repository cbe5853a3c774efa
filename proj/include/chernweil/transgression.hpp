#pragma once

#include "chernweil/invariants.hpp"

namespace chernweil {

/// Result of transgressing a path of connections. The form is the fiber
/// integral TP = p * int_0^1 P_p(dA/dt, Theta_t^{p-1}) dt; for a path of flat
/// connections this is the eta-form, identically zero when p >= 2. The Stokes
/// residual measures d TP - (c_p(end) - c_p(start)) and is recorded for every
/// computation.
struct TransgressionReport {
    MatrixValuedForm form;
    double stokes_residual = 0.0;
    double closed_residual = 0.0;  // sup norm of d TP
    int quadrature_nodes = 0;
};

TransgressionReport fiber_transgression(const ConnectionPath& path, int p);

bool check_transgression_stokes(const ConnectionPath& path, int p, double tol);

struct DoubleTransgressionReport {
    MatrixValuedForm form;
    /// sup norm of d(form) - (TP of the s=1 edge - TP of the s=0 edge);
    /// vacuous (and zero) when 2p-1 exceeds the torus dimension.
    double square_stokes_residual = 0.0;
    bool square_stokes_vacuous = false;
    int nodes_s = 0;
    int nodes_t = 0;
};

/// (2p-2)-form p(p-1) * int int P_p(dA/ds, dA/dt, Theta^{p-2}) ds dt over an
/// endpoint-fixed sheet, with the two-odd-slot polarization. Satisfies the
/// square-Stokes identity d(result) = TP(s=1 edge) - TP(s=0 edge), which is
/// computed and recorded.
DoubleTransgressionReport double_transgression(const ConnectionSheet& sheet, int p,
                                               double endpoint_tol = 1e-10);

struct BetaReport {
    MatrixValuedForm beta;
    double square_stokes_residual = 0.0;  // sup norm of d beta - (TP - eta)
    bool square_stokes_vacuous = false;
    bool hodge_checked = false;
    double hodge_closed_residual = 0.0;  // sup norm of d(beta - beta')
    bool harmonic_obstruction = false;
    double harmonic_residual = 0.0;
};

/// The potential beta with d beta = TP(convex chord) - eta_p(gamma), defined
/// as the double transgression of the straight-line homotopy from gamma to
/// its convex chord. Cross-checked against the flat-torus Hodge solver when
/// the grades allow it; a harmonic obstruction there is reported as a
/// finding, never thrown.
BetaReport beta_for_pair(const ConnectionPath& gamma, int p);

/// Relative Chern-Simons form of the path's convex-combination connection on
/// the cylinder I x X, transgressed from the trivial connection in an inner
/// parameter: cyl_d(cs_p) = P_p(Theta~^p).
CylinderForm relative_cs_cylinder(const ConnectionPath& path, int p);

/// Residual of the identity cyl_d(cs_p) = P_p(Theta~^p) for diagnostics.
double relative_cs_residual(const ConnectionPath& path, int p);

}  // namespace chernweil
