#pragma once

#include <map>
#include <string>

#include "chernweil/transgression.hpp"

namespace chernweil {

/// A complex number modulo Z: the real part of `value` is reduced to [0,1) by
/// an exact integer shift of `raw`; the imaginary part is carried unreduced.
/// Named check residuals from the computation ride along.
struct CharacterValue {
    Complex value{0.0, 0.0};
    Complex raw{0.0, 0.0};
    std::map<std::string, double> residuals;
};

CharacterValue reduce_mod_z(Complex raw);

/// Distance between two values in C/Z: |a - b - round(Re(a - b))|.
double modz_distance(Complex a, Complex b);

/// Secondary (Chern-Simons) character of a connection evaluated on a cycle of
/// dimension 2p-1: the integral of the relative Chern-Simons form of the
/// straight path 0 -> A, reduced mod Z. For non-flat connections pass
/// allow_nonflat to evaluate the underlying differential character.
CharacterValue character_of_connection(const Connection& c, int p,
                                       const CycleSpec& cycle,
                                       bool allow_nonflat = false,
                                       double flat_tol = 1e-10);

/// Character of a path of flat connections on a cycle of dimension 2p-2:
/// [ int_z of the fiber-integrated cylinder Chern-Simons form of the convex
/// chord ] - [ int_z beta ], reduced mod Z. Residuals recorded: eta sup norm,
/// d TP sup norm, d beta - (TP - eta) sup norm, flatness, imaginary part.
CharacterValue tertiary_character(const ConnectionPath& gamma, int p,
                                  const CycleSpec& cycle, double flat_tol = 1e-10);

struct CharacterDifferenceReport {
    CharacterValue end0;
    CharacterValue end1;
    Complex eta_integral{0.0, 0.0};
    double modz_mismatch = 0.0;
    long long integer_shift = 0;  // nearest integer to Re(raw difference - eta)
    bool pass = false;
};

/// Checks the variational identity: the difference of the endpoint characters
/// equals int_z eta_p mod Z. For flat paths and p >= 2 both sides vanish and
/// this is endpoint rigidity.
CharacterDifferenceReport character_difference_check(const ConnectionPath& gamma,
                                                     int p, const CycleSpec& cycle,
                                                     double tol);

/// t-integral of P_p(d2A/dsdt, Theta^{p-1}) + (p-1) P_p(dA/dt, dTheta/ds,
/// Theta^{p-2}) at fixed s, times p: the s-derivative of the transgression
/// form of the t-path. Vanishes identically on fully flat sheets for p >= 2.
MatrixValuedForm variational_integrand(const ConnectionSheet& sheet, int p, double s,
                                       double endpoint_tol = 1e-10);

struct RigiditySweepEntry {
    double s = 0.0;
    std::vector<int> cycle_axes;
    CharacterValue value;
};

struct RigiditySweepReport {
    std::vector<RigiditySweepEntry> values;
    double max_spread_modz = 0.0;   // max pairwise mod-Z distance across s
    double dbeta_variation = 0.0;   // sup over s of finite differences of d(beta_s)
    bool asserted = false;          // true when p >= 3
    bool pass = true;
};

/// Evaluates the tertiary character of the t-path at each s on each cycle.
/// The mod-Z spread is asserted against tol when p >= 3 and recorded as a
/// finding when p = 2.
RigiditySweepReport rigidity_sweep(const ConnectionSheet& sheet, int p,
                                   const std::vector<CycleSpec>& cycles,
                                   const std::vector<double>& s_grid, double tol);

}  // namespace chernweil
