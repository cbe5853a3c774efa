#pragma once

#include "chernweil/connection.hpp"
#include "chernweil/cylinder.hpp"

namespace chernweil {

/// Degree-p GL_r-invariant polynomial: the elementary symmetric function e_p
/// of the curvature eigenvalues, normalized by (i/2pi)^p so that the total
/// Chern form is det(I + (i/2pi) Theta). The Girard table expresses e_p in
/// power sums (traces of products) with exact rational coefficients.
class InvariantPolynomial {
public:
    struct GirardTerm {
        std::vector<int> parts;  // partition of p, descending
        long long num;
        long long den;
    };

    explicit InvariantPolynomial(int degree);

    int degree() const { return degree_; }
    const std::vector<GirardTerm>& girard_table() const { return table_; }
    Complex normalization() const;  // (i/2pi)^p

private:
    int degree_;
    std::vector<GirardTerm> table_;
};

/// Polarized P_p on p matrix-valued forms of mixed grade: the graded
/// symmetrization of the Girard trace-product expansion, times (i/2pi)^p.
/// Multilinear, Ad-invariant; at most one argument of odd grade.
MatrixValuedForm polarized_chern(const InvariantPolynomial& P,
                                 const std::vector<const MatrixValuedForm*>& args);

/// Two-odd-slot variant for P_p(u, v, theta, ..., theta) with odd u, v and an
/// even theta repeated p-2 times. Antisymmetric under swapping u and v; the
/// sign convention makes the double-transgression square-Stokes identity hold.
MatrixValuedForm polarized_chern_two_odd(const InvariantPolynomial& P,
                                         const MatrixValuedForm& u,
                                         const MatrixValuedForm& v,
                                         const MatrixValuedForm& theta);

/// Same polarization over the cylinder algebra on I x X.
CylinderForm polarized_chern_cyl(const InvariantPolynomial& P,
                                 const std::vector<const CylinderForm*>& args);

/// Chern form c_p(E, nabla) = P_p(Theta, ..., Theta): a closed scalar 2p-form.
/// Returns the zero form when 2p exceeds the torus dimension.
MatrixValuedForm chern_form(const Connection& c, int p);

/// Independent oracle: expands det(I + (i/2pi) Theta) by the Leibniz formula
/// over the (commuting, even-grade) form-valued entries and splits by grade.
/// Entry p-1 of the result is the degree-2p part, for p = 1..rank.
std::vector<MatrixValuedForm> total_chern_oracle(const Connection& c);

}  // namespace chernweil
