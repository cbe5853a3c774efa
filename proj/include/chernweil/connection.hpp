#pragma once

#include "chernweil/forms.hpp"

namespace chernweil {

/// Connection on the trivialized rank-r bundle over T^n, identified with its
/// global matrix-valued 1-form A relative to the trivial connection d.
class Connection {
public:
    Connection() = default;
    explicit Connection(MatrixValuedForm a);

    const TorusChart& chart() const { return a_.chart(); }
    int rank() const { return a_.rank(); }
    const MatrixValuedForm& form() const { return a_; }

private:
    MatrixValuedForm a_;
};

/// Curvature Theta = dA + A^A.
MatrixValuedForm curvature(const Connection& c);

/// (flat?, residual): residual is the coefficient-sum norm of the curvature.
std::pair<bool, double> is_flat(const Connection& c, double tol);

/// Polynomial path of connections A(t) = sum_j t^j A_j, t in [0,1].
class ConnectionPath {
public:
    ConnectionPath() = default;
    explicit ConnectionPath(std::vector<MatrixValuedForm> coeffs);

    const TorusChart& chart() const { return coeffs_.front().chart(); }
    int rank() const { return coeffs_.front().rank(); }
    int degree() const { return int(coeffs_.size()) - 1; }
    const std::vector<MatrixValuedForm>& coeffs() const { return coeffs_; }

private:
    std::vector<MatrixValuedForm> coeffs_;
};

Connection path_eval(const ConnectionPath& p, double t);
MatrixValuedForm path_eval_form(const ConnectionPath& p, double t);
ConnectionPath path_derivative(const ConnectionPath& p);

/// Straight line A_0 + t (A_1 - A_0).
ConnectionPath convex_path(const Connection& c0, const Connection& c1);

/// Precomposition with a polynomial reparametrization phi (coefficients in
/// ascending degree); phi should map [0,1] to [0,1] with phi(0)=0, phi(1)=1.
ConnectionPath reparametrize(const ConnectionPath& p, const std::vector<double>& phi);

/// Largest curvature residual of A(t) over Gauss nodes plus endpoints; the
/// node count covers the polynomial degree of the curvature, so a zero
/// residual certifies flatness of the whole family up to roundoff.
double path_flat_residual(const ConnectionPath& p);

/// Two-parameter sheet A(s,t) = sum_{j,k} s^j t^k A_{jk}, (s,t) in [0,1]^2.
class ConnectionSheet {
public:
    ConnectionSheet() = default;
    /// coeffs[j][k] multiplies s^j t^k; rows must have equal length.
    explicit ConnectionSheet(std::vector<std::vector<MatrixValuedForm>> coeffs);

    const TorusChart& chart() const { return coeffs_.front().front().chart(); }
    int rank() const { return coeffs_.front().front().rank(); }
    int s_degree() const { return int(coeffs_.size()) - 1; }
    int t_degree() const { return int(coeffs_.front().size()) - 1; }
    const MatrixValuedForm& coeff(int j, int k) const { return coeffs_[size_t(j)][size_t(k)]; }

private:
    std::vector<std::vector<MatrixValuedForm>> coeffs_;
};

/// sup-norm of the s-dependent part of A(s,0) and A(s,1).
double endpoints_residual(const ConnectionSheet& sh);
bool endpoints_fixed(const ConnectionSheet& sh, double tol);

ConnectionPath path_at_s(const ConnectionSheet& sh, double s);
Connection sheet_eval(const ConnectionSheet& sh, double s, double t);
ConnectionSheet sheet_partial_s(const ConnectionSheet& sh);
ConnectionSheet sheet_partial_t(const ConnectionSheet& sh);
double sheet_flat_residual(const ConnectionSheet& sh);

/// Straight-line homotopy H(s,t) = (1-s) gamma(t) + s target(t).
ConnectionSheet line_homotopy(const ConnectionPath& gamma, const ConnectionPath& target);

/// Path-ordered exponential of -A around the coordinate loop `axis` (1-based)
/// based at `basepoint`, via classical Runge-Kutta on the parallel transport
/// equation v' = -A(x'(u)) v.
Mat holonomy(const Connection& c, int axis, const std::vector<double>& basepoint,
             int steps);

}  // namespace chernweil
