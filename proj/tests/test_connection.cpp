#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chernweil/connection.hpp"
#include "chernweil/errors.hpp"
#include "chernweil/generators.hpp"
#include "test_helpers.hpp"

using namespace chernweil;

namespace {

MatrixValuedForm constant_form(const TorusChart& chart, int axis, const Mat& m) {
    MatrixValuedForm f(chart, int(m.rows()), 1);
    f.add_term(1u << axis, freq_zero(), m);
    return f;
}

}  // namespace

TEST_CASE("curvature of constant matrix connections") {
    TorusChart chart{3, 2};
    // A = 0 -> Theta = 0
    Connection trivial(MatrixValuedForm(chart, 2, 1));
    CHECK(sup_norm(curvature(trivial)) == 0.0);
    auto [flat0, res0] = is_flat(trivial, 1e-10);
    CHECK(flat0);
    CHECK(res0 == 0.0);

    // diagonal constant along a single axis is flat
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = Complex(0.0, 0.4);
    d(1, 1) = Complex(0.0, -0.9);
    Connection diag(constant_form(chart, 0, d));
    CHECK(is_flat(diag, 1e-14).first);

    // A = M dx1 + N dx2 -> Theta = [M,N] dx1^dx2
    Rng rng(3);
    Mat m = random_skew_hermitian(rng, 2, 0.8);
    Mat n = random_skew_hermitian(rng, 2, 0.8);
    Connection c(add(constant_form(chart, 0, m), constant_form(chart, 1, n)));
    MatrixValuedForm theta = curvature(c);
    Mat comm = m * n - n * m;
    Mat got = theta.eval_component(3u, {0.3, 1.1, 2.0});
    CHECK((got - comm).cwiseAbs().maxCoeff() < 1e-13);
    auto [flat, res] = is_flat(c, 1e-10);
    CHECK_FALSE(flat);  // random pairs almost surely fail to commute
    CHECK(res == doctest::Approx(comm.cwiseAbs().maxCoeff()));

    // commuting matrices give a flat connection
    Mat g = random_unitary(rng, 2);
    Mat d1 = Mat::Zero(2, 2), d2 = Mat::Zero(2, 2);
    d1(0, 0) = Complex(0.0, 0.3);
    d1(1, 1) = Complex(0.0, -0.7);
    d2(0, 0) = Complex(0.0, -0.2);
    d2(1, 1) = Complex(0.0, 0.5);
    Connection cc(add(constant_form(chart, 0, g * d1 * g.adjoint()),
                      constant_form(chart, 1, g * d2 * g.adjoint())));
    CHECK(is_flat(cc, 1e-14).first);
}

TEST_CASE("Bianchi identity on random connections") {
    TorusChart chart{4, 4};
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        Connection c(random_form(rng, chart, 2, 1, 1, 0.8));
        MatrixValuedForm theta = curvature(c);
        MatrixValuedForm lhs = exterior_derivative(theta);
        MatrixValuedForm rhs = sub(wedge(theta, c.form()), wedge(c.form(), theta));
        CHECK(sup_norm(sub(lhs, rhs)) < 1e-11);
    }
}

TEST_CASE("path evaluation and derivative") {
    TorusChart chart{2, 2};
    Rng rng(7);
    MatrixValuedForm a0 = random_form(rng, chart, 2, 1, 1, 1.0);
    MatrixValuedForm a1 = random_form(rng, chart, 2, 1, 1, 1.0);
    ConnectionPath p({a0, a1});
    CHECK(sup_norm(sub(path_eval_form(p, 0.0), a0)) == 0.0);

    ConnectionPath dp = path_derivative(p);
    CHECK(dp.degree() == 0);
    CHECK(sup_norm(sub(dp.coeffs()[0], a1)) == 0.0);

    ConnectionPath constp({a0});
    CHECK(sup_norm(path_eval_form(path_derivative(constp), 0.7)) == 0.0);

    // convex path endpoints and midpoint
    Connection c0(a0), c1(a1);
    ConnectionPath chord = convex_path(c0, c1);
    CHECK(sup_norm(sub(path_eval_form(chord, 0.0), a0)) == 0.0);
    CHECK(sup_norm(sub(path_eval_form(chord, 1.0), a1)) < 1e-14);
    MatrixValuedForm mid = scaled(0.5, add(a0, a1));
    CHECK(sup_norm(sub(path_eval_form(chord, 0.5), mid)) < 1e-14);

    ConnectionPath same = convex_path(c0, c0);
    CHECK(sup_norm(sub(path_eval_form(same, 0.3), a0)) < 1e-14);
}

TEST_CASE("reparametrization") {
    TorusChart chart{2, 2};
    Rng rng(11);
    MatrixValuedForm a0 = random_form(rng, chart, 1, 1, 1, 1.0);
    MatrixValuedForm a1 = random_form(rng, chart, 1, 1, 1, 1.0);
    MatrixValuedForm a2 = random_form(rng, chart, 1, 1, 1, 1.0);
    ConnectionPath p({a0, a1, a2});
    ConnectionPath q = reparametrize(p, {0.0, 0.0, 1.0});  // t^2
    for (double t : {0.0, 0.3, 0.8, 1.0})
        CHECK(sup_norm(sub(path_eval_form(q, t), path_eval_form(p, t * t))) < 1e-13);
}

TEST_CASE("sheet endpoints and slices") {
    TorusChart chart{2, 2};
    Rng rng(13);
    MatrixValuedForm a0 = random_form(rng, chart, 2, 1, 1, 1.0);
    MatrixValuedForm a1 = random_form(rng, chart, 2, 1, 1, 1.0);
    MatrixValuedForm b = random_form(rng, chart, 2, 1, 1, 1.0);

    // A(s,t) = a0 + t(a1 - a0) + s t(1-t) b : endpoint-fixed
    MatrixValuedForm zero(chart, 2, 1);
    ConnectionSheet sh({{a0, sub(a1, a0), zero}, {zero, b, scaled(-1.0, b)}});
    CHECK(endpoints_fixed(sh, 1e-12));

    // the same sheet with the bump moved to t^1 only is not endpoint-fixed
    ConnectionSheet bad({{a0, sub(a1, a0)}, {zero, b}});
    CHECK_FALSE(endpoints_fixed(bad, 1e-6));

    // slices
    ConnectionPath at0 = path_at_s(sh, 0.0);
    CHECK(sup_norm(sub(path_eval_form(at0, 0.5),
                       scaled(0.5, add(a0, a1)))) < 1e-13);
    ConnectionPath at1 = path_at_s(sh, 1.0);
    MatrixValuedForm expect = add(scaled(0.5, add(a0, a1)), scaled(0.25, b));
    CHECK(sup_norm(sub(path_eval_form(at1, 0.5), expect)) < 1e-13);

    // partials
    ConnectionSheet ds = sheet_partial_s(sh);
    CHECK(sup_norm(sub(path_eval_form(path_at_s(ds, 0.7), 0.5), scaled(0.25, b))) <
          1e-13);
    ConnectionSheet dt = sheet_partial_t(sh);
    MatrixValuedForm expect_dt = add(sub(a1, a0), scaled(0.7 * 0.0, b));
    CHECK(sup_norm(sub(path_eval_form(path_at_s(dt, 0.7), 0.5), expect_dt)) < 1e-12);

    ConnectionSheet h = line_homotopy(at0, at1);
    CHECK(endpoints_fixed(h, 1e-12));
    CHECK(sup_norm(sub(path_eval_form(path_at_s(h, 0.0), 0.3),
                       path_eval_form(at0, 0.3))) < 1e-13);
    CHECK(sup_norm(sub(path_eval_form(path_at_s(h, 1.0), 0.3),
                       path_eval_form(at1, 0.3))) < 1e-12);
}

TEST_CASE("holonomy closed forms") {
    TorusChart chart{2, 2};
    // A = 0 -> identity
    Connection trivial(MatrixValuedForm(chart, 2, 1));
    Mat u0 = holonomy(trivial, 1, {0.0, 0.0}, 64);
    CHECK((u0 - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

    // rank 1, A = i theta dx1 -> exp(-2 pi i theta)
    double theta = 0.37;
    MatrixValuedForm a(chart, 1, 1);
    Mat m(1, 1);
    m(0, 0) = Complex(0.0, theta);
    a.add_term(1u, freq_zero(), m);
    Connection c(a);
    Mat u = holonomy(c, 1, {0.0, 0.0}, 256);
    Complex expect = std::exp(Complex(0.0, -kTwoPi * theta));
    CHECK(std::abs(u(0, 0) - expect) < 1e-8);

    // 4th-order convergence: doubling steps changes the result below 1e-8
    Mat u128 = holonomy(c, 1, {0.0, 0.0}, 128);
    CHECK((u - u128).cwiseAbs().maxCoeff() < 1e-8);

    // rank-2 diagonal: entries decouple
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = Complex(0.0, 0.25);
    d(1, 1) = Complex(0.0, -0.4);
    Connection cd(constant_form(chart, 0, d));
    Mat ud = holonomy(cd, 1, {0.0, 0.0}, 256);
    CHECK(std::abs(ud(0, 0) - std::exp(Complex(0.0, -kTwoPi * 0.25))) < 1e-8);
    CHECK(std::abs(ud(1, 1) - std::exp(Complex(0.0, kTwoPi * 0.4))) < 1e-8);
    CHECK(std::abs(ud(0, 1)) < 1e-12);
}

TEST_CASE("holonomy of a flat x-dependent abelian connection is basepoint independent") {
    TorusChart chart{2, 2};
    // A = i theta dx1 + d f with periodic f: holonomy = exp(-2 pi i theta)
    double theta = 0.31;
    MatrixValuedForm f0(chart, 1, 0);
    Mat one(1, 1);
    one(0, 0) = Complex(0.2, 0.1);
    Freq k = freq_zero();
    k[0] = 1;
    k[1] = 1;
    f0.add_term(0u, k, one);
    MatrixValuedForm a = exterior_derivative(f0);
    Mat m(1, 1);
    m(0, 0) = Complex(0.0, theta);
    a.add_term(1u, freq_zero(), m);
    Connection c(a);
    CHECK(is_flat(c, 1e-12).first);
    Mat u1 = holonomy(c, 1, {0.0, 0.0}, 512);
    Mat u2 = holonomy(c, 1, {0.0, 2.1}, 512);
    CHECK(std::abs(u1(0, 0) - u2(0, 0)) < 1e-8);
}

TEST_CASE("flat families from the generator registry stay flat along the path") {
    nlohmann::json none = nlohmann::json::object();
    auto fam3 = make_family("commuting_t3", none, TorusChart{3, 2}, 2, 77);
    CHECK(path_flat_residual(fam3.path()) < 1e-12);
    auto fam4 = make_family("commuting_t4", none, TorusChart{4, 2}, 3, 78);
    CHECK(path_flat_residual(fam4.path()) < 1e-12);
    auto bump = make_family("flat_sheet_bump", none, TorusChart{4, 2}, 2, 79);
    CHECK(sheet_flat_residual(bump.sheet) < 1e-12);
    CHECK(endpoints_fixed(bump.sheet, 1e-12));

    // holonomy along a loop varies continuously in t for a flat diagonal family
    auto fam = make_family("abelian_t2", none, TorusChart{2, 2}, 1, 80);
    ConnectionPath p = fam.path();
    Complex prev;
    bool first = true;
    for (int i = 0; i <= 10; ++i) {
        double t = double(i) / 10.0;
        Mat u = holonomy(path_eval(p, t), 1, {0.0, 0.0}, 128);
        if (!first) CHECK(std::abs(u(0, 0) - prev) < 2.0);
        prev = u(0, 0);
        first = false;
    }
}
