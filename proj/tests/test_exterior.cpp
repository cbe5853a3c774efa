#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chernweil/errors.hpp"
#include "chernweil/scenario.hpp"
#include "test_helpers.hpp"

using namespace chernweil;
using testutil::pointwise_partial;
using testutil::pointwise_wedge_component;
using testutil::random_point;
using testutil::trapezoid_circle;

namespace {

MatrixValuedForm scalar_term(const TorusChart& chart, int grade, AxisMask comp,
                             const Freq& k, Complex c) {
    MatrixValuedForm f(chart, 1, grade);
    Mat m(1, 1);
    m(0, 0) = c;
    f.add_term(comp, k, m);
    return f;
}

Freq fr(std::initializer_list<int> ks) {
    Freq k = freq_zero();
    int i = 0;
    for (int v : ks) k[size_t(i++)] = v;
    return k;
}

}  // namespace

TEST_CASE("wedge of a 1-form component with itself vanishes") {
    TorusChart chart{2, 3};
    MatrixValuedForm f = scalar_term(chart, 1, 1u, fr({1, 0}), Complex(2.0, 1.0));
    CHECK(sup_norm(wedge(f, f)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("scalar 1-forms anticommute") {
    TorusChart chart{3, 3};
    Rng rng(7);
    MatrixValuedForm f = random_form(rng, chart, 1, 1, 1, 1.0);
    MatrixValuedForm g = random_form(rng, chart, 1, 1, 1, 1.0);
    CHECK(sup_norm(add(wedge(f, g), wedge(g, f))) < 1e-13);
}

TEST_CASE("matrix wedge against pointwise brute force") {
    TorusChart chart{3, 4};
    Rng rng(11);
    MatrixValuedForm a = random_form(rng, chart, 2, 1, 1, 1.0);
    MatrixValuedForm w = wedge(a, a);
    for (int i = 0; i < 10; ++i) {
        auto x = random_point(rng, 3);
        for (AxisMask comp : {3u, 5u, 6u}) {
            Mat expect = pointwise_wedge_component(a, a, comp, x);
            Mat got = w.eval_component(comp, x);
            CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    // the trace of A^A is half the trace of the graded commutator [A,A] = 2 A^A
    MatrixValuedForm tr_w = trace_form(w);
    MatrixValuedForm comm = scaled(0.5, trace_form(add(wedge(a, a), wedge(a, a))));
    CHECK(sup_norm(sub(tr_w, comm)) < 1e-13);
}

TEST_CASE("frequency overflow raises") {
    TorusChart chart{2, 1};
    MatrixValuedForm f = scalar_term(chart, 0, 0u, fr({1, 0}), Complex(1.0, 0.0));
    CHECK_THROWS_AS(wedge(f, f), FrequencyOverflow);
}

TEST_CASE("exterior derivative: constant forms and the hand example") {
    TorusChart chart{2, 3};
    MatrixValuedForm c = scalar_term(chart, 1, 1u, fr({0, 0}), Complex(1.5, -0.5));
    CHECK(sup_norm(exterior_derivative(c)) == 0.0);

    // d(e^{i x1} dx2) = i e^{i x1} dx1^dx2
    MatrixValuedForm f = scalar_term(chart, 1, 2u, fr({1, 0}), Complex(1.0, 0.0));
    MatrixValuedForm df = exterior_derivative(f);
    MatrixValuedForm expect =
        scalar_term(chart, 2, 3u, fr({1, 0}), Complex(0.0, 1.0));
    CHECK(sup_norm(sub(df, expect)) < 1e-15);

    // cross-check against pointwise finite differences at 10 points:
    // (d f)_{12} = d1 f_2 - d2 f_1
    Rng rng(3);
    MatrixValuedForm g = random_form(rng, chart, 1, 1, 2, 1.0);
    MatrixValuedForm dg = exterior_derivative(g);
    for (int i = 0; i < 10; ++i) {
        auto x = random_point(rng, 2);
        Mat fd = pointwise_partial(g, 2u, 0, x) - pointwise_partial(g, 1u, 1, x);
        Mat got = dg.eval_component(3u, x);
        CHECK((got - fd).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("d of top-grade form errors") {
    TorusChart chart{2, 2};
    MatrixValuedForm f = scalar_term(chart, 2, 3u, fr({1, 0}), Complex(1.0, 0.0));
    CHECK_THROWS_AS(exterior_derivative(f), GradeOverflow);
}

TEST_CASE("linear_combine basics and pointwise oracle") {
    TorusChart chart{2, 2};
    Rng rng(5);
    MatrixValuedForm a = random_form(rng, chart, 2, 1, 1, 1.0);
    MatrixValuedForm b = random_form(rng, chart, 2, 1, 1, 1.0);
    CHECK(sup_norm(linear_combine(1.0, a, -1.0, a)) == 0.0);
    CHECK(sup_norm(sub(linear_combine(1.0, a, 0.0, b), a)) == 0.0);
    MatrixValuedForm lc = linear_combine(2.0, a, 3.0, b);
    for (int i = 0; i < 5; ++i) {
        auto x = random_point(rng, 2);
        for (AxisMask comp : {1u, 2u}) {
            Mat expect = 2.0 * a.eval_component(comp, x) + 3.0 * b.eval_component(comp, x);
            CHECK((lc.eval_component(comp, x) - expect).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("trace_form") {
    TorusChart chart{2, 2};
    MatrixValuedForm id(chart, 3, 0);
    id.add_term(0u, freq_zero(), Mat::Identity(3, 3));
    MatrixValuedForm tr = trace_form(id);
    CHECK(tr.rank() == 1);
    std::vector<double> origin{0.0, 0.0};
    CHECK(std::abs(tr.eval_component(0u, origin)(0, 0) - Complex(3.0, 0.0)) < 1e-15);

    // trace of a commutator of matrix 0-forms vanishes
    Rng rng(9);
    MatrixValuedForm a = random_form(rng, chart, 2, 0, 1, 1.0);
    MatrixValuedForm b = random_form(rng, chart, 2, 0, 1, 1.0);
    MatrixValuedForm comm = sub(wedge(a, b), wedge(b, a));
    CHECK(sup_norm(trace_form(comm)) < 1e-13);

    // diagonal inspection for a random 2x2 form
    MatrixValuedForm c = random_form(rng, chart, 2, 1, 1, 1.0);
    auto x = random_point(rng, 2);
    Mat m = c.eval_component(1u, x);
    CHECK(std::abs(trace_form(c).eval_component(1u, x)(0, 0) - (m(0, 0) + m(1, 1))) <
          1e-13);
}

TEST_CASE("integrate_over_subtorus") {
    TorusChart chart{2, 2};
    // unit dx1^dx2 over T^2 -> (2 pi)^2
    MatrixValuedForm vol = scalar_term(chart, 2, 3u, fr({0, 0}), Complex(1.0, 0.0));
    Complex v = integrate_over_subtorus(vol, {{1, 2}, {}});
    CHECK(std::abs(v - Complex(kTwoPi * kTwoPi, 0.0)) < 1e-12);

    // exact top form integrates to zero
    Rng rng(13);
    MatrixValuedForm w = random_form(rng, chart, 1, 1, 2, 1.0);
    Complex sv = integrate_over_subtorus(exterior_derivative(w), {{1, 2}, {}});
    CHECK(std::abs(sv) < 1e-12);

    // (3 + e^{i x1}) dx1 over the x1 circle -> 6 pi; cross-check by trapezoid
    MatrixValuedForm f = add(scalar_term(chart, 1, 1u, fr({0, 0}), 3.0),
                             scalar_term(chart, 1, 1u, fr({1, 0}), 1.0));
    Complex iv = integrate_over_subtorus(f, {{1}, {0.0, 0.7}});
    CHECK(std::abs(iv - Complex(6.0 * M_PI, 0.0)) < 1e-12);
    Complex tv = trapezoid_circle(f, 0, 64, {0.0, 0.7});
    CHECK(std::abs(iv - tv) < 1e-10);

    CHECK_THROWS_AS(integrate_over_subtorus(f, {{1, 2}, {}}), GradeMismatch);
}

TEST_CASE("sup_norm") {
    TorusChart chart{2, 2};
    MatrixValuedForm z(chart, 1, 1);
    CHECK(sup_norm(z) == 0.0);
    MatrixValuedForm c = scalar_term(chart, 1, 1u, fr({0, 0}), Complex(-2.5, 0.0));
    CHECK(sup_norm(c) == doctest::Approx(2.5));
    MatrixValuedForm f = add(scalar_term(chart, 1, 1u, fr({1, 0}), 1.0),
                             scalar_term(chart, 1, 1u, fr({-1, 0}), 1.0));
    CHECK(sup_norm(f) == doctest::Approx(2.0));
}

TEST_CASE("harmonic projection") {
    TorusChart chart{2, 2};
    MatrixValuedForm c = scalar_term(chart, 1, 1u, fr({0, 0}), Complex(5.0, 0.0));
    CHECK(sup_norm(sub(harmonic_projection(c), c)) == 0.0);

    Rng rng(17);
    MatrixValuedForm f = random_form(rng, chart, 1, 0, 2, 1.0);
    CHECK(sup_norm(harmonic_projection(exterior_derivative(f))) < 1e-15);

    // (5 + e^{i x2}) dx1 -> 5 dx1
    MatrixValuedForm g = add(scalar_term(chart, 1, 1u, fr({0, 0}), 5.0),
                             scalar_term(chart, 1, 1u, fr({0, 1}), 1.0));
    CHECK(sup_norm(sub(harmonic_projection(g), c)) == 0.0);
}

TEST_CASE("solve_potential") {
    TorusChart chart{3, 3};
    Rng rng(23);

    // omega = d(e^{i x1} dx2)
    MatrixValuedForm rho = scalar_term(chart, 1, 2u, fr({1, 0, 0}), 1.0);
    MatrixValuedForm omega = exterior_derivative(rho);
    MatrixValuedForm beta = solve_potential(omega, 1e-10);
    CHECK(sup_norm(sub(exterior_derivative(beta), omega)) < 1e-10);

    // round trip on random exact forms
    for (int i = 0; i < 20; ++i) {
        int g = rng.integer(0, 2);
        MatrixValuedForm r = random_form(rng, chart, 1, g, 3, 1.0);
        MatrixValuedForm w = exterior_derivative(r);
        MatrixValuedForm b = solve_potential(w, 1e-9);
        CHECK(sup_norm(sub(detail::d_or_vacuous(b), w)) < 1e-10);
    }

    // harmonic obstruction: dx1 is closed but not exact
    MatrixValuedForm dx1 = scalar_term(chart, 1, 1u, fr({0, 0, 0}), 1.0);
    CHECK_THROWS_AS(solve_potential(dx1, 1e-10), HarmonicObstruction);

    // non-closed input
    MatrixValuedForm bad = scalar_term(chart, 1, 1u, fr({0, 1, 0}), 1.0);
    CHECK_THROWS_AS(solve_potential(bad, 1e-10), NotClosed);
}

TEST_CASE("identity battery at spec scale") {
    auto res = identity_battery(TorusChart{4, 3}, 2, 25, 99);
    CHECK(res["d_d"] < 1e-12);
    CHECK(res["leibniz"] < 1e-11);
    CHECK(res["assoc"] < 1e-11);
    CHECK(res["stokes"] < 1e-11);
    CHECK(res["cyl_stokes"] < 1e-11);
    CHECK(res["potential"] < 1e-10);
}

TEST_CASE("random property battery") {
    TorusChart chart{4, 3};
    Rng rng(2026);
    for (int i = 0; i < 50; ++i) {
        // d d = 0
        int g = rng.integer(0, 2);
        MatrixValuedForm a = random_form(rng, chart, 2, g, 3, 1.0);
        CHECK(sup_norm(exterior_derivative(exterior_derivative(a))) < 1e-12);

        // graded Leibniz
        int ga = rng.integer(0, 2), gb = rng.integer(0, 1);
        MatrixValuedForm u = random_form(rng, chart, 2, ga, 1, 1.0);
        MatrixValuedForm v = random_form(rng, chart, 2, gb, 1, 1.0);
        MatrixValuedForm lhs = exterior_derivative(wedge(u, v));
        MatrixValuedForm rhs = add(wedge(exterior_derivative(u), v),
                                   scaled(ga % 2 == 0 ? 1.0 : -1.0,
                                          wedge(u, exterior_derivative(v))));
        CHECK(sup_norm(sub(lhs, rhs)) < 1e-11);

        // associativity
        MatrixValuedForm w3 = random_form(rng, chart, 2, 1, 1, 1.0);
        CHECK(sup_norm(sub(wedge(wedge(u, v), w3), wedge(u, wedge(v, w3)))) < 1e-11);
    }
}
