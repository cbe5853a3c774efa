#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chernweil/errors.hpp"
#include "chernweil/invariants.hpp"
#include "test_helpers.hpp"

using namespace chernweil;

namespace {

MatrixValuedForm constant_form(const TorusChart& chart, int axis, const Mat& m) {
    MatrixValuedForm f(chart, int(m.rows()), 1);
    f.add_term(1u << axis, freq_zero(), m);
    return f;
}

// e_p of the eigenvalues of a matrix, computed directly.
Complex elementary_symmetric(const std::vector<Complex>& lam, int p) {
    std::vector<Complex> e(size_t(p) + 1, Complex(0.0, 0.0));
    e[0] = 1.0;
    for (Complex x : lam)
        for (int j = p; j >= 1; --j) e[size_t(j)] += x * e[size_t(j - 1)];
    return e[size_t(p)];
}

}  // namespace

TEST_CASE("girard table matches the frozen rationals") {
    // e_1 = p1
    InvariantPolynomial p1(1);
    REQUIRE(p1.girard_table().size() == 1);
    CHECK(p1.girard_table()[0].num == 1);
    CHECK(p1.girard_table()[0].den == 1);

    // e_2 = (p1^2 - p2)/2
    InvariantPolynomial p2(2);
    for (const auto& t : p2.girard_table()) {
        if (t.parts == std::vector<int>{1, 1}) {
            CHECK(t.num == 1);
            CHECK(t.den == 2);
        } else if (t.parts == std::vector<int>{2}) {
            CHECK(t.num == -1);
            CHECK(t.den == 2);
        } else {
            FAIL("unexpected partition");
        }
    }

    // e_3 = (p1^3 - 3 p1 p2 + 2 p3)/6
    InvariantPolynomial p3(3);
    for (const auto& t : p3.girard_table()) {
        double c = double(t.num) / double(t.den);
        if (t.parts == std::vector<int>{1, 1, 1}) CHECK(c == doctest::Approx(1.0 / 6));
        if (t.parts == std::vector<int>{2, 1}) CHECK(c == doctest::Approx(-0.5));
        if (t.parts == std::vector<int>{3}) CHECK(c == doctest::Approx(1.0 / 3));
    }

    // e_4 = (p1^4 - 6 p1^2 p2 + 3 p2^2 + 8 p1 p3 - 6 p4)/24
    InvariantPolynomial p4(4);
    for (const auto& t : p4.girard_table()) {
        double c = double(t.num) / double(t.den);
        if (t.parts == std::vector<int>{1, 1, 1, 1}) CHECK(c == doctest::Approx(1.0 / 24));
        if (t.parts == std::vector<int>{2, 1, 1}) CHECK(c == doctest::Approx(-0.25));
        if (t.parts == std::vector<int>{2, 2}) CHECK(c == doctest::Approx(1.0 / 8));
        if (t.parts == std::vector<int>{3, 1}) CHECK(c == doctest::Approx(1.0 / 3));
        if (t.parts == std::vector<int>{4}) CHECK(c == doctest::Approx(-0.25));
    }
}

TEST_CASE("girard expansion equals e_p of eigenvalues on diagonal matrices") {
    TorusChart chart{2, 2};
    Rng rng(101);
    for (int p = 1; p <= 4; ++p) {
        InvariantPolynomial P(p);
        std::vector<Complex> lam;
        Mat d = Mat::Zero(4, 4);
        for (int i = 0; i < 4; ++i) {
            lam.push_back(rng.cplx(1.0));
            d(i, i) = lam.back();
        }
        MatrixValuedForm f(chart, 4, 0);
        f.add_term(0u, freq_zero(), d);
        std::vector<const MatrixValuedForm*> args(size_t(p), &f);
        MatrixValuedForm val = polarized_chern(P, args);
        Complex expect = elementary_symmetric(lam, p) * P.normalization();
        std::vector<double> origin{0.0, 0.0};
        CHECK(std::abs(val.eval_component(0u, origin)(0, 0) - expect) < 1e-12);
    }
}

TEST_CASE("P_1 is the normalized trace") {
    TorusChart chart{3, 3};
    Rng rng(103);
    MatrixValuedForm theta = random_form(rng, chart, 2, 2, 1, 1.0);
    InvariantPolynomial P(1);
    MatrixValuedForm got = polarized_chern(P, {&theta});
    MatrixValuedForm expect = scaled(P.normalization(), trace_form(theta));
    CHECK(sup_norm(sub(got, expect)) < 1e-14);
}

TEST_CASE("P_2 on commuting diagonal 2-forms is the product of eigenvalue forms") {
    TorusChart chart{4, 4};
    Rng rng(107);
    // diagonal matrix of scalar 2-forms with eigenvalue forms l1, l2
    MatrixValuedForm l1 = random_form(rng, chart, 1, 2, 1, 1.0);
    MatrixValuedForm l2 = random_form(rng, chart, 1, 2, 1, 1.0);
    MatrixValuedForm theta(chart, 2, 2);
    for (const auto& [comp, f] : l1.components())
        for (const auto& [k, m] : f.terms()) {
            Mat d = Mat::Zero(2, 2);
            d(0, 0) = m(0, 0);
            theta.add_term(comp, k, d);
        }
    for (const auto& [comp, f] : l2.components())
        for (const auto& [k, m] : f.terms()) {
            Mat d = Mat::Zero(2, 2);
            d(1, 1) = m(0, 0);
            theta.add_term(comp, k, d);
        }
    InvariantPolynomial P(2);
    MatrixValuedForm got = polarized_chern(P, {&theta, &theta});
    MatrixValuedForm expect = scaled(P.normalization(), wedge(l1, l2));
    CHECK(sup_norm(sub(got, expect)) < 1e-12);

    // cross-check against the trace formula (1/2)((tr T)^2 - tr(T^T))
    MatrixValuedForm tr = trace_form(theta);
    MatrixValuedForm tf = scaled(0.5 * P.normalization(),
                                 sub(wedge(tr, tr), trace_form(wedge(theta, theta))));
    CHECK(sup_norm(sub(got, tf)) < 1e-12);
}

TEST_CASE("multilinearity and zero slots") {
    TorusChart chart{4, 4};
    Rng rng(109);
    InvariantPolynomial P(2);
    MatrixValuedForm a = random_form(rng, chart, 2, 2, 1, 1.0);
    MatrixValuedForm b = random_form(rng, chart, 2, 2, 1, 1.0);
    MatrixValuedForm z(chart, 2, 2);
    CHECK(sup_norm(polarized_chern(P, {&z, &a})) == 0.0);

    // linearity in the first slot
    MatrixValuedForm ab = add(a, b);
    MatrixValuedForm lhs = polarized_chern(P, {&ab, &a});
    MatrixValuedForm rhs =
        add(polarized_chern(P, {&a, &a}), polarized_chern(P, {&b, &a}));
    CHECK(sup_norm(sub(lhs, rhs)) < 1e-11);

    // permuting even arguments leaves the value unchanged
    CHECK(sup_norm(sub(polarized_chern(P, {&a, &b}), polarized_chern(P, {&b, &a}))) <
          1e-12);
}

TEST_CASE("Ad-invariance under constant conjugation") {
    TorusChart chart{4, 4};
    Rng rng(113);
    InvariantPolynomial P(2);
    MatrixValuedForm odd = random_form(rng, chart, 2, 1, 1, 1.0);
    MatrixValuedForm even = random_form(rng, chart, 2, 2, 1, 1.0);
    Mat g(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = rng.cplx(1.0);
    g += 3.0 * Mat::Identity(2, 2);  // keep it invertible
    Mat gi = g.inverse();

    auto conj = [&](const MatrixValuedForm& f) {
        MatrixValuedForm r(f.chart(), f.rank(), f.grade());
        for (const auto& [comp, fm] : f.components())
            for (const auto& [k, m] : fm.terms()) r.add_term(comp, k, g * m * gi);
        return r;
    };
    MatrixValuedForm co = conj(odd), ce = conj(even);
    MatrixValuedForm lhs = polarized_chern(P, {&co, &ce});
    MatrixValuedForm rhs = polarized_chern(P, {&odd, &even});
    CHECK(sup_norm(sub(lhs, rhs)) < 1e-10);
}

TEST_CASE("odd-argument limits") {
    TorusChart chart{4, 4};
    Rng rng(127);
    InvariantPolynomial P(2);
    MatrixValuedForm u = random_form(rng, chart, 2, 1, 1, 1.0);
    MatrixValuedForm v = random_form(rng, chart, 2, 1, 1, 1.0);
    CHECK_THROWS_AS(polarized_chern(P, {&u, &v}), TooManyOddArguments);

    // the two-odd entry point is antisymmetric
    InvariantPolynomial P3(3);
    MatrixValuedForm theta = random_form(rng, chart, 2, 2, 1, 1.0);
    MatrixValuedForm uv = polarized_chern_two_odd(P3, u, v, theta);
    MatrixValuedForm vu = polarized_chern_two_odd(P3, v, u, theta);
    CHECK(sup_norm(add(uv, vu)) < 1e-12);
    CHECK(sup_norm(polarized_chern_two_odd(P3, u, u, theta)) < 1e-12);
}

TEST_CASE("chern_form basics") {
    TorusChart chart{4, 4};
    Rng rng(131);

    // flat connection -> zero form
    Mat d1 = Mat::Zero(2, 2), d2 = Mat::Zero(2, 2);
    d1(0, 0) = Complex(0.0, 0.4);
    d2(1, 1) = Complex(0.0, 0.7);
    Connection flat(add(constant_form(chart, 0, d1), constant_form(chart, 1, d2)));
    CHECK(sup_norm(chern_form(flat, 1)) < 1e-15);
    CHECK(sup_norm(chern_form(flat, 2)) < 1e-15);

    // rank 1: c_2 vanishes identically
    Connection line(random_form(rng, chart, 1, 1, 1, 1.0));
    CHECK(sup_norm(chern_form(line, 2)) < 1e-13);

    // constant matrices: c_1 = (i/2pi) tr[M,N] dx1^dx2 = 0, c_2 from e_2
    Mat m = random_skew_hermitian(rng, 2, 0.8);
    Mat n = random_skew_hermitian(rng, 2, 0.8);
    Connection c(add(constant_form(chart, 0, m), constant_form(chart, 1, n)));
    CHECK(sup_norm(chern_form(c, 1)) < 1e-14);  // trace of a commutator
    auto oracle = total_chern_oracle(c);
    CHECK(sup_norm(sub(chern_form(c, 2), oracle[1])) < 1e-12);

    // 2p beyond the dimension: zero form allowed
    CHECK(sup_norm(chern_form(c, 3)) == 0.0);
}

TEST_CASE("determinant oracle agreement and closedness on random connections") {
    Rng rng(137);
    for (int rank = 1; rank <= 3; ++rank) {
        TorusChart chart{4, 4};
        Connection c(random_form(rng, chart, rank, 1, 1, 0.7));
        auto oracle = total_chern_oracle(c);
        for (int p = 1; p <= rank; ++p) {
            MatrixValuedForm cf = chern_form(c, p);
            CHECK(sup_norm(sub(cf, oracle[size_t(p - 1)])) < 1e-10);
            if (2 * p < chart.dim)
                CHECK(sup_norm(exterior_derivative(cf)) < 1e-11);
        }
    }
    // Bianchi closedness for c_2 needs a 5-torus
    TorusChart chart5{5, 4};
    Connection c5(random_form(rng, chart5, 2, 1, 1, 0.7));
    CHECK(sup_norm(exterior_derivative(chern_form(c5, 2))) < 1e-11);
    CHECK(sup_norm(sub(chern_form(c5, 2), total_chern_oracle(c5)[1])) < 1e-10);
}

TEST_CASE("integral periods of c_1") {
    // on a trivialized bundle every c_1 flux over a 2-subtorus is an integer
    // (namely zero: the zero-frequency part of dA vanishes and tr(A^A) = 0)
    TorusChart chart{3, 4};
    Rng rng(139);
    for (int i = 0; i < 10; ++i) {
        Connection c(random_form(rng, chart, 2, 1, 2, 1.0));
        MatrixValuedForm c1 = chern_form(c, 1);
        for (std::vector<int> axes : {std::vector<int>{1, 2}, {1, 3}, {2, 3}}) {
            Complex flux = integrate_over_subtorus(c1, {axes, {}});
            CHECK(std::abs(flux - Complex(std::round(flux.real()), 0.0)) < 1e-9);
        }
    }
}
