#include "doctest.h"

#include "regudist/piecewise.hpp"
#include "support.hpp"

using namespace regudist;
using testsupport::close;
using testsupport::quadrature;
using testsupport::Rng;

namespace {
const Interval IV{-3.0, 4.0};
}

TEST_CASE("builders and limits") {
    const auto th = PiecewiseFunction::step(IV, 1.0);
    CHECK(close(th.limit(1.0, Side::left), {0.0, 0.0}, 1e-15));
    CHECK(close(th.limit(1.0, Side::right), {1.0, 0.0}, 1e-15));
    CHECK(close(th.eval(0.5), {0.0, 0.0}, 1e-15));
    CHECK(close(th.eval(2.5), {1.0, 0.0}, 1e-15));
    CHECK(th.breakpoints().size() == 1);

    const auto rp = PiecewiseFunction::ramp(IV, 1.0);
    CHECK(close(rp.eval(3.0), {2.0, 0.0}, 1e-15));
    CHECK(close(rp.eval(0.0), {0.0, 0.0}, 1e-15));
    CHECK(close(rp.limit(1.0, Side::left), {0.0, 0.0}, 1e-15));
    CHECK(close(rp.limit(1.0, Side::right), {0.0, 0.0}, 1e-15));
}

TEST_CASE("one-sided jet of an exponential") {
    // e^{2(t-1)} to the right of t = 1: derivatives 1, 2, 4, 8
    const Interval iv{1.0, std::numeric_limits<double>::infinity()};
    const auto g = PiecewiseFunction::single(iv, {ExpPolyTerm{{1.0, 0.0}, 0, {2.0, 0.0}, 1.0}});
    const auto jet = g.one_sided_jet(1.0, Side::right, 3);
    REQUIRE(jet.size() == 4);
    CHECK(close(jet[0], {1.0, 0.0}, 1e-14));
    CHECK(close(jet[1], {2.0, 0.0}, 1e-14));
    CHECK(close(jet[2], {4.0, 0.0}, 1e-14));
    CHECK(close(jet[3], {8.0, 0.0}, 1e-14));
}

TEST_CASE("jet agrees with finite differences") {
    Rng rng(201);
    for (int i = 0; i < 20; ++i) {
        const auto f = rng.piecewise(IV);
        // probe inside a piece, away from breakpoints
        double t = rng.uniform(IV.lo + 0.05, IV.hi - 0.05);
        bool nearbp = false;
        for (double b : f.breakpoints()) nearbp = nearbp || std::abs(t - b) < 0.05;
        if (nearbp) continue;
        const auto jet = f.one_sided_jet(t, Side::right, 1);
        const Complex fd = testsupport::one_sided_derivative([&](double s) { return f.eval(s); }, t, 1);
        CHECK(close(jet[1], fd, 1e-5));
        // left and right agree at interior points
        const auto jl = f.one_sided_jet(t, Side::left, 1);
        CHECK(close(jet[0], jl[0], 1e-14));
        CHECK(close(jet[1], jl[1], 1e-14));
    }
}

TEST_CASE("jump detects ramp kinks") {
    const auto rp = PiecewiseFunction::ramp(IV, 1.0);
    CHECK(close(rp.jump(1.0, 0), {0.0, 0.0}, 1e-15));
    CHECK(close(rp.jump(1.0, 1), {1.0, 0.0}, 1e-15));
    const auto th = PiecewiseFunction::step(IV, 1.0);
    CHECK(close(th.jump(1.0, 0), {1.0, 0.0}, 1e-15));
    CHECK(close(th.jump(1.0, 1), {0.0, 0.0}, 1e-15));
}

TEST_CASE("sites outside the interval are rejected") {
    const auto th = PiecewiseFunction::step(IV, 1.0);
    CHECK_THROWS_AS(th.one_sided_jet(5.0, Side::right, 1), domain_error);
    CHECK_THROWS_AS(th.limit(-3.0, Side::left), domain_error);
    CHECK_THROWS_AS(th.jump(4.0, 0), domain_error);
    CHECK_THROWS_AS(PiecewiseFunction::step(IV, 6.0), domain_error);
    CHECK_THROWS_AS(PiecewiseFunction::zero({2.0, 2.0}), domain_error);
}

TEST_CASE("antiderivative of a step is a ramp") {
    const auto th = PiecewiseFunction::step(IV, 1.0);
    const auto anti = th.antiderivative(0.0);
    CHECK(equal(anti, PiecewiseFunction::ramp(IV, 1.0), tol()));
}

TEST_CASE("antiderivative of e^t from 0 is e^t - 1") {
    const auto g = PiecewiseFunction::single(Interval::whole(), {ExpPolyTerm{{1.0, 0.0}, 0, {1.0, 0.0}, 0.0}});
    const auto anti = g.antiderivative(0.0);
    const auto expect = PiecewiseFunction::single(
        Interval::whole(),
        {ExpPolyTerm{{1.0, 0.0}, 0, {1.0, 0.0}, 0.0}, ExpPolyTerm{{-1.0, 0.0}, 0, {0.0, 0.0}, 0.0}});
    CHECK(equal(anti, expect, tol()));
}

TEST_CASE("differentiate_ae inverts antiderivative") {
    Rng rng(202);
    for (int i = 0; i < 40; ++i) {
        const auto f = rng.piecewise(IV);
        const double t0 = rng.uniform(IV.lo + 0.1, IV.hi - 0.1);
        const auto anti = f.antiderivative(t0);
        CHECK(equal(anti.differentiate_ae(), f, tol()));
        // G(t0) = 0 and G continuous at breakpoints
        CHECK(std::abs(anti.eval(t0)) <= 1e-10);
        for (double b : anti.breakpoints()) CHECK(close(anti.jump(b, 0), {0.0, 0.0}, 1e-10));
    }
}

TEST_CASE("definite integral matches quadrature") {
    Rng rng(203);
    for (int i = 0; i < 25; ++i) {
        const auto f = rng.piecewise(IV);
        const double u = rng.uniform(IV.lo, 0.0), v = rng.uniform(0.1, IV.hi);
        const Complex exact = f.definite_integral(u, v);
        const Complex numeric =
            quadrature([&](double s) { return f.eval(s); }, u, v, f.breakpoints());
        CHECK(close(exact, numeric, 1e-9));
    }
    const auto th = PiecewiseFunction::step(IV, 1.0);
    CHECK_THROWS_AS(th.definite_integral(2.0, 1.0), domain_error);
}

TEST_CASE("algebra is pointwise") {
    Rng rng(204);
    for (int i = 0; i < 30; ++i) {
        const auto f = rng.piecewise(IV);
        const auto g = rng.piecewise(IV);
        const auto s = f + g;
        const auto p = f * g;
        for (int k = 0; k < 4; ++k) {
            const double t = rng.uniform(IV.lo + 0.01, IV.hi - 0.01);
            CHECK(close(s.eval(t), f.eval(t) + g.eval(t), 1e-11));
            CHECK(close(p.eval(t), f.eval(t) * g.eval(t), 1e-11));
        }
    }
}

TEST_CASE("interval mismatch is an error") {
    const auto f = PiecewiseFunction::step(IV, 1.0);
    const auto g = PiecewiseFunction::step({-3.0, 5.0}, 1.0);
    CHECK_THROWS_AS(add(f, g), domain_error);
    CHECK_THROWS_AS(mul(f, g), domain_error);
}

TEST_CASE("canonical form erases fake breakpoints") {
    // same germ on both sides of 0
    const TermList t2{ExpPolyTerm{{1.0, 0.0}, 2, {0.0, 0.0}, -3.0}};
    const auto f = PiecewiseFunction::from_pieces(IV, {0.0}, {t2, exppoly::reanchor(t2, 0.0)});
    CHECK(f.breakpoints().empty());

    // a genuine high-order discontinuity survives: (t)^9 vs 0
    const TermList t9{ExpPolyTerm{{1.0, 0.0}, 9, {0.0, 0.0}, 0.0}};
    const auto g = PiecewiseFunction::from_pieces(IV, {0.0}, {TermList{}, t9});
    CHECK(g.breakpoints().size() == 1);

    // step squared is still the step
    const auto th = PiecewiseFunction::step(IV, 1.0);
    CHECK(equal(th * th, th, tol()));
}

TEST_CASE("equality tolerates tiny perturbations only") {
    const auto th = PiecewiseFunction::step(IV, 1.0);
    auto almost = th + PiecewiseFunction::constant(IV, Complex{1e-14, 0.0});
    CHECK(equal(th, almost, tol()));
    auto off = th + PiecewiseFunction::constant(IV, Complex{1e-6, 0.0});
    CHECK_FALSE(equal(th, off, tol()));
}

TEST_CASE("piecewise matrix shares breakpoints and spots constants") {
    const auto a11 = PiecewiseFunction::step(IV, 0.0);
    const auto a12 = PiecewiseFunction::constant(IV, {2.0, 0.0});
    const auto a21 = PiecewiseFunction::step(IV, 1.0);
    const auto a22 = PiecewiseFunction::zero(IV);
    const auto m = PiecewiseMatrix::from_entries(2, 2, {a11, a12, a21, a22});
    CHECK(m.breakpoints().size() == 2);
    CHECK(m.piecewise_constant(tol()));
    // values on the middle piece (0, 1): a11 = 1, a21 = 0
    CHECK(close(m.piece_value(0, 0, 1), {1.0, 0.0}, 1e-15));
    CHECK(close(m.piece_value(1, 0, 1), {0.0, 0.0}, 1e-15));
    CHECK(close(m.piece_value(0, 1, 1), {2.0, 0.0}, 1e-15));

    const auto ramp = PiecewiseFunction::ramp(IV, 0.0);
    const auto m2 = PiecewiseMatrix::from_entries(1, 1, {ramp});
    CHECK_FALSE(m2.piecewise_constant(tol()));

    CHECK_THROWS_AS(PiecewiseMatrix::from_entries(2, 2, {a11, a12, a21}), domain_error);
}

TEST_CASE("interval inference pads the hull") {
    const Interval iv = Interval::around({1.0, 2.0, 0.5}, 1.0);
    CHECK(iv.lo == doctest::Approx(-0.5));
    CHECK(iv.hi == doctest::Approx(3.0));
}
