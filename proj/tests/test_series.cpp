#include "support.hpp"

#include "pnev/errors.hpp"

#include <doctest.h>

using namespace pnev;
using namespace pnev::testing;

namespace {

using V = NewtonPolygon::Vertex;

// sum_{i <= T} p^{i^2} z^i with the certificate v_p(a_i) >= (2T+1) i - T(T+1).
EntireSeries square_exponent_series(long p, long T) {
    std::vector<Rational> a;
    for (long i = 0; i <= T; ++i) {
        Integer v;
        mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(i * i));
        a.emplace_back(v);
    }
    return EntireSeries::truncated(std::move(a), {Rational(2 * T + 1), Rational(-T * (T + 1))});
}

}  // namespace

TEST_CASE("gauss_norm examples") {
    PrimeConfig p3(3);
    PLFunction z = gauss_norm(series({"0", "1"}), p3);
    CHECK(z == PLFunction::affine(1, 0));

    PLFunction g = gauss_norm(series({"1", "1", "3"}), p3);
    CHECK(g.breakpoints() == qs({"0", "1"}));
    CHECK(g.slopes() == qs({"0", "1", "2"}));
    CHECK(g(0) == 0);

    std::vector<Rational> head;
    for (long i = 0; i <= 4; ++i) {
        Integer v;
        mpz_ui_pow_ui(v.get_mpz_t(), 3, static_cast<unsigned long>(i * i));
        head.emplace_back(v);
    }
    EntireSeries f = EntireSeries::truncated(head, {5, 0});
    PLFunction gf = gauss_norm(f, p3);
    CHECK(gf.domain() == Interval::at_most(5));
    CHECK(gf(3) == 2);
    CHECK_THROWS_AS(gf(6), WindowError);
    CHECK_THROWS_AS(gauss_norm(EntireSeries(), p3), InputError);
}

TEST_CASE("gauss_norm matches the definition") {
    Random rng(21);
    for (int t = 0; t < 200; ++t) {
        long p = rng.prime({2, 3, 5});
        std::vector<Rational> a(static_cast<std::size_t>(rng.integer(1, 7)));
        for (auto& c : a) c = rng.coin() ? rng.fraction(30) : Rational(0);
        a.back() = rng.nonzero_fraction(30);
        PLFunction g = gauss_norm(EntireSeries::polynomial(a), PrimeConfig(p));
        CHECK(g.is_convex());
        for (const Rational& s : grid(-5, 5, 4)) REQUIRE(g(s) == naive_gauss(a, s, p));
    }
}

TEST_CASE("newton_polygon examples") {
    CHECK(newton_polygon(series({"0", "0", "0", "1"}), PrimeConfig(3)).vertices == std::vector<V>{{3, 0}});
    CHECK(newton_polygon(series({"1", "1", "5"}), PrimeConfig(5)).vertices ==
          std::vector<V>{{0, 0}, {1, 0}, {2, 1}});
    NewtonPolygon np = newton_polygon(series({"3", "0", "1"}), PrimeConfig(3));
    CHECK(np.vertices == std::vector<V>{{0, 1}, {2, 0}});
    CHECK(np.slope(0) == q("-1/2"));
    CHECK(np.str() == "[(0, 1), (2, 0)]");
    // collinear middle point dropped
    CHECK(newton_polygon(series({"1", "3", "9"}), PrimeConfig(3)).vertices == std::vector<V>{{0, 0}, {2, 2}});
}

TEST_CASE("zero_count examples") {
    PrimeConfig p3(3);
    CHECK(zero_count(series({"1", "1", "3"}), q("1/2"), p3) == 1);
    CHECK(zero_count(series({"1", "1", "3"}), 1, p3) == 2);
    CHECK(zero_count(series({"3", "0", "1"}), q("-1/2"), p3) == 2);
    CHECK(zero_count(series({"3", "0", "1"}), -1, p3) == 0);
    for (long s : {-4L, 0L, 9L}) CHECK(zero_count(series({"0", "0", "0", "0", "1"}), s, p3) == 4);
}

TEST_CASE("quadratic roots by the quadratic formula") {
    // z^2 + b z + c with rational roots r1, r2 built directly; the closed disk
    // of log-radius s holds the roots with log_p|r| <= s.
    Random rng(3);
    for (int t = 0; t < 200; ++t) {
        long p = rng.prime({2, 3, 5, 7});
        Rational r1 = rng.nonzero_fraction(50), r2 = rng.nonzero_fraction(50);
        EntireSeries f = EntireSeries::polynomial({r1 * r2, -(r1 + r2), Rational(1)});
        for (const Rational& s : grid(-6, 6, 2)) {
            REQUIRE(zero_count(f, s, PrimeConfig(p)) == naive_root_count({r1, r2}, s, p));
        }
    }
}

TEST_CASE("counting_plf examples") {
    PrimeConfig p3(3), p5(5);
    CHECK(counting_plf(series({"0", "1"}), p3) == PLFunction::affine(1, 0));
    PLFunction n = counting_plf(series({"1", "1", "3"}), p3);
    CHECK(n.breakpoints() == qs({"0", "1"}));
    CHECK(n.slopes() == qs({"0", "1", "2"}));
    CHECK(n(-2) == 0);
    CHECK(n(3) == 5);
    CHECK(counting_plf(series({"0", "-1", "1"}), p5)(2) == 4);
}

TEST_CASE("Jensen identity and Newton/Gauss duality") {
    Random rng(17);
    for (int t = 0; t < 200; ++t) {
        long p = rng.prime({2, 3, 5, 7});
        PrimeConfig cfg(p);
        std::vector<Rational> a(static_cast<std::size_t>(rng.integer(1, 8)));
        for (auto& c : a) c = rng.coin() ? rng.fraction(40) : Rational(0);
        a.back() = rng.nonzero_fraction(40);
        EntireSeries f = EntireSeries::polynomial(a);
        PLFunction g = gauss_norm(f, cfg);
        PLFunction n = counting_plf(f, cfg);
        CHECK(n.is_convex());
        Rational lowest = log_abs(f.lowest_coefficient(), cfg).value();
        CHECK(g == n.shifted(lowest));
        std::size_t prev = 0;
        for (const Rational& s : grid(-5, 5, 6)) {
            std::size_t k = zero_count(f, s, cfg);
            REQUIRE(k == naive_argmax(a, s, p));
            REQUIRE(k >= prev);
            REQUIRE(n.right_slope_at(s) == static_cast<long>(k));
            prev = k;
        }
    }
}

TEST_CASE("certified windows") {
    PrimeConfig p2(2);
    EntireSeries f = square_exponent_series(2, 3);
    Interval w = validity_window(f, p2);
    REQUIRE(w.bounded_above());
    CHECK(*w.hi <= 7);
    CHECK_THROWS_AS(zero_count(f, *w.hi + 1, p2), WindowError);
    CHECK(zero_count(f, 0, p2) == 0);
    CHECK(validity_window(series({"1", "2"}), p2) == Interval::line());

    // The head of a longer truncation agrees on the shorter window.
    EntireSeries g = square_exponent_series(2, 6);
    PLFunction gf = gauss_norm(f, p2), gg = gauss_norm(g, p2);
    for (const Rational& s : grid(-4, 6, 3)) {
        if (w.contains(s)) REQUIRE(gf(s) == gg(s));
    }
}

TEST_CASE("series arithmetic") {
    PrimeConfig p3(3);
    CHECK(series_mul(series({"1", "1"}), series({"1", "-1"}), p3) == series({"1", "0", "-1"}));
    CHECK(series_mul(series({"0", "1"}), series({"0", "1"}), p3) == series({"0", "0", "1"}));
    CHECK(series_mul(series({"1", "3"}), series({"1", "3"}), p3) == series({"1", "6", "9"}));
    CHECK(series_add(series({"1", "1"}), series({"-1", "-1"}), p3).is_zero());
    CHECK(series_pow(series({"1", "1"}), 3, p3) == series({"1", "3", "3", "1"}));
    CHECK(series({"1", "0", "3"}).str() == "1 + 3*z^2");

    EntireSeries t = square_exponent_series(3, 2);
    EntireSeries prod = series_mul(t, t, p3);
    REQUIRE(prod.tail().has_value());
    CHECK(prod.truncation_order() == 2);
    CHECK(prod.coefficients() == qs({"1", "6", "171"}));
    CHECK_THROWS_AS(prod.coefficient(3), WindowError);
}

TEST_CASE("Gauss lemma on certified products") {
    Random rng(8);
    for (int t = 0; t < 40; ++t) {
        long p = rng.prime({2, 3});
        PrimeConfig cfg(p);
        EntireSeries f = square_exponent_series(p, rng.integer(2, 4));
        std::vector<Rational> b(static_cast<std::size_t>(rng.integer(1, 4)));
        for (auto& c : b) c = rng.nonzero_fraction(12);
        EntireSeries g = EntireSeries::polynomial(b);
        EntireSeries fg = series_mul(f, g, cfg);
        PLFunction lhs = gauss_norm(fg, cfg);
        PLFunction rhs = plf_add(gauss_norm(f, cfg), gauss_norm(g, cfg));
        Interval w = intersect(lhs.domain(), rhs.domain());
        REQUIRE_FALSE(w.empty());
        CHECK(lhs.restrict_to(w) == rhs.restrict_to(w));
    }
}
