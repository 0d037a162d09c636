#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cvpv/entropy.hpp>
#include <cvpv/prf.hpp>

using namespace cvpv;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

double rel_err(double got, const big& want) {
    big diff = boost::multiprecision::abs(big(got) - want);
    big scale = boost::multiprecision::abs(want);
    if (scale < big(1))
        scale = 1;
    return static_cast<double>(diff / scale);
}

} // namespace

TEST_CASE("freq is exact rational arithmetic") {
    auto q = freq({0, 1, 1, 0}, 2);
    CHECK(q[0] == Fraction{2, 4});
    CHECK(q[1] == Fraction{2, 4});

    auto ones = freq({1, 1, 1}, 2);
    CHECK(ones[0].num == 0);
    CHECK(ones[1] == Fraction{3, 3});

    // alphabet {a, b, c} as {0, 1, 2}
    auto abc = freq({0, 1, 0, 2}, 3);
    CHECK(abc[0] == Fraction{2, 4});
    CHECK(abc[1] == Fraction{1, 4});
    CHECK(abc[2] == Fraction{1, 4});

    // numerators always sum to the denominator
    std::int64_t num = 0;
    for (const Fraction& f : abc)
        num += f.num;
    CHECK(num == abc[0].den);

    CHECK_THROWS_AS(freq({}, 2), EmptyString);
    CHECK_THROWS_AS(freq({0, 5}, 2), DomainError);
}

TEST_CASE("h_rate by enumeration matches the spec example") {
    MinTradeoff f{0.0, {0.0, 2.0}}; // f(q) = 2 q(1)
    auto at_least_half_ones = [](const std::vector<int>& x) {
        int ones = 0;
        for (int v : x)
            ones += v;
        return 2 * ones >= static_cast<int>(x.size());
    };
    CHECK(h_rate_enumerate(f, at_least_half_ones, 4) == doctest::Approx(1.0));

    MinTradeoff constant{0.3, {0.0, 0.0}};
    auto all = [](const std::vector<int>&) { return true; };
    CHECK(h_rate_enumerate(constant, all, 4) == doctest::Approx(0.3));

    auto only_ones = [](const std::vector<int>& x) {
        for (int v : x)
            if (v != 1)
                return false;
        return true;
    };
    CHECK(h_rate_enumerate(f, only_ones, 4) == doctest::Approx(2.0));

    auto nothing = [](const std::vector<int>&) { return false; };
    CHECK_THROWS_AS(h_rate_enumerate(f, nothing, 3), EmptyAcceptanceSet);
}

TEST_CASE("enumeration equals vertex minimization on binary thresholds") {
    // Acceptance sets of the form {#ones >= c} are frequency regions whose
    // vertices are q(1) = c/n and q(1) = 1. Affine f attains its minimum on
    // a vertex, so both routes must agree exactly for every n <= 12.
    PrfRng rng(Seed::from_hex("e0"), "f");
    for (int n = 1; n <= 12; ++n) {
        for (int c = 0; c <= n; ++c) {
            MinTradeoff f{rng.uniform() * 4 - 2,
                          {rng.uniform() * 4 - 2, rng.uniform() * 4 - 2}};
            auto accepted = [c](const std::vector<int>& x) {
                int ones = 0;
                for (int v : x)
                    ones += v;
                return ones >= c;
            };
            double lo = static_cast<double>(c) / n;
            std::vector<std::vector<double>> vertices{{1.0 - lo, lo}, {0.0, 1.0}};
            double via_enum = h_rate_enumerate(f, accepted, n);
            double via_vertices = h_rate_vertices(f, vertices);
            CHECK(via_enum == doctest::Approx(via_vertices).epsilon(1e-12));
        }
    }
}

TEST_CASE("spot values from the formulas") {
    CHECK(eat_bound({100, 0.5, 1, 5, 0}) == doctest::Approx(35.0));
    CHECK(eat_bound({100, 0.5, 0, 0, 0}) == doctest::Approx(50.0));
    CHECK(eat_bound({25, 0.0, 1, 0, 0}) <= 0.0);

    CHECK(minentropy_from_smooth(10, 0.0) == doctest::Approx(10.0));
    CHECK(minentropy_from_smooth(10, std::exp2(-10)) == doctest::Approx(9.0));
    CHECK(minentropy_from_smooth(1e6, 0.5) == doctest::Approx(1.0));

    CHECK(g_correction(1.0 / std::sqrt(2.0)) == doctest::Approx(1.7716).epsilon(1e-4));
    // strictly decreasing, divergent at the eps -> 0 end and vanishing at 1
    CHECK(g_correction(1e-6) > 20.0);
    CHECK(g_correction(0.999999) < 0.01);
    CHECK(g_correction(0.3) > g_correction(0.6));
    CHECK_THROWS_AS(g_correction(0.0), DomainError);
    CHECK_THROWS_AS(g_correction(1.0), DomainError);

    SuccessBounds b = success_bounds(1.0, 20, 0.1, 1.0, 4);
    CHECK(b.single == doctest::Approx(std::exp2(-20)));
    CHECK(b.repeated_raw == doctest::Approx(5.4598e-3).epsilon(1e-4));

    // vacuous cases stay visible in the raw value
    SuccessBounds vac = success_bounds(1.0, 0, 0.5, 1.0, 4);
    CHECK(vac.repeated_raw == doctest::Approx(std::pow(0.5 * 2.718281828459045, 4)));
    CHECK(vac.repeated == 1.0);
    SuccessBounds floor0 = success_bounds(1.0, 0, 0.1, 0.2, 4);
    CHECK(floor0.repeated_raw == 1.0); // floor(0.8) = 0

    CHECK(xhog_entropy(64, 1.0, 0.5, 0.0) == doctest::Approx(32.0));
    CHECK(xhog_entropy(64, 1.0, 1.0, 2.0) == doctest::Approx(-12.0));
}

TEST_CASE("xhog entropy grows with n once n is past the log term") {
    double prev = xhog_entropy(8, 1.0, 0.5, 1.0);
    for (double n = 9; n <= 64; ++n) {
        double cur = xhog_entropy(n, 1.0, 0.5, 1.0);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("all calculators match a 50-digit reference on a random grid") {
    PrfRng rng(Seed::from_hex("e1"), "grid");
    const big one(1), two(2);
    const big ln2 = boost::multiprecision::log(two);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        double n = 1 + std::floor(rng.uniform() * 1000);
        double h = rng.uniform();
        double c1 = rng.uniform() * 10;
        double c0 = rng.uniform() * 10;
        CHECK(rel_err(eat_bound({n, h, c1, c0, 0}),
                      big(n) * big(h) - big(c1) * boost::multiprecision::sqrt(big(n)) -
                          big(c0)) < 1e-12);

        double eps = 1e-6 + rng.uniform() * (1 - 2e-6);
        CHECK(rel_err(g_correction(eps),
                      -boost::multiprecision::log(
                          one - boost::multiprecision::sqrt(one - big(eps) * big(eps))) /
                          ln2) < 1e-12);

        double smooth = rng.uniform() * 60;
        double seps = rng.uniform() * 0.999;
        CHECK(rel_err(minentropy_from_smooth(smooth, seps),
                      -boost::multiprecision::log(
                          big(seps) + boost::multiprecision::pow(two, big(-smooth))) /
                          ln2) < 1e-12);

        double p_test = rng.uniform();
        double hmin = rng.uniform() * 40;
        double p_block = rng.uniform();
        double alpha = 0.05 + rng.uniform() * 0.95;
        std::int64_t m = 1 + static_cast<std::int64_t>(rng.uniform() * 40);
        SuccessBounds sb = success_bounds(p_test, hmin, p_block, alpha, m);
        big hmin_pow = boost::multiprecision::pow(two, big(-hmin));
        big single_ref = big(p_test) < hmin_pow ? big(p_test) : hmin_pow;
        CHECK(rel_err(sb.single, single_ref) < 1e-12);
        big e_ref = boost::multiprecision::exp(one);
        big repeated_ref = boost::multiprecision::pow(
            e_ref * big(p_block) / big(alpha),
            boost::multiprecision::floor(big(alpha) * big(m)));
        CHECK(rel_err(sb.repeated_raw, repeated_ref) < 1e-12);

        double delta = 0.05 + rng.uniform();
        double eta = 0.05 + rng.uniform() * 0.95;
        double clog = rng.uniform() * 4;
        double qn = 2 + std::floor(rng.uniform() * 62);
        CHECK(rel_err(xhog_entropy(qn, delta, eta, clog),
                      (one - big(eta)) * big(delta) * big(qn) -
                          big(clog) * boost::multiprecision::log(big(qn)) / ln2) < 1e-12);
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("minentropy_from_smooth never exceeds the smooth value") {
    PrfRng rng(Seed::from_hex("e2"), "mono");
    for (int i = 0; i < 200; ++i) {
        double smooth = rng.uniform() * 50;
        double eps = rng.uniform() * 0.999;
        double v = minentropy_from_smooth(smooth, eps);
        CHECK(v <= smooth + 1e-12);
        if (eps > 0)
            CHECK(v < smooth);
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(minentropy_from_smooth(10, 1.0), DomainError);
    CHECK_THROWS_AS(minentropy_from_smooth(-1, 0.1), DomainError);
    CHECK_THROWS_AS(success_bounds(1.5, 0, 0.5, 1, 1), DomainError);
    CHECK_THROWS_AS(success_bounds(0.5, 0, 0.5, 0.0, 1), DomainError);
    CHECK_THROWS_AS(success_bounds(0.5, 0, 0.5, 1, 0), DomainError);
    CHECK_THROWS_AS(xhog_entropy(64, 0.0, 0.5, 1), DomainError);
    CHECK_THROWS_AS(xhog_entropy(64, 1.0, 0.0, 1), DomainError);
    CHECK_THROWS_AS(eat_bound({0, 1, 0, 0, 0}), DomainError);
}
