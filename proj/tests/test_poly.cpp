#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcvx/poly.hpp"

#include <random>

using namespace pcvx;

namespace {

RegistryPtr xyz() { return VarRegistry::make_real({"x", "y", "z"}); }

SparsePoly random_poly(const RegistryPtr& reg, std::mt19937& rng, int max_deg = 3) {
    std::uniform_int_distribution<int> e(0, max_deg);
    std::uniform_int_distribution<int> num(-5, 5);
    SparsePoly p(reg);
    for (int t = 0; t < 5; ++t) {
        Monomial m(reg->size(), 0);
        int budget = max_deg;
        for (int i = 0; i < reg->size(); ++i) {
            int d = std::min(budget, e(rng));
            m[i] = static_cast<unsigned char>(d);
            budget -= d;
        }
        p.add_term(m, GaussianRational(Rational(num(rng)), Rational(num(rng))));
    }
    return p;
}

}  // namespace

TEST_CASE("registry construction and lookup") {
    auto reg = xyz();
    CHECK(reg->size() == 3);
    CHECK(reg->index_of("y") == 1);
    CHECK(reg->has("z"));
    CHECK(!reg->has("w"));
    CHECK_THROWS_AS((void)reg->index_of("w"), Error);
    CHECK_THROWS_AS((void)VarRegistry::make_real({"x", "x"}), Error);

    auto creg = VarRegistry::make_complex({"z", "w"}, {{"x", "y"}, {"u", "v"}});
    CHECK(creg->num_complex() == 2);
    CHECK(creg->coord("w").re_idx == 2);
    CHECK(creg->role(0) == VarRole::RealPart);
    CHECK(creg->role(1) == VarRole::ImagPart);
    CHECK_THROWS_AS((void)VarRegistry::make_complex({"z"}, {{"x", "x"}}), Error);
}

TEST_CASE("basic polynomial structure") {
    auto reg = xyz();
    SparsePoly x = SparsePoly::var(reg, "x");
    SparsePoly y = SparsePoly::var(reg, "y");
    CHECK(SparsePoly::zero(reg).is_zero());
    CHECK(SparsePoly::zero(reg).degree() == -1);
    CHECK((x * x * y).degree() == 3);
    CHECK(SparsePoly::var(reg, 0, 0).degree() == 0);
    CHECK((x - x).is_zero());
    CHECK((x - x).terms().empty());  // cancellation never leaves zero terms
    CHECK_THROWS_AS((void)SparsePoly::var(reg, 7), Error);
    CHECK_THROWS_AS((void)SparsePoly::var(reg, 0, 65), Error);
    CHECK_THROWS_AS((void)(SparsePoly::var(reg, 0, 40) * SparsePoly::var(reg, 0, 40)), Error);

    auto other = xyz();
    CHECK_THROWS_AS((void)(x + SparsePoly::var(other, "x")), Error);
}

TEST_CASE("ring axioms on randomized polynomials") {
    auto reg = xyz();
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        SparsePoly a = random_poly(reg, rng), b = random_poly(reg, rng),
                   c = random_poly(reg, rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(-(-a) == a);
        CHECK(a * SparsePoly::constant(reg, GaussianRational(1)) == a);
    }
}

TEST_CASE("evaluation commutes with arithmetic and composition") {
    auto reg = xyz();
    std::mt19937 rng(99);
    std::vector<GaussianRational> pt = {GaussianRational(Rational(1, 2), Rational(1, 3)),
                                        GaussianRational(Rational(-2, 5)),
                                        GaussianRational(Rational(0), Rational(3, 7))};
    for (int trial = 0; trial < 10; ++trial) {
        SparsePoly a = random_poly(reg, rng), b = random_poly(reg, rng);
        CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
        CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
    }

    // compose then eval == eval substitutes first
    auto tgt = VarRegistry::make_real({"s", "t"});
    SparsePoly s = SparsePoly::var(tgt, "s"), t = SparsePoly::var(tgt, "t");
    std::vector<std::optional<SparsePoly>> subst = {s + t, s * t, s - t};
    std::vector<GaussianRational> q = {GaussianRational(Rational(2, 3)),
                                       GaussianRational(Rational(-1, 4))};
    std::vector<GaussianRational> mapped = {subst[0]->eval(q), subst[1]->eval(q),
                                            subst[2]->eval(q)};
    for (int trial = 0; trial < 10; ++trial) {
        SparsePoly a = random_poly(reg, rng);
        CHECK(a.compose(subst).eval(q) == a.eval(mapped));
    }
    CHECK_THROWS_AS((void)random_poly(reg, rng).compose({s, t}), Error);  // size mismatch
}

TEST_CASE("partial derivatives satisfy the Leibniz rule") {
    auto reg = xyz();
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        SparsePoly a = random_poly(reg, rng), b = random_poly(reg, rng);
        for (int i = 0; i < 3; ++i)
            CHECK((a * b).partial(i) == a.partial(i) * b + a * b.partial(i));
    }
    SparsePoly x = SparsePoly::var(reg, "x");
    CHECK(x.pow(4).partial(0) == x.pow(3) * GaussianRational(4));
}

TEST_CASE("real and imaginary parts, conjugation") {
    auto reg = xyz();
    SparsePoly x = SparsePoly::var(reg, "x"), y = SparsePoly::var(reg, "y");
    SparsePoly f = x + y * GaussianRational::i();
    CHECK(f.real_part() == x);
    CHECK(f.imag_part() == y);
    CHECK(!f.is_real_valued());
    CHECK((f * f.conj_coeffs()).is_real_valued());
    CHECK(f * f.conj_coeffs() == x * x + y * y);
}

TEST_CASE("canonical serialization") {
    auto reg = xyz();
    SparsePoly x = SparsePoly::var(reg, "x"), y = SparsePoly::var(reg, "y");
    CHECK(SparsePoly::zero(reg).to_string() == "0");
    CHECK((x * x + y * y).to_string() == "1*x^2 + 1*y^2");
    CHECK((x * GaussianRational(Rational(1, 2)) + SparsePoly::constant(reg, GaussianRational(3)))
              .to_string() == "1/2*x + 3");
    CHECK((y * GaussianRational::i()).to_string() == "1*i*y");
}

TEST_CASE("floating evaluation shadows exact evaluation") {
    auto reg = xyz();
    std::mt19937 rng(2024);
    std::vector<double> pd = {0.5, -0.4, 0.428571428571428};
    std::vector<Rational> pr = {Rational(1, 2), Rational(-2, 5), Rational(3, 7)};
    for (int trial = 0; trial < 10; ++trial) {
        SparsePoly a = random_poly(reg, rng).real_part();
        double exact = to_double(a.eval_real(pr).re);
        CHECK(std::abs(a.eval_double(pd) - exact) < 1e-9);
    }
}
