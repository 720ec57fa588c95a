#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace bigbracket;
using testsupport::Rng;

namespace {

Polynomial gen(const TablePtr& t, const std::string& n) { return Polynomial::generator(t, n); }

Polynomial tangent_mu(const TablePtr& t) {
    Polynomial mu = Polynomial::zero(t);
    for (int i = 1; i <= t->base_dim(); ++i)
        mu += gen(t, "p" + std::to_string(i)) * gen(t, "xi" + std::to_string(i));
    return mu;
}

/// Random section of V + V*: odd-linear with base-polynomial coefficients.
Polynomial random_section(Rng& rng, const TablePtr& t, int max_x = 2) {
    Polynomial x = testsupport::random_homogeneous(rng, t, Bidegree{1, 0}, max_x);
    Polynomial a = testsupport::random_homogeneous(rng, t, Bidegree{0, 1}, max_x);
    return x + a;
}

}  // namespace

TEST_CASE("pairing fixtures") {
    auto t = standard_table(2, 2);
    CHECK(pairing(gen(t, "th1"), gen(t, "xi1")) == Polynomial::constant(t, Rat(1)));
    CHECK(pairing(gen(t, "th1"), gen(t, "th2")).is_zero());
    // hand pairing oracle: <alpha, Y> + <beta, X>
    Polynomial u = gen(t, "x1") * gen(t, "th1") + gen(t, "xi2");
    Polynomial v = gen(t, "th2") + gen(t, "x1") * gen(t, "xi1");
    CHECK(pairing(u, v) == gen(t, "x1") * gen(t, "x1") + Polynomial::constant(t, Rat(1)));
    // symmetric
    Rng rng(1);
    for (int iter = 0; iter < 10; ++iter) {
        Polynomial a = random_section(rng, t), b = random_section(rng, t);
        CHECK(pairing(a, b) == pairing(b, a));
    }
    CHECK_THROWS_AS(pairing(gen(t, "p1"), gen(t, "xi1")), std::invalid_argument);
}

TEST_CASE("dorfman bracket fixtures") {
    auto t = standard_table(2, 2);
    Structure s = Structure::from_mu(tangent_mu(t));
    int eps = orientation_sign();

    // flat frame: constant sections bracket to zero
    CHECK(dorfman(s, gen(t, "th1"), gen(t, "th2")).is_zero());

    // Lie derivative of a 1-form: [d1, x1 xi1]_S realizes L_{d1}(x1 dx1) = dx1
    // in the measured orientation
    Polynomial got = dorfman(s, gen(t, "th1"), gen(t, "x1") * gen(t, "xi1"));
    CHECK(got == Rat(eps) * gen(t, "xi1"));

    // non-structures are rejected
    auto t0 = standard_table(0, 3);
    LieConstants bad(3);
    bad.set(3, 1, 2, Rat(1));
    bad.set(2, 2, 3, Rat(1));
    Structure sbad = Structure::from_mu(encode_lie_structure(t0, bad));
    CHECK_THROWS_AS(dorfman(sbad, gen(t0, "th1"), gen(t0, "th2")), std::invalid_argument);
}

TEST_CASE("courant axioms hold on basis and random sections") {
    SECTION("tangent structure on R^2") {
        auto t = standard_table(2, 2);
        Structure s = Structure::from_mu(tangent_mu(t));
        CourantReport rep = courant_axioms_check(s, basis_sections(t));
        CHECK(rep.triples_checked == 64);
        CHECK(rep.ok());

        // richer sections with base-dependent coefficients
        Rng rng(7);
        std::vector<Polynomial> secs;
        for (int i = 0; i < 3; ++i) secs.push_back(random_section(rng, t));
        CHECK(courant_axioms_check(s, secs).ok());
    }

    SECTION("aff(1) bialgebra double") {
        auto t = standard_table(0, 2);
        LieConstants aff(2);
        aff.set(2, 1, 2, Rat(1));
        Structure s = Structure::from_mu(encode_lie_structure(t, aff));
        CourantReport rep = courant_axioms_check(s, basis_sections(t));
        CHECK(rep.triples_checked == 64);
        CHECK(rep.ok());
    }

    SECTION("zero structure: all brackets vanish") {
        auto t = standard_table(1, 1);
        auto z = Polynomial::zero(t);
        Structure s(z, z, z, z);
        CHECK(courant_axioms_check(s, basis_sections(t)).ok());
        CHECK(dorfman(s, gen(t, "th1"), gen(t, "xi1")).is_zero());
    }

    SECTION("the pairing-derivative identity for u = v") {
        auto t = standard_table(2, 2);
        Structure s = Structure::from_mu(tangent_mu(t));
        Rng rng(8);
        for (int iter = 0; iter < 10; ++iter) {
            Polynomial u = random_section(rng, t);
            Polynomial x = random_section(rng, t);
            Polynomial lhs = double_anchor(s, x, pairing(u, u));
            CHECK(lhs == pairing(x, Rat(2) * dorfman(s, u, u)));
        }
    }
}

TEST_CASE("dirac graph checks") {
    SECTION("constant symplectic bivector on R^2 is Dirac") {
        auto t = standard_table(2, 2);
        Structure s = Structure::from_mu(tangent_mu(t));
        DiracReport rep =
            dirac_graph_check(s, TwistFunction::bivector(gen(t, "th1") * gen(t, "th2")));
        CHECK(rep.isotropic);
        CHECK(rep.closed);
        CHECK(rep.dirac);
        CHECK(rep.residual_zero);
    }

    SECTION("Heisenberg Lie-Poisson bivector is Dirac") {
        auto t = standard_table(3, 3);
        Structure s = Structure::from_mu(tangent_mu(t));
        DiracReport rep = dirac_graph_check(
            s, TwistFunction::bivector(gen(t, "x3") * gen(t, "th1") * gen(t, "th2")));
        CHECK(rep.dirac);
        CHECK(rep.residual_zero);
    }

    SECTION("the non-Jacobi witness is not Dirac") {
        auto t = standard_table(3, 3);
        Structure s = Structure::from_mu(tangent_mu(t));
        Polynomial body = gen(t, "x3") * gen(t, "th1") * gen(t, "th2") +
                          gen(t, "x2") * gen(t, "th2") * gen(t, "th3");
        DiracReport rep = dirac_graph_check(s, TwistFunction::bivector(body));
        CHECK(rep.isotropic);
        CHECK_FALSE(rep.closed);
        CHECK_FALSE(rep.dirac);
        CHECK_FALSE(rep.residual_zero);
    }

    SECTION("zero 2-form: graph is V, Dirac iff psi vanishes") {
        auto t = standard_table(3, 3);
        Polynomial mu = tangent_mu(t);
        Structure s0 = Structure::from_mu(mu);
        CHECK(dirac_graph_check(s0, TwistFunction::two_form(Polynomial::zero(t))).dirac);

        Polynomial psi = gen(t, "xi1") * gen(t, "xi2") * gen(t, "xi3");
        Structure s1(Polynomial::zero(t), Polynomial::zero(t), mu, psi);
        DiracReport rep = dirac_graph_check(s1, TwistFunction::two_form(Polynomial::zero(t)));
        CHECK_FALSE(rep.dirac);
    }

    SECTION("2-form graphs and the residual verdict agree") {
        auto t = standard_table(2, 2);
        Structure s = Structure::from_mu(tangent_mu(t));
        Rng rng(9);
        for (int iter = 0; iter < 10; ++iter) {
            Polynomial body = testsupport::random_homogeneous(rng, t, Bidegree{0, 2}, 2);
            DiracReport rep = dirac_graph_check(s, TwistFunction::two_form(body));
            CHECK(rep.dirac == rep.residual_zero);
        }
    }
}

TEST_CASE("exp conjugation intertwines the brackets") {
    auto t = standard_table(2, 2);
    Structure s = Structure::from_mu(tangent_mu(t));
    Rng rng(10);
    for (int iter = 0; iter < 12; ++iter) {
        Polynomial body = iter % 2 == 0
                              ? testsupport::random_homogeneous(rng, t, Bidegree{2, 0}, 2)
                              : testsupport::random_homogeneous(rng, t, Bidegree{0, 2}, 2);
        Polynomial u = random_section(rng, t);
        Polynomial v = random_section(rng, t);
        // [e^t u, e^t v]_S = e^t([u,v]_{e^{-t}S}); both sides computed without
        // assuming anything about t
        Polynomial lhs = derived_bracket(s.total(), exp_adjoint(body, u), exp_adjoint(body, v));
        Polynomial twisted_total = exp_adjoint(-body, s.total());
        Polynomial rhs = exp_adjoint(body, derived_bracket(twisted_total, u, v));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("projection morphism") {
    SECTION("constant 2-form on R^2: V-components match the mu_tau bracket") {
        auto t = standard_table(2, 2);
        Structure s = Structure::from_mu(tangent_mu(t));
        TwistFunction tau = TwistFunction::two_form(gen(t, "xi1") * gen(t, "xi2"));
        REQUIRE(presymplectic_residual(s, tau).is_zero());
        Rng rng(11);
        std::vector<std::pair<Polynomial, Polynomial>> pairs;
        for (int i = 0; i < 6; ++i)
            pairs.push_back({testsupport::random_homogeneous(rng, t, Bidegree{1, 0}, 2),
                             testsupport::random_homogeneous(rng, t, Bidegree{1, 0}, 2)});
        CHECK(projection_morphism_check(s, tau, pairs).ok());
    }

    SECTION("Poisson bivector: V*-components match the gamma_sigma bracket") {
        auto t = standard_table(3, 3);
        Structure s = Structure::from_mu(tangent_mu(t));
        TwistFunction sigma =
            TwistFunction::bivector(gen(t, "x3") * gen(t, "th1") * gen(t, "th2"));
        REQUIRE(poisson_residual(s, sigma).is_zero());
        Rng rng(12);
        std::vector<std::pair<Polynomial, Polynomial>> pairs;
        for (int i = 0; i < 6; ++i)
            pairs.push_back({testsupport::random_homogeneous(rng, t, Bidegree{0, 1}, 2),
                             testsupport::random_homogeneous(rng, t, Bidegree{0, 1}, 2)});
        CHECK(projection_morphism_check(s, sigma, pairs).ok());
    }

    SECTION("zero twist: tautological match") {
        auto t = standard_table(2, 2);
        Structure s = Structure::from_mu(tangent_mu(t));
        TwistFunction tau = TwistFunction::two_form(Polynomial::zero(t));
        std::vector<std::pair<Polynomial, Polynomial>> pairs{
            {gen(t, "th1"), gen(t, "x1") * gen(t, "th2")}};
        CHECK(projection_morphism_check(s, tau, pairs).ok());
    }

    SECTION("non-pre-symplectic twists are rejected") {
        auto t = standard_table(3, 3);
        Polynomial mu = tangent_mu(t);
        Polynomial psi = gen(t, "xi1") * gen(t, "xi2") * gen(t, "xi3");
        Structure s(Polynomial::zero(t), Polynomial::zero(t), mu, psi);
        CHECK_THROWS_AS(
            projection_morphism_check(s, TwistFunction::two_form(Polynomial::zero(t)), {}),
            std::invalid_argument);
    }
}
