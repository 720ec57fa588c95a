#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bigbracket/structure.hpp"

namespace bigbracket {

enum class TwistKind { bivector, two_form };

/// A twisting function: a bivector sigma = 1/2 sigma^{ab} th_a th_b of
/// shifted bidegree (1,-1), or a 2-form tau = 1/2 tau_{ab} xi^a xi^b of
/// shifted bidegree (-1,1). Coefficients may depend on the base.
struct TwistFunction {
    TwistKind kind;
    Polynomial body;

    TwistFunction(TwistKind k, Polynomial b) : kind(k), body(std::move(b)) {
        ShiftedBidegree want = k == TwistKind::bivector ? ShiftedBidegree{1, -1}
                                                        : ShiftedBidegree{-1, 1};
        if (!body.homogeneous_of(want.unshifted()))
            throw std::invalid_argument(k == TwistKind::bivector
                                            ? "bivector body must be homogeneous of shifted bidegree (1,-1)"
                                            : "2-form body must be homogeneous of shifted bidegree (-1,1)");
    }

    static TwistFunction bivector(Polynomial b) { return {TwistKind::bivector, std::move(b)}; }
    static TwistFunction two_form(Polynomial b) { return {TwistKind::two_form, std::move(b)}; }

    TwistFunction negated() const { return {kind, -body}; }
};

/// The twisting of S by t is e^{-t} S. Components by the closed formulas:
/// bivector case  phi_s  = phi - {gamma,s} + 1/2{{mu,s},s} - 1/6{{{psi,s},s},s}
///                gamma_s = gamma - {mu,s} + 1/2{{psi,s},s}
///                mu_s    = mu - {psi,s},        psi_s = psi
/// and dually for a 2-form. Equals the bidegree split of exp_adjoint(-t, S).
inline Structure twist_components(const Structure& s, const TwistFunction& t) {
    const Polynomial &phi = s.phi(), &gamma = s.gamma(), &mu = s.mu(), &psi = s.psi();
    const Polynomial& b = t.body;
    Rat half(1, 2), sixth(1, 6);
    if (t.kind == TwistKind::bivector) {
        Polynomial phi_t = phi - big_bracket(gamma, b) + half * ad_power(mu, b, 2) -
                           sixth * ad_power(psi, b, 3);
        Polynomial gamma_t = gamma - big_bracket(mu, b) + half * ad_power(psi, b, 2);
        Polynomial mu_t = mu - big_bracket(psi, b);
        return Structure(phi_t, gamma_t, mu_t, psi);
    }
    Polynomial gamma_t = gamma - big_bracket(phi, b);
    Polynomial mu_t = mu - big_bracket(gamma, b) + half * ad_power(phi, b, 2);
    Polynomial psi_t = psi - big_bracket(mu, b) + half * ad_power(gamma, b, 2) -
                       sixth * ad_power(phi, b, 3);
    return Structure(phi, gamma_t, mu_t, psi_t);
}

/// Generalized twisted Maurer-Cartan residual for a bivector: the (2,-1)
/// component of e^{-sigma} S. sigma is a Poisson function iff this vanishes.
inline Polynomial poisson_residual(const Structure& s, const TwistFunction& sigma) {
    if (sigma.kind != TwistKind::bivector)
        throw std::invalid_argument("poisson_residual expects a bivector");
    return twist_components(s, sigma).phi();
}

/// Dual residual for a 2-form: the (-1,2) component of e^{-tau} S. tau is a
/// pre-symplectic function iff this vanishes.
inline Polynomial presymplectic_residual(const Structure& s, const TwistFunction& tau) {
    if (tau.kind != TwistKind::two_form)
        throw std::invalid_argument("presymplectic_residual expects a 2-form");
    return twist_components(s, tau).psi();
}

/// One named special case of the Maurer-Cartan equation.
struct SpecialCaseReport {
    std::string label;
    bool hypotheses_ok = false;
    std::string violated;        // which component breaks the hypotheses
    Polynomial reduced;          // the named reduced condition
    Polynomial general;          // the general residual
    Rat relation;                // reduced == relation * general (exact), 0 if unrelated
    Polynomial lhs, rhs;         // the two sides for two-sided conditions
    bool two_sided = false;

    bool holds() const { return reduced.is_zero(); }
};

enum class SpecialCase {
    drinfeld_twist,      // psi = 0:  1/2[sigma,sigma]_mu + d_gamma sigma - phi = 0
    cybe,                // phi = gamma = psi = 0:  [sigma,sigma]_mu = 0
    generalized_cybe,    // S = mu:  {mu, {{mu,sigma},sigma}} = 0
    twisted_poisson,     // gamma = phi = 0:  1/2[sigma,sigma]_mu = (w^3 sigma#) psi
    presymplectic,       // gamma = phi = psi = 0:  {mu,tau} = 0
    twisted_presymplectic,  // gamma = phi = 0:  psi - {mu,tau} = 0
};

/// Evaluates the named reduced condition and relates it exactly to the
/// general residual under the case hypotheses. When the hypotheses fail, the
/// report names the offending component instead.
inline SpecialCaseReport special_case_residual(const Structure& s, const TwistFunction& t,
                                               SpecialCase which) {
    SpecialCaseReport r;
    const Polynomial &phi = s.phi(), &gamma = s.gamma(), &mu = s.mu(), &psi = s.psi();
    auto violated = [&](std::initializer_list<std::pair<const Polynomial*, const char*>> req) {
        std::string v;
        for (auto [p, name] : req)
            if (!p->is_zero()) v += (v.empty() ? "" : ", ") + std::string(name);
        return v;
    };
    Rat half(1, 2), third(1, 3), sixth(1, 6);
    const Polynomial& b = t.body;
    switch (which) {
        case SpecialCase::drinfeld_twist: {
            r.label = "Drinfeld twist";
            if (t.kind != TwistKind::bivector) throw std::invalid_argument("needs a bivector");
            r.violated = violated({{&psi, "psi"}});
            r.hypotheses_ok = r.violated.empty();
            if (!r.hypotheses_ok) return r;
            // 1/2 [sigma,sigma]_mu + d_gamma sigma - phi, with
            // [a,b]_mu = {{a,mu},b} and d_gamma = {gamma, .}.
            r.reduced = half * derived_bracket(mu, b, b) + big_bracket(gamma, b) - phi;
            r.general = poisson_residual(s, t);
            r.relation = Rat(-1);
            break;
        }
        case SpecialCase::cybe: {
            r.label = "CYBE";
            if (t.kind != TwistKind::bivector) throw std::invalid_argument("needs a bivector");
            r.violated = violated({{&phi, "phi"}, {&gamma, "gamma"}, {&psi, "psi"}});
            r.hypotheses_ok = r.violated.empty();
            if (!r.hypotheses_ok) return r;
            r.reduced = derived_bracket(mu, b, b);  // [sigma,sigma]_mu
            r.general = poisson_residual(s, t);
            r.relation = Rat(-2);
            break;
        }
        case SpecialCase::generalized_cybe: {
            r.label = "generalized CYBE";
            if (t.kind != TwistKind::bivector) throw std::invalid_argument("needs a bivector");
            r.violated = violated({{&phi, "phi"}, {&gamma, "gamma"}, {&psi, "psi"}});
            r.hypotheses_ok = r.violated.empty();
            if (!r.hypotheses_ok) return r;
            // ad-invariance of [sigma,sigma]_mu; not equivalent to the MC
            // equation, reported standalone.
            r.reduced = big_bracket(mu, ad_power(mu, b, 2));
            r.general = Polynomial::zero(b.table());
            r.relation = Rat(0);
            break;
        }
        case SpecialCase::twisted_poisson: {
            r.label = "twisted Poisson";
            if (t.kind != TwistKind::bivector) throw std::invalid_argument("needs a bivector");
            r.violated = violated({{&phi, "phi"}, {&gamma, "gamma"}});
            r.hypotheses_ok = r.violated.empty();
            if (!r.hypotheses_ok) return r;
            r.two_sided = true;
            r.lhs = half * derived_bracket(mu, b, b);   // 1/2 [sigma,sigma]_mu
            r.rhs = -sixth * ad_power(psi, b, 3);       // (w^3 sigma#) psi
            r.reduced = r.lhs - r.rhs;
            r.general = poisson_residual(s, t);
            r.relation = Rat(-1);
            break;
        }
        case SpecialCase::presymplectic: {
            r.label = "pre-symplectic";
            if (t.kind != TwistKind::two_form) throw std::invalid_argument("needs a 2-form");
            r.violated = violated({{&phi, "phi"}, {&gamma, "gamma"}, {&psi, "psi"}});
            r.hypotheses_ok = r.violated.empty();
            if (!r.hypotheses_ok) return r;
            r.reduced = big_bracket(mu, b);  // d_mu tau
            r.general = presymplectic_residual(s, t);
            r.relation = Rat(-1);
            break;
        }
        case SpecialCase::twisted_presymplectic: {
            r.label = "twisted pre-symplectic";
            if (t.kind != TwistKind::two_form) throw std::invalid_argument("needs a 2-form");
            r.violated = violated({{&phi, "phi"}, {&gamma, "gamma"}});
            r.hypotheses_ok = r.violated.empty();
            if (!r.hypotheses_ok) return r;
            r.reduced = psi - big_bracket(mu, b);  // psi - d_mu tau
            r.general = presymplectic_residual(s, t);
            r.relation = Rat(1);
            break;
        }
    }
    if (r.relation != 0 && !(r.reduced == r.relation * r.general))
        throw std::logic_error("special case residual does not match the general residual (internal error)");
    return r;
}

/// All special cases whose hypotheses the pair (S, t) satisfies.
inline std::vector<SpecialCaseReport> applicable_special_cases(const Structure& s,
                                                               const TwistFunction& t) {
    std::vector<SpecialCase> order =
        t.kind == TwistKind::bivector
            ? std::vector<SpecialCase>{SpecialCase::drinfeld_twist, SpecialCase::cybe,
                                       SpecialCase::generalized_cybe,
                                       SpecialCase::twisted_poisson}
            : std::vector<SpecialCase>{SpecialCase::presymplectic,
                                       SpecialCase::twisted_presymplectic};
    std::vector<SpecialCaseReport> out;
    for (SpecialCase c : order) {
        SpecialCaseReport r = special_case_residual(s, t, c);
        if (r.hypotheses_ok) out.push_back(std::move(r));
    }
    return out;
}

/// The two derivations attached to a Poisson function sigma:
/// d_gamma = {gamma_sigma, .} on multivectors (squares to zero) and
/// d_mu = {mu_sigma, .} on forms, whose square is controlled by psi.
struct TwistedDifferentials {
    Polynomial gamma_sigma;
    Polynomial mu_sigma;
    Polynomial psi;

    Polynomial d_gamma(const Polynomial& a) const { return big_bracket(gamma_sigma, a); }
    Polynomial d_mu(const Polynomial& a) const { return big_bracket(mu_sigma, a); }

    /// Exact form of the square of d_mu: (d_mu)^2 a = 1/2 {{mu_s,mu_s}, a}
    /// = -{{psi, gamma_s}, a}; the bracket with psi measures the Jacobi defect.
    Polynomial d_mu_square_expected(const Polynomial& a) const {
        return -derived_bracket(gamma_sigma, psi, a);
    }
};

inline TwistedDifferentials twisted_differential_ops(const Structure& s,
                                                     const TwistFunction& sigma) {
    Polynomial residual = poisson_residual(s, sigma);
    if (!residual.is_zero())
        throw std::invalid_argument("sigma is not a Poisson function for this structure");
    Structure tw = twist_components(s, sigma);
    return {tw.gamma(), tw.mu(), tw.psi()};
}

}  // namespace bigbracket
