#pragma once

#include <string>
#include <vector>

#include "bigbracket/twisting.hpp"

namespace bigbracket {

namespace detail {

/// Rational inverse by Gauss-Jordan elimination; throws on a singular input.
inline std::vector<std::vector<Rat>> invert_matrix(std::vector<std::vector<Rat>> m) {
    std::size_t n = m.size();
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) throw std::invalid_argument("singular matrix");
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        Rat d = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace detail

/// A non-degenerate bivector with its inverse 2-form. The inverse is defined
/// by the equation {sigma, tau} = Id_V (coordinate-free and convention-safe),
/// which for the coefficient matrices reads tau = -sigma^{-1}.
struct InversePair {
    TwistFunction sigma;
    TwistFunction tau;
    std::vector<std::vector<Rat>> sigma_matrix;  // sigma^{ab} over the odd conjugate block
    std::vector<std::vector<Rat>> tau_matrix;    // tau_{ab} over the odd fiber block
};

/// Inverts a constant-coefficient bivector. Only constant coefficients are
/// supported: inverses of x-dependent matrices leave the polynomial ring.
inline InversePair invert_bivector(const TwistFunction& sigma) {
    if (sigma.kind != TwistKind::bivector)
        throw std::invalid_argument("invert_bivector expects a bivector");
    const TablePtr& t = sigma.body.table();
    std::vector<GenId> conj = t->ids_of_kind(GenKind::fiber_conj);
    std::size_t n = conj.size();
    std::vector<std::vector<Rat>> sm(n, std::vector<Rat>(n, Rat(0)));
    for (const auto& [m, c] : sigma.body.terms()) {
        if (!m.even.empty())
            throw std::invalid_argument("invert_bivector supports constant coefficients only");
        // body = sum_{a<b} sigma^{ab} (conj_a)(conj_b) with sigma antisymmetric
        std::size_t a = n, b = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (conj[i] == m.odd[0]) a = i;
            if (conj[i] == m.odd[1]) b = i;
        }
        sm[a][b] = c;
        sm[b][a] = -c;
    }
    auto inv = detail::invert_matrix(sm);
    std::vector<std::vector<Rat>> tm(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) tm[a][b] = -inv[a][b];
    Polynomial tau_body = Polynomial::zero(t);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (tm[a][b] != 0)
                tau_body += Polynomial::monomial(
                    t, tm[a][b], {t->conjugate(conj[a]), t->conjugate(conj[b])});
    InversePair pair{sigma, TwistFunction::two_form(tau_body), std::move(sm), std::move(tm)};
    if (!(big_bracket(pair.sigma.body, pair.tau.body) == identity_section(t)))
        throw std::logic_error("inversion failed the Id_V check (internal error)");
    return pair;
}

/// Dual direction: the bivector inverse of a constant non-degenerate 2-form,
/// again defined by {sigma, tau} = Id_V. Double inversion is the identity.
inline InversePair invert_two_form(const TwistFunction& tau) {
    if (tau.kind != TwistKind::two_form)
        throw std::invalid_argument("invert_two_form expects a 2-form");
    const TablePtr& t = tau.body.table();
    std::vector<GenId> fib = t->ids_of_kind(GenKind::fiber);
    std::size_t n = fib.size();
    std::vector<std::vector<Rat>> tm(n, std::vector<Rat>(n, Rat(0)));
    for (const auto& [m, c] : tau.body.terms()) {
        if (!m.even.empty())
            throw std::invalid_argument("invert_two_form supports constant coefficients only");
        std::size_t a = n, b = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (fib[i] == m.odd[0]) a = i;
            if (fib[i] == m.odd[1]) b = i;
        }
        tm[a][b] = c;
        tm[b][a] = -c;
    }
    auto inv = detail::invert_matrix(tm);
    std::vector<std::vector<Rat>> sm(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) sm[a][b] = -inv[a][b];
    Polynomial sigma_body = Polynomial::zero(t);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (sm[a][b] != 0)
                sigma_body += Polynomial::monomial(
                    t, sm[a][b], {t->conjugate(fib[a]), t->conjugate(fib[b])});
    InversePair pair{TwistFunction::bivector(sigma_body), tau, std::move(sm), std::move(tm)};
    if (!(big_bracket(pair.sigma.body, pair.tau.body) == identity_section(t)))
        throw std::logic_error("inversion failed the Id_V check (internal error)");
    return pair;
}

/// {{sigma,tau}, S} - (q-p) S for homogeneous S of shifted bidegree (p,q);
/// must vanish for every inverse pair.
inline Polynomial scaling_identity_check(const InversePair& pair, const Polynomial& s) {
    if (s.is_zero()) return s;
    ShiftedBidegree sb = shifted(s.bidegree());  // throws if not homogeneous
    Polynomial id = big_bracket(pair.sigma.body, pair.tau.body);
    return big_bracket(id, s) - Rat(sb.q - sb.p) * s;
}

struct IdentityCheck {
    std::string label;
    Polynomial defect;
    bool holds() const { return defect.is_zero(); }
};

/// The six exact identities behind the non-degenerate Poisson <-> symplectic
/// correspondence, with the explicit integer coefficients -3, 12, -36, 6, 6:
///   {sigma,tau} = Id_V
///   {{{{mu,tau},s},s},s} = -3 {{mu,s},s}
///   {{{{{gamma,tau},tau},s},s},s} = 12 {gamma,s}
///   {{{{{{phi,tau},tau},tau},s},s},s} = -36 phi
///   {{{psi_tau,s},s},s} = 6 phi_{-s}
///   {{{phi_sigma,tau},tau},tau} = 6 psi_{-tau}
inline std::vector<IdentityCheck> proof_identities_check(const Polynomial& mu,
                                                         const Polynomial& gamma,
                                                         const Polynomial& phi,
                                                         const Polynomial& psi,
                                                         const InversePair& pair) {
    const Polynomial& sb = pair.sigma.body;
    const Polynomial& tb = pair.tau.body;
    const TablePtr& t = sb.table();
    std::vector<IdentityCheck> out;

    out.push_back({"{sigma,tau} = Id_V", big_bracket(sb, tb) - identity_section(t)});

    Polynomial lhs3 = ad_power(big_bracket(mu, tb), sb, 3);
    out.push_back({"mu: coefficient -3", lhs3 + Rat(3) * ad_power(mu, sb, 2)});

    Polynomial lhs12 = ad_power(ad_power(gamma, tb, 2), sb, 3);
    out.push_back({"gamma: coefficient 12", lhs12 - Rat(12) * big_bracket(gamma, sb)});

    Polynomial lhs36 = ad_power(ad_power(phi, tb, 3), sb, 3);
    out.push_back({"phi: coefficient -36", lhs36 + Rat(36) * phi});

    Structure s(phi, gamma, mu, psi);
    Polynomial psi_tau = presymplectic_residual(s, pair.tau);
    Polynomial phi_msigma = poisson_residual(s, pair.sigma.negated());
    out.push_back({"psi_tau: coefficient 6", ad_power(psi_tau, sb, 3) - Rat(6) * phi_msigma});

    Polynomial phi_sigma = poisson_residual(s, pair.sigma);
    Polynomial psi_mtau = presymplectic_residual(s, pair.tau.negated());
    out.push_back({"phi_sigma: coefficient 6", ad_power(phi_sigma, tb, 3) - Rat(6) * psi_mtau});

    return out;
}

/// Theorem: sigma is a Poisson function iff -tau (its inverse, negated) is a
/// symplectic function, for non-degenerate constant sigma.
struct CorrespondenceVerdict {
    Polynomial poisson_residual;
    Polynomial symplectic_residual;  // pre-symplectic residual of -tau
    bool poisson = false;
    bool symplectic = false;
    bool equivalent = false;  // verdicts agree, as the theorem demands
};

inline CorrespondenceVerdict symplectic_correspondence(const Structure& s,
                                                       const TwistFunction& sigma) {
    InversePair pair = invert_bivector(sigma);
    CorrespondenceVerdict v;
    v.poisson_residual = poisson_residual(s, sigma);
    v.symplectic_residual = presymplectic_residual(s, pair.tau.negated());
    v.poisson = v.poisson_residual.is_zero();
    v.symplectic = v.symplectic_residual.is_zero();
    v.equivalent = v.poisson == v.symplectic;
    return v;
}

}  // namespace bigbracket
