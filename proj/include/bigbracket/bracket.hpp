#pragma once

#include <stdexcept>
#include <vector>

#include "bigbracket/polynomial.hpp"

namespace bigbracket {

namespace detail {

/// A monomial flattened to its ordered generator factor sequence (even
/// factors expanded by exponent, then odd factors in canonical order). The
/// monomial equals the literal ordered product of these generators.
inline std::vector<GenId> factor_sequence(const Monomial& m) {
    std::vector<GenId> f;
    f.reserve(static_cast<std::size_t>(m.factor_count()));
    for (auto [g, e] : m.even)
        for (int i = 0; i < e; ++i) f.push_back(g);
    for (GenId g : m.odd) f.push_back(g);
    return f;
}

/// Suffix of a canonical factor sequence, rebuilt as a coefficient-1 monomial.
/// The suffix order is already canonical, so no sign is involved.
inline Monomial suffix_monomial(const GeneratorTable& t, const std::vector<GenId>& f,
                                std::size_t from) {
    Monomial m;
    for (std::size_t i = from; i < f.size(); ++i) {
        GenId g = f[i];
        if (t.odd(g)) m.odd.push_back(g);
        else if (!m.even.empty() && m.even.back().first == g) ++m.even.back().second;
        else m.even.push_back({g, 1});
    }
    return m;
}

inline int suffix_parity(const GeneratorTable& t, const std::vector<GenId>& f,
                         std::size_t from) {
    int p = 0;
    for (std::size_t i = from; i < f.size(); ++i) p ^= t.odd(f[i]) ? 1 : 0;
    return p;
}

/// {g, prod f2[j..]} reduced by the left Leibniz rule
/// {u, vw} = {u,v} w + (-1)^{|u||v|} v {u,w}.
inline void bracket_gen_suffix(const TablePtr& tab, GenId g, const std::vector<GenId>& f2,
                               std::size_t j, const Rat& coeff, Polynomial& acc) {
    if (j >= f2.size()) return;  // bracket with a constant vanishes
    const GeneratorTable& t = *tab;
    GenId v = f2[j];
    if (j + 1 == f2.size()) {
        int pv = t.pair_bracket(g, v);
        if (pv != 0) acc.add_term(Monomial{}, coeff * pv);
        return;
    }
    int pv = t.pair_bracket(g, v);
    if (pv != 0) acc.add_term(suffix_monomial(t, f2, j + 1), coeff * pv);
    int sign = (t.odd(g) && t.odd(v)) ? -1 : 1;
    Polynomial rest = Polynomial::zero(tab);
    bracket_gen_suffix(tab, g, f2, j + 1, coeff * sign, rest);
    if (!rest.is_zero()) {
        Polynomial vp = Polynomial::generator(tab, v);
        acc += vp * rest;
    }
}

/// {prod f1[i..], m2} reduced by the right Leibniz rule
/// {uv, w} = u {v,w} + (-1)^{|v||w|} {u,w} v.
inline void bracket_suffix(const TablePtr& tab, const std::vector<GenId>& f1, std::size_t i,
                           const std::vector<GenId>& f2, int parity2, const Rat& coeff,
                           Polynomial& acc) {
    if (i >= f1.size()) return;
    const GeneratorTable& t = *tab;
    GenId u = f1[i];
    if (i + 1 == f1.size()) {
        bracket_gen_suffix(tab, u, f2, 0, coeff, acc);
        return;
    }
    Polynomial inner = Polynomial::zero(tab);
    bracket_suffix(tab, f1, i + 1, f2, parity2, Rat(1), inner);
    if (!inner.is_zero()) acc += coeff * (Polynomial::generator(tab, u) * inner);

    Polynomial left = Polynomial::zero(tab);
    bracket_gen_suffix(tab, u, f2, 0, Rat(1), left);
    if (!left.is_zero()) {
        int sign = (suffix_parity(t, f1, i + 1) && parity2) ? -1 : 1;
        Polynomial rest = Polynomial::zero(tab);
        rest.add_term(suffix_monomial(t, f1, i + 1), Rat(1));
        acc += (coeff * sign) * (left * rest);
    }
}

}  // namespace detail

/// The big bracket: the canonical even Poisson bracket on functions on
/// T*(parity-reversed V), of shifted bidegree (0,0). Defined on generator
/// pairs by {x_i,p_j} = delta_ij = -{p_j,x_i}, {xi_a,th_b} = delta_ab =
/// {th_b,xi_a} (and likewise per extra fiber family) and extended to
/// monomials by recursive two-sided Leibniz reduction.
inline Polynomial big_bracket(const Polynomial& a, const Polynomial& b) {
    Polynomial::check_tables(a, b);
    if (!a.table() || !b.table())
        return a.table() ? Polynomial::zero(a.table())
                         : b.table() ? Polynomial::zero(b.table()) : Polynomial{};
    Polynomial acc = Polynomial::zero(a.table());
    for (const auto& [ma, ca] : a.terms()) {
        std::vector<GenId> f1 = detail::factor_sequence(ma);
        if (f1.empty()) continue;
        for (const auto& [mb, cb] : b.terms()) {
            std::vector<GenId> f2 = detail::factor_sequence(mb);
            if (f2.empty()) continue;
            detail::bracket_suffix(a.table(), f1, 0, f2, mb.parity(), ca * cb, acc);
        }
    }
    return acc;
}

/// Iterated right adjoint action {{...{a,t},t...},t}, n times.
inline Polynomial ad_power(const Polynomial& a, const Polynomial& t, int n) {
    Polynomial r = a;
    for (int i = 0; i < n; ++i) r = big_bracket(r, t);
    return r;
}

/// e^t(a) = a + {a,t} + 1/2 {{a,t},t} + ...; the series terminates because t
/// has shifted bidegree (1,-1) or (-1,1), each step strictly lowering one
/// bidegree component. The bound is checked and overrun is an internal error.
inline Polynomial exp_adjoint(const Polynomial& t, const Polynomial& a) {
    Polynomial::check_tables(a, t);
    if (a.is_zero() || t.is_zero()) return a;
    int bound = 0;
    for (const auto& [m, c] : a.terms()) {
        Bidegree b = m.bidegree(*a.table());
        bound = std::max(bound, std::max(b.k, b.l));
    }
    Polynomial sum = a;
    Polynomial term = a;
    Rat nf(1);
    for (int n = 1; !term.is_zero(); ++n) {
        if (n > bound + 1)
            throw std::logic_error("exp_adjoint series failed to terminate (internal error)");
        term = big_bracket(term, t);
        nf *= n;
        sum += Rat(1) / nf * term;
    }
    return sum;
}

/// Identity section Id_V = sum over fiber pairs of (fiber)(conjugate),
/// e.g. xi^a th_a; {Id_V, S} = (q-p) S for S of shifted bidegree (p,q).
inline Polynomial identity_section(const TablePtr& t) {
    Polynomial id = Polynomial::zero(t);
    for (GenId g = 0; g < t->size(); ++g)
        if (t->gen(g).kind == GenKind::fiber)
            id += Polynomial::generator(t, g) * Polynomial::generator(t, t->conjugate(g));
    return id;
}

/// One-time orientation audit: the sign eps with {p_i xi^i, f} = eps (d_i f) xi^i.
/// The generator relations are implemented exactly as printed in the sources
/// of this calculus; the audit measures which de Rham orientation they induce
/// and reports it. It is never silently corrected.
inline int orientation_sign() {
    static const int eps = [] {
        TablePtr t = standard_table(1, 1);
        Polynomial mu = Polynomial::generator(t, "p1") * Polynomial::generator(t, "xi1");
        Polynomial d = big_bracket(mu, Polynomial::generator(t, "x1"));
        Polynomial xi = Polynomial::generator(t, "xi1");
        if (d == xi) return 1;
        if (d == -xi) return -1;
        throw std::logic_error("orientation audit failed (internal error)");
    }();
    return eps;
}

}  // namespace bigbracket
