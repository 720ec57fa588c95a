#pragma once

#include <map>
#include <string>
#include <vector>

#include "bigbracket/twisting.hpp"

namespace bigbracket {

/// A section of the double V + V*: a value of total odd degree 1 with
/// base-polynomial coefficients and no conjugate-base dependence. The
/// V-part is linear in the odd conjugate generators, the V*-part in the odd
/// fiber generators.
inline bool is_double_section(const Polynomial& u) {
    for (const auto& [m, c] : u.terms()) {
        if (m.odd.size() != 1) return false;
        for (auto [g, e] : m.even)
            if (u.table()->gen(g).kind != GenKind::base) return false;
    }
    return true;
}

inline void require_double_section(const Polynomial& u, const char* who) {
    if (!u.is_zero() && !is_double_section(u))
        throw std::invalid_argument(std::string(who) +
                                    ": expected a section of V + V* "
                                    "(odd-linear, base coefficients only)");
}

/// Base-function coefficients of an odd-linear value, keyed by the odd
/// generator carrying each term.
inline std::map<GenId, Polynomial> odd_linear_split(const Polynomial& u) {
    std::map<GenId, Polynomial> out;
    for (const auto& [m, c] : u.terms()) {
        Monomial f;
        f.even = m.even;
        auto it = out.find(m.odd.at(0));
        if (it == out.end()) it = out.emplace(m.odd[0], Polynomial::zero(u.table())).first;
        it->second.add_term(f, c);
    }
    return out;
}

/// Component of a double section along Gamma(V) (odd conjugate generators).
inline Polynomial v_component(const Polynomial& u) {
    Polynomial out = Polynomial::zero(u.table());
    for (const auto& [m, c] : u.terms())
        if (u.table()->gen(m.odd.at(0)).kind == GenKind::fiber_conj) out.add_term(m, c);
    return out;
}

/// Component along Gamma(V*) (odd fiber generators).
inline Polynomial v_star_component(const Polynomial& u) {
    Polynomial out = Polynomial::zero(u.table());
    for (const auto& [m, c] : u.terms())
        if (u.table()->gen(m.odd.at(0)).kind == GenKind::fiber) out.add_term(m, c);
    return out;
}

/// Canonical scalar product (u,v) = {u,v}; symmetric, a base function.
inline Polynomial pairing(const Polynomial& u, const Polynomial& v) {
    require_double_section(u, "pairing");
    require_double_section(v, "pairing");
    return big_bracket(u, v);
}

/// Dorfman-Courant bracket [u,v]_S = {{u,S},v}; non-skew in general.
/// Requires a genuine structure.
inline Polynomial dorfman(const Structure& s, const Polynomial& u, const Polynomial& v) {
    require_double_section(u, "dorfman");
    require_double_section(v, "dorfman");
    if (!is_structure(s)) throw std::invalid_argument("dorfman bracket needs {S,S} = 0");
    return derived_bracket(s.total(), u, v);
}

/// Anchor of the double, a_E(u).f = {{u,S},f}.
inline Polynomial double_anchor(const Structure& s, const Polynomial& u, const Polynomial& f) {
    return derived_bracket(s.total(), u, f);
}

struct CourantViolation {
    std::string which;  // "Loday", "metric-1", "metric-2"
    std::size_t i = 0, j = 0, k = 0;
    Polynomial defect;
};

struct CourantReport {
    std::size_t triples_checked = 0;
    std::vector<CourantViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks, on every triple from the sample, the Loday identity
/// [u,[v,w]] = [[u,v],w] + [v,[u,w]] and the two metric identities
/// a_E(x).(u,v) = (x, [u,v]+[v,u]) = ([x,u],v) + (u,[x,v]).
inline CourantReport courant_axioms_check(const Structure& s,
                                          const std::vector<Polynomial>& sections) {
    CourantReport rep;
    if (!is_structure(s)) throw std::invalid_argument("courant axioms need {S,S} = 0");
    auto br = [&](const Polynomial& a, const Polynomial& b) {
        return derived_bracket(s.total(), a, b);
    };
    std::size_t n = sections.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Polynomial &u = sections[i], &v = sections[j], &w = sections[k];
                ++rep.triples_checked;
                Polynomial loday = br(u, br(v, w)) - br(br(u, v), w) - br(v, br(u, w));
                if (!loday.is_zero()) rep.violations.push_back({"Loday", i, j, k, loday});
                Polynomial anchor = double_anchor(s, u, pairing(v, w));
                Polynomial m1 = anchor - pairing(u, br(v, w) + br(w, v));
                if (!m1.is_zero()) rep.violations.push_back({"metric-1", i, j, k, m1});
                Polynomial m2 = anchor - pairing(br(u, v), w) - pairing(v, br(u, w));
                if (!m2.is_zero()) rep.violations.push_back({"metric-2", i, j, k, m2});
            }
    return rep;
}

/// Basis sections of the double: every odd fiber and conjugate generator.
inline std::vector<Polynomial> basis_sections(const TablePtr& t) {
    std::vector<Polynomial> out;
    for (GenId g = 0; g < t->size(); ++g)
        if (t->odd(g)) out.push_back(Polynomial::generator(t, g));
    return out;
}

struct DiracReport {
    bool isotropic = false;
    bool closed = false;
    bool dirac = false;
    Polynomial residual;      // the matching Maurer-Cartan residual
    bool residual_zero = false;
    std::vector<Polynomial> graph_basis;
    std::vector<Polynomial> closure_defects;  // nonzero remainders, if any
};

/// Graph(t) = e^t V (2-form) or e^t V* (bivector); tests isotropy and closure
/// of the graph under [.,.]_S, and checks the verdict against the vanishing
/// of the corresponding Maurer-Cartan residual.
inline DiracReport dirac_graph_check(const Structure& s, const TwistFunction& t) {
    const TablePtr& tab = t.body.table();
    if (!is_structure(s)) throw std::invalid_argument("dirac check needs {S,S} = 0");
    const Polynomial total = s.total();
    DiracReport rep;
    GenKind span_kind = t.kind == TwistKind::bivector ? GenKind::fiber : GenKind::fiber_conj;
    // Membership of w in the graph: match w's coefficients along the spanning
    // block, subtract the corresponding combination of graph basis sections,
    // and demand zero remainder.
    std::vector<GenId> span = tab->ids_of_kind(span_kind);
    for (GenId g : span) {
        Polynomial gen = Polynomial::generator(tab, g);
        rep.graph_basis.push_back(gen + big_bracket(gen, t.body));
    }
    auto in_graph = [&](const Polynomial& w) {
        Polynomial rem = w;
        auto parts = odd_linear_split(w);
        for (std::size_t i = 0; i < span.size(); ++i) {
            auto it = parts.find(span[i]);
            if (it == parts.end()) continue;
            rem -= it->second * rep.graph_basis[i];
        }
        return rem;
    };
    rep.isotropic = true;
    rep.closed = true;
    for (std::size_t i = 0; i < rep.graph_basis.size(); ++i)
        for (std::size_t j = 0; j < rep.graph_basis.size(); ++j) {
            if (!pairing(rep.graph_basis[i], rep.graph_basis[j]).is_zero())
                rep.isotropic = false;
            Polynomial br = derived_bracket(total, rep.graph_basis[i], rep.graph_basis[j]);
            Polynomial defect = in_graph(br);
            if (!defect.is_zero()) {
                rep.closed = false;
                rep.closure_defects.push_back(defect);
            }
        }
    rep.dirac = rep.isotropic && rep.closed;
    rep.residual = t.kind == TwistKind::bivector ? poisson_residual(s, t)
                                                 : presymplectic_residual(s, t);
    rep.residual_zero = rep.residual.is_zero();
    if (rep.dirac != rep.residual_zero)
        throw std::logic_error("graph verdict disagrees with the residual (internal error)");
    return rep;
}

struct ProjectionReport {
    std::size_t pairs_checked = 0;
    std::vector<Polynomial> defects;
    bool ok() const { return defects.empty(); }
};

/// For a pre-symplectic tau: the V-component of [e^tau X, e^tau Y]_S equals
/// the derived bracket for mu_tau (and dually for a Poisson sigma and the
/// V*-component with gamma_sigma), exactly.
inline ProjectionReport projection_morphism_check(
    const Structure& s, const TwistFunction& t,
    const std::vector<std::pair<Polynomial, Polynomial>>& pairs) {
    ProjectionReport rep;
    Structure tw = twist_components(s, t);
    bool two_form = t.kind == TwistKind::two_form;
    if (two_form) {
        if (!presymplectic_residual(s, t).is_zero())
            throw std::invalid_argument("tau is not pre-symplectic for this structure");
    } else {
        if (!poisson_residual(s, t).is_zero())
            throw std::invalid_argument("sigma is not Poisson for this structure");
    }
    if (!is_structure(s)) throw std::invalid_argument("projection check needs {S,S} = 0");
    const Polynomial total = s.total();
    const Polynomial& gen = two_form ? tw.mu() : tw.gamma();
    for (const auto& [a, b] : pairs) {
        ++rep.pairs_checked;
        Polynomial ga = exp_adjoint(t.body, a);
        Polynomial gb = exp_adjoint(t.body, b);
        Polynomial lhs = derived_bracket(total, ga, gb);
        Polynomial proj = two_form ? v_component(lhs) : v_star_component(lhs);
        Polynomial rhs = derived_bracket(gen, a, b);
        Polynomial defect = proj - rhs;
        if (!defect.is_zero()) rep.defects.push_back(defect);
    }
    return rep;
}

}  // namespace bigbracket
