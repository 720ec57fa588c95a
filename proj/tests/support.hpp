#pragma once

// Shared test helpers: deterministic random inputs and independent oracles.
// Everything here is computed without the engine's bracket recursion so the
// oracle expectations stay independent of the code under test.

#include <random>
#include <vector>

#include "bigbracket/bigbracket.hpp"

namespace testsupport {

using namespace bigbracket;

using Rng = std::mt19937_64;

inline Rat random_coeff(Rng& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 3);
    int n = num(rng);
    if (n == 0) n = 1;
    Rat q(n, den(rng));
    q.canonicalize();
    return q;
}

/// All coefficient-1 monomials of the given unshifted bidegree with x-degree
/// at most `max_x`.
inline std::vector<Monomial> monomial_basis(const TablePtr& t, Bidegree target, int max_x) {
    std::vector<GenId> xs = t->ids_of_kind(GenKind::base);
    std::vector<GenId> ps = t->ids_of_kind(GenKind::base_conj);
    std::vector<GenId> conj = t->ids_of_kind(GenKind::fiber_conj);
    std::vector<GenId> fib = t->ids_of_kind(GenKind::fiber);

    std::vector<Monomial> out;
    int max_p = std::min(target.k, target.l);
    for (int np = 0; np <= max_p; ++np) {
        int nconj = target.k - np;  // odd (1,0) factors
        int nfib = target.l - np;   // odd (0,1) factors
        if (nconj < 0 || nfib < 0) continue;
        if (nconj > static_cast<int>(conj.size()) || nfib > static_cast<int>(fib.size()))
            continue;
        auto subsets = [](const std::vector<GenId>& pool, int k) {
            std::vector<std::vector<GenId>> res;
            std::vector<GenId> cur;
            auto rec = [&](auto&& self, std::size_t from, int need) -> void {
                if (need == 0) {
                    res.push_back(cur);
                    return;
                }
                if (from >= pool.size() || pool.size() - from < static_cast<std::size_t>(need))
                    return;
                cur.push_back(pool[from]);
                self(self, from + 1, need - 1);
                cur.pop_back();
                self(self, from + 1, need);
            };
            rec(rec, 0, k);
            return res;
        };
        auto distributions = [](std::size_t slots, int total, bool exact) {
            std::vector<std::vector<int>> res;
            std::vector<int> cur(slots, 0);
            auto rec = [&](auto&& self, std::size_t i, int left) -> void {
                if (i == slots) {
                    if (!exact || left == 0) res.push_back(cur);
                    return;
                }
                for (int e = 0; e <= left; ++e) {
                    cur[i] = e;
                    self(self, i + 1, left - e);
                }
                cur[i] = 0;
            };
            rec(rec, 0, total);
            return res;
        };
        std::vector<std::vector<GenId>> conj_subsets = subsets(conj, nconj);
        std::vector<std::vector<GenId>> fib_subsets = subsets(fib, nfib);
        std::vector<std::vector<int>> p_exps = distributions(ps.size(), np, true);
        std::vector<std::vector<int>> x_exps = distributions(xs.size(), max_x, false);
        for (const auto& cs : conj_subsets)
            for (const auto& fs : fib_subsets)
                for (const auto& pe : p_exps)
                    for (const auto& xe : x_exps) {
                        Monomial m;
                        for (std::size_t i = 0; i < xe.size(); ++i)
                            if (xe[i] > 0) m.even.push_back({xs[i], xe[i]});
                        for (std::size_t i = 0; i < pe.size(); ++i)
                            if (pe[i] > 0) m.even.push_back({ps[i], pe[i]});
                        std::sort(m.even.begin(), m.even.end());
                        std::vector<GenId> odd;
                        odd.insert(odd.end(), fs.begin(), fs.end());
                        odd.insert(odd.end(), cs.begin(), cs.end());
                        std::sort(odd.begin(), odd.end());
                        m.odd = std::move(odd);
                        out.push_back(std::move(m));
                    }
    }
    return out;
}

/// Random homogeneous polynomial of the given bidegree (possibly zero only
/// when the basis is empty).
inline Polynomial random_homogeneous(Rng& rng, const TablePtr& t, Bidegree target, int max_x,
                                     int max_terms = 3) {
    auto basis = monomial_basis(t, target, max_x);
    Polynomial p = Polynomial::zero(t);
    if (basis.empty()) return p;
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> nterms(1, max_terms);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) p.add_term(basis[pick(rng)], random_coeff(rng));
    return p;
}

/// A random bidegree with k, l within bounds and a nonempty monomial basis.
inline Bidegree random_bidegree(Rng& rng, const TablePtr& t, int max_component) {
    std::uniform_int_distribution<int> d(0, max_component);
    for (int tries = 0; tries < 64; ++tries) {
        Bidegree b{d(rng), d(rng)};
        if (!monomial_basis(t, b, 1).empty()) return b;
    }
    return {0, 0};
}

// ---------------------------------------------------------------------------
// Independent bracket oracle: the closed-form bi-derivation
//   {f,g} = sum_i (d_{x_i} f d_{p_i} g - d_{p_i} f d_{x_i} g)
//         + (-1)^{|f|+1} sum_a (d_{fib_a} f d_{conj_a} g + d_{conj_a} f d_{fib_a} g)
// with left derivatives on odd generators.
// ---------------------------------------------------------------------------

inline Polynomial left_derivative(const Polynomial& p, GenId g) {
    const TablePtr& t = p.table();
    Polynomial out = Polynomial::zero(t);
    bool odd = t->odd(g);
    for (const auto& [m, c] : p.terms()) {
        if (odd) {
            auto it = std::find(m.odd.begin(), m.odd.end(), g);
            if (it == m.odd.end()) continue;
            int before = static_cast<int>(it - m.odd.begin());
            Monomial d = m;
            d.odd.erase(d.odd.begin() + before);
            out.add_term(d, (before % 2 ? -c : c));
        } else {
            for (std::size_t i = 0; i < m.even.size(); ++i) {
                if (m.even[i].first != g) continue;
                Monomial d = m;
                int e = d.even[i].second;
                if (e == 1) d.even.erase(d.even.begin() + static_cast<long>(i));
                else d.even[i].second -= 1;
                out.add_term(d, c * e);
            }
        }
    }
    return out;
}

inline Polynomial oracle_bracket(const Polynomial& a, const Polynomial& b) {
    const TablePtr& t = a.table();
    Polynomial out = Polynomial::zero(t);
    for (const auto& [ma, ca] : a.terms()) {
        Polynomial fa = Polynomial::zero(t);
        fa.add_term(ma, ca);
        int sign = ma.parity() ? 1 : -1;  // (-1)^{|f|+1}
        Polynomial part = Polynomial::zero(t);
        for (GenId x : t->ids_of_kind(GenKind::base)) {
            GenId p = t->conjugate(x);
            part += left_derivative(fa, x) * left_derivative(b, p) -
                    left_derivative(fa, p) * left_derivative(b, x);
        }
        Polynomial odd_part = Polynomial::zero(t);
        for (GenId f : t->ids_of_kind(GenKind::fiber)) {
            GenId cjg = t->conjugate(f);
            odd_part += left_derivative(fa, f) * left_derivative(b, cjg) +
                        left_derivative(fa, cjg) * left_derivative(b, f);
        }
        out += part + Rat(sign) * odd_part;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coordinate oracles for the classical interpretations.
// ---------------------------------------------------------------------------

/// Coordinate Poisson bracket of base functions for a bivector
/// sigma = 1/2 sigma^{ij} th_i th_j:  {f,g} = sigma^{ij} d_i f d_j g.
inline Polynomial coordinate_poisson(const Polynomial& sigma_body, const Polynomial& f,
                                     const Polynomial& g) {
    const TablePtr& t = sigma_body.table();
    Polynomial out = Polynomial::zero(t);
    for (const auto& [m, c] : sigma_body.terms()) {
        GenId ti = m.odd.at(0), tj = m.odd.at(1);
        GenId xi = *t->find("x" + std::to_string(t->gen(ti).index));
        GenId xj = *t->find("x" + std::to_string(t->gen(tj).index));
        Monomial coeff;
        coeff.even = m.even;
        Polynomial cf = Polynomial::zero(t);
        cf.add_term(coeff, c);
        out += cf * (partial_x(f, xi) * partial_x(g, xj) - partial_x(f, xj) * partial_x(g, xi));
    }
    return out;
}

/// Jacobiator {f,{g,h}} + {g,{h,f}} + {h,{f,g}} of the coordinate bracket.
inline Polynomial coordinate_jacobiator(const Polynomial& sigma_body, const Polynomial& f,
                                        const Polynomial& g, const Polynomial& h) {
    auto br = [&](const Polynomial& a, const Polynomial& b) {
        return coordinate_poisson(sigma_body, a, b);
    };
    return br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g));
}

/// de Rham differential of a form (xi-polynomial with base coefficients),
/// written independently of the engine: d(f xi^I) = d_i f xi^i xi^I.
inline Polynomial oracle_de_rham(const Polynomial& form) {
    const TablePtr& t = form.table();
    Polynomial out = Polynomial::zero(t);
    for (const auto& [m, c] : form.terms()) {
        for (GenId x : t->ids_of_kind(GenKind::base)) {
            GenId xi = *t->find("xi" + std::to_string(t->gen(x).index));
            Monomial coeff;
            coeff.even = m.even;
            Polynomial cf = Polynomial::zero(t);
            cf.add_term(coeff, c);
            Polynomial dc = partial_x(cf, x);
            if (dc.is_zero()) continue;
            Polynomial rest = Polynomial::zero(t);
            Monomial oddpart;
            oddpart.odd = m.odd;
            rest.add_term(oddpart, Rat(1));
            out += dc * Polynomial::generator(t, xi) * rest;
        }
    }
    return out;
}

/// Vector-field bracket, written against the coefficient arrays directly.
inline Polynomial oracle_vf_bracket(const Polynomial& x, const Polynomial& y) {
    const TablePtr& t = x.table();
    Polynomial out = Polynomial::zero(t);
    auto comp = [&](const Polynomial& v, int i) {
        Monomial key;
        key.odd.push_back(*t->find("th" + std::to_string(i)));
        Polynomial c = Polynomial::zero(t);
        for (const auto& [m, q] : v.terms()) {
            if (m.odd == key.odd) {
                Monomial even_only;
                even_only.even = m.even;
                c.add_term(even_only, q);
            }
        }
        return c;
    };
    int n = t->base_dim();
    for (int j = 1; j <= n; ++j) {
        Polynomial cj = Polynomial::zero(t);
        for (int i = 1; i <= n; ++i) {
            GenId xi = *t->find("x" + std::to_string(i));
            cj += comp(x, i) * partial_x(comp(y, j), xi) -
                  comp(y, i) * partial_x(comp(x, j), xi);
        }
        cj = cj * Polynomial::generator(t, "th" + std::to_string(j));
        out += cj;
    }
    return out;
}

}  // namespace testsupport
