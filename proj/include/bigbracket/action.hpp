#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bigbracket/courant.hpp"
#include "bigbracket/duality.hpp"
#include "bigbracket/structure.hpp"
#include "bigbracket/twisting.hpp"

namespace bigbracket {

/// Totally antisymmetric rank-3 constant tensor (for the 3-forms on g and g*).
class AltTensor3 {
public:
    explicit AltTensor3(int dim) : dim_(dim) {}

    int dim() const { return dim_; }

    /// Sets the value on (a,b,c) and all permutations with their signs.
    void set(int a, int b, int c, const Rat& v) {
        check(a), check(b), check(c);
        if (a == b || b == c || a == c) {
            if (v != 0) throw std::invalid_argument("3-form: repeated index must vanish");
            return;
        }
        std::array<int, 3> key{a, b, c};
        int sign = sort_sign(key);
        if (v == 0) vals_.erase(key);
        else vals_[key] = sign * v;
    }

    Rat operator()(int a, int b, int c) const {
        if (a == b || b == c || a == c) return Rat(0);
        std::array<int, 3> key{a, b, c};
        int sign = sort_sign(key);
        auto it = vals_.find(key);
        return it == vals_.end() ? Rat(0) : sign * it->second;
    }

    bool is_zero() const { return vals_.empty(); }

private:
    static int sort_sign(std::array<int, 3>& k) {
        int s = 1;
        if (k[0] > k[1]) { std::swap(k[0], k[1]); s = -s; }
        if (k[1] > k[2]) { std::swap(k[1], k[2]); s = -s; }
        if (k[0] > k[1]) { std::swap(k[0], k[1]); s = -s; }
        return s;
    }
    void check(int i) const {
        if (i < 1 || i > dim_) throw std::invalid_argument("3-form index out of range");
    }

    int dim_;
    std::map<std::array<int, 3>, Rat> vals_;
};

/// (theta-degree, eps-degree) of a monomial: counts of odd conjugate
/// generators in the TM family and in the extra family.
inline std::pair<int, int> conj_multidegree(const Monomial& m, const GeneratorTable& t) {
    int th = 0, eps = 0;
    for (GenId g : m.odd)
        if (t.gen(g).kind == GenKind::fiber_conj) (t.gen(g).family == 0 ? th : eps) += 1;
    return {th, eps};
}

inline Polynomial conj_multidegree_component(const Polynomial& p, int th, int eps) {
    Polynomial out = Polynomial::zero(p.table());
    for (const auto& [m, c] : p.terms())
        if (conj_multidegree(m, *p.table()) == std::pair<int, int>{th, eps}) out.add_term(m, c);
    return out;
}

/// (fiber-family-0 degree, fiber-family-1 degree): a multivector block
/// Gamma(w^k TM (x) w^l g*) is theta^k eps^l, a form block is xi^k e^l.
inline std::pair<int, int> odd_multidegree(const Monomial& m, const GeneratorTable& t,
                                           GenKind kind) {
    int f0 = 0, f1 = 0;
    for (GenId g : m.odd)
        if (t.gen(g).kind == kind) (t.gen(g).family == 0 ? f0 : f1) += 1;
    return {f0, f1};
}

/// The Section-5 package on V = TM x g*: the structure
/// S = S_g + (S_g* + S_M) + (Psi_g + Psi_M) and the twist sigma = pi + rho,
/// compiled onto the six-family table x/p, xi/th, e/eps.
class ActionSetup {
public:
    /// Builds from constant arrays and base-dependent polynomials. C are the
    /// Lie constants of g (S_g = 1/2 C^D_{AB} eps^A eps^B e_D), Gamma the
    /// cobracket constants (S_g* = 1/2 Gamma^{AB}_C e_A e_B eps^C, passed as
    /// LieConstants with Gamma(c,a,b) = Gamma^{ab}_c), psi_g the constant
    /// 3-form on g*. psi_m, rho, pi are polynomials on the table. mu_m
    /// defaults to p_i xi^i; any Lie algebroid generator of bidegree (1,2)
    /// over the TM family may replace it.
    static ActionSetup build(int dim_m, int dim_g, const LieConstants& c,
                             const LieConstants& cobracket, const AltTensor3& psi_g,
                             const Polynomial& psi_m, const Polynomial& rho,
                             const Polynomial& pi,
                             std::optional<Polynomial> mu_m = std::nullopt) {
        ActionSetup s;
        s.dim_m_ = dim_m;
        s.dim_g_ = dim_g;
        s.table_ = action_table(dim_m, dim_g);
        if (c.dim() != dim_g || cobracket.dim() != dim_g || psi_g.dim() != dim_g)
            throw std::invalid_argument("constant array dimensions disagree with dim g");
        s.lie_ = c;
        s.cobracket_ = cobracket;
        s.psi_g_tensor_ = psi_g;

        auto e = [&](int a) { return Polynomial::generator(s.table_, "e" + std::to_string(a)); };
        auto eps = [&](int a) {
            return Polynomial::generator(s.table_, "eps" + std::to_string(a));
        };
        // Printed encodings: S_g = 1/2 C^D_{AB} eps^A eps^B e_D,
        // S_g* = 1/2 Gamma^{AB}_C e_A e_B eps^C, Psi_g = 1/6 Psi^{ABC} e_A e_B e_C.
        s.s_g_ = Polynomial::zero(s.table_);
        s.s_gstar_ = Polynomial::zero(s.table_);
        s.psi_g_ = Polynomial::zero(s.table_);
        Rat half(1, 2), sixth(1, 6);
        for (int d = 1; d <= dim_g; ++d)
            for (int a = 1; a <= dim_g; ++a)
                for (int b = 1; b <= dim_g; ++b) {
                    if (c(d, a, b) != 0) s.s_g_ += half * c(d, a, b) * (eps(a) * eps(b) * e(d));
                    if (cobracket(d, a, b) != 0)
                        s.s_gstar_ += half * cobracket(d, a, b) * (e(a) * e(b) * eps(d));
                }
        for (int a = 1; a <= dim_g; ++a)
            for (int b = 1; b <= dim_g; ++b)
                for (int d = 1; d <= dim_g; ++d)
                    if (psi_g(a, b, d) != 0)
                        s.psi_g_ += sixth * psi_g(a, b, d) * (e(a) * e(b) * e(d));

        s.psi_m_ = rebase(psi_m, s.table_);
        s.rho_ = rebase(rho, s.table_);
        s.pi_ = rebase(pi, s.table_);
        if (mu_m) s.mu_m_ = rebase(*mu_m, s.table_);
        else {
            s.mu_m_ = Polynomial::zero(s.table_);
            for (int i = 1; i <= dim_m; ++i)
                s.mu_m_ = *s.mu_m_ +
                          Polynomial::generator(s.table_, "p" + std::to_string(i)) *
                              Polynomial::generator(s.table_, "xi" + std::to_string(i));
        }
        s.check_shapes();
        auto bad = s.validate();
        if (!bad.empty()) {
            std::string msg = "invalid action setup:";
            for (const auto& [name, p] : bad) msg += " [" + name + "]";
            throw std::invalid_argument(msg);
        }
        return s;
    }

    const TablePtr& table() const { return table_; }
    int dim_m() const { return dim_m_; }
    int dim_g() const { return dim_g_; }
    const Polynomial& s_g() const { return s_g_; }
    const Polynomial& s_gstar() const { return s_gstar_; }
    const Polynomial& psi_g() const { return psi_g_; }
    const Polynomial& psi_m() const { return psi_m_; }
    const Polynomial& rho() const { return rho_; }
    const Polynomial& pi() const { return pi_; }
    const Polynomial& mu_m() const { return *mu_m_; }
    const LieConstants& lie_constants() const { return lie_; }
    const LieConstants& cobracket_constants() const { return cobracket_; }
    const AltTensor3& psi_g_tensor() const { return psi_g_tensor_; }

    /// phi = 0, gamma = S_g, mu = S_g* + mu_M, psi = Psi_g + Psi_M.
    Structure structure() const {
        return Structure(Polynomial::zero(table_), s_g_, s_gstar_ + *mu_m_, psi_g_ + psi_m_);
    }

    TwistFunction sigma() const { return TwistFunction::bivector(pi_ + rho_); }

    /// Named validation residuals; all must vanish for S to be a structure.
    std::vector<std::pair<std::string, Polynomial>> validate() const {
        std::vector<std::pair<std::string, Polynomial>> bad;
        auto push = [&](const char* name, const Polynomial& p) {
            if (!p.is_zero()) bad.emplace_back(name, p);
        };
        push("mu_M is not a Lie algebroid generator: {mu_M,mu_M} != 0",
             big_bracket(*mu_m_, *mu_m_));
        push("Psi_M is not closed: {mu_M,Psi_M} != 0", big_bracket(*mu_m_, psi_m_));
        Polynomial g = s_g_ + s_gstar_ + psi_g_;
        push("(g,g*) is not a Lie-quasi bialgebra: {G,G} != 0", big_bracket(g, g));
        return bad;
    }

private:
    static Polynomial rebase(const Polynomial& p, const TablePtr& t) {
        if (!p.table()) return Polynomial::zero(t);
        Polynomial::check_tables(p, Polynomial::zero(t));
        // Rebuild on the setup's own table so all values share one instance.
        Polynomial out = Polynomial::zero(t);
        for (const auto& [m, c] : p.terms()) out.add_term(m, c);
        return out;
    }

    void check_shapes() const {
        auto want_multideg = [&](const Polynomial& p, GenKind kind, std::pair<int, int> md,
                                 const char* what) {
            for (const auto& [m, c] : p.terms()) {
                if (odd_multidegree(m, *table_, kind) != md ||
                    m.odd.size() != static_cast<std::size_t>(md.first + md.second))
                    throw std::invalid_argument(std::string(what) + ": wrong shape");
                for (auto [g, e] : m.even)
                    if (table_->gen(g).kind != GenKind::base)
                        throw std::invalid_argument(std::string(what) +
                                                    ": coefficients must be base functions");
            }
        };
        want_multideg(psi_m_, GenKind::fiber, {3, 0}, "Psi_M");
        want_multideg(pi_, GenKind::fiber_conj, {2, 0}, "pi");
        want_multideg(rho_, GenKind::fiber_conj, {1, 1}, "rho");
        if (!mu_m_->homogeneous_of(Bidegree{1, 2}))
            throw std::invalid_argument("mu_M: must be homogeneous of bidegree (1,2)");
        for (const auto& [m, c] : mu_m_->terms())
            for (GenId g : m.odd)
                if (table_->gen(g).family != 0)
                    throw std::invalid_argument("mu_M: must live over the TM family");
    }

    int dim_m_ = 0, dim_g_ = 0;
    TablePtr table_;
    Polynomial s_g_, s_gstar_, psi_g_, psi_m_, rho_, pi_;
    std::optional<Polynomial> mu_m_;
    LieConstants lie_{0}, cobracket_{0};
    AltTensor3 psi_g_tensor_{0};
};

/// The four component equations of the generalized Maurer-Cartan equation for
/// sigma = pi + rho, in the printed normalizations:
///   (A) {{{Psi_M,rho},rho},rho} = 0
///   (B) -{S_g,rho} + 1/2{{S_M,rho},rho} - 1/2{{{Psi_M,rho},rho},pi} = 0
///   (C) {{S_M,pi},rho} + 1/2{{S_g*,rho},rho} - 1/2{{{Psi_M,rho},pi},pi} = 0
///   (D) {{S_M,pi},pi} - 1/3{{{Psi_g,rho},rho},rho} - 1/3{{{Psi_M,pi},pi},pi} = 0
struct ConditionResiduals {
    Polynomial a, b, c, d;

    bool all_zero() const {
        return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero();
    }
};

inline ConditionResiduals condition_residuals(const ActionSetup& s) {
    const Polynomial &rho = s.rho(), &pi = s.pi(), &sm = s.mu_m();
    Rat half(1, 2), third(1, 3);
    ConditionResiduals r{
        ad_power(s.psi_m(), rho, 3),
        -big_bracket(s.s_g(), rho) + half * ad_power(sm, rho, 2) -
            half * big_bracket(ad_power(s.psi_m(), rho, 2), pi),
        big_bracket(big_bracket(sm, pi), rho) + half * ad_power(s.s_gstar(), rho, 2) -
            half * ad_power(big_bracket(s.psi_m(), rho), pi, 2),
        ad_power(sm, pi, 2) - third * ad_power(s.psi_g(), rho, 3) -
            third * ad_power(s.psi_m(), pi, 3)};
    return r;
}

/// The (theta,eps)-multidegree blocks of the general residual are exactly the
/// four conditions, with the constants forced by the printed normalizations:
/// block(0,3) = -1/6 (A), block(1,2) = (B), block(2,1) = (C), block(3,0) = 1/2 (D).
struct ConditionDecomposition {
    ConditionResiduals conditions;
    Polynomial general;  // poisson_residual(S, pi + rho)
    std::array<Polynomial, 4> blocks;  // (0,3), (1,2), (2,1), (3,0)
    bool exact = false;                // blocks match the conditions, term by term
    bool equivalent = false;           // vanishing verdicts agree
};

inline ConditionDecomposition condition_decomposition(const ActionSetup& s) {
    ConditionDecomposition out;
    out.conditions = condition_residuals(s);
    out.general = poisson_residual(s.structure(), s.sigma());
    out.blocks = {conj_multidegree_component(out.general, 0, 3),
                  conj_multidegree_component(out.general, 1, 2),
                  conj_multidegree_component(out.general, 2, 1),
                  conj_multidegree_component(out.general, 3, 0)};
    out.exact = out.blocks[0] == Rat(-1, 6) * out.conditions.a &&
                out.blocks[1] == out.conditions.b && out.blocks[2] == out.conditions.c &&
                out.blocks[3] == Rat(1, 2) * out.conditions.d;
    Polynomial rest = out.general - out.blocks[0] - out.blocks[1] - out.blocks[2] - out.blocks[3];
    out.exact = out.exact && rest.is_zero();
    out.equivalent = out.conditions.all_zero() == out.general.is_zero();
    return out;
}

/// Lemma: rho alone is a Poisson function for S_g + S_M iff
/// -{S_g,rho} + 1/2{{S_M,rho},rho} = 0, iff rho is a Lie algebra action.
inline Polynomial action_condition_residual(const ActionSetup& s) {
    return -big_bracket(s.s_g(), s.rho()) + Rat(1, 2) * ad_power(s.mu_m(), s.rho(), 2);
}

/// The Lie algebroid generator on T*M x g (Theorem 5.3 display):
/// gamma_sigma = S_g - {S_g*,rho} - {S_M,pi} - {S_M,rho}
///   + 1/2{{Psi_g,rho},rho} + 1/2{{Psi_M,pi},pi} + {{Psi_M,pi},rho} + 1/2{{Psi_M,rho},rho}.
inline Polynomial gamma_sigma_formula(const ActionSetup& s) {
    const Polynomial &rho = s.rho(), &pi = s.pi(), &sm = s.mu_m();
    Rat half(1, 2);
    return s.s_g() - big_bracket(s.s_gstar(), rho) - big_bracket(sm, pi) -
           big_bracket(sm, rho) + half * ad_power(s.psi_g(), rho, 2) +
           half * ad_power(s.psi_m(), pi, 2) + big_bracket(big_bracket(s.psi_m(), pi), rho) +
           half * ad_power(s.psi_m(), rho, 2);
}

inline Polynomial gamma_sigma(const ActionSetup& s) {
    if (!condition_residuals(s).all_zero())
        throw std::invalid_argument("gamma_sigma needs conditions (A)-(D) to hold");
    Polynomial g = gamma_sigma_formula(s);
    // The display must coincide with the gamma-component of the twist.
    if (!(g == twist_components(s.structure(), s.sigma()).gamma()))
        throw std::logic_error("gamma_sigma display disagrees with the twist (internal error)");
    return g;
}

/// The four bigraded block generators of d_{gamma_sigma} (block (j,1-j) maps
/// theta^k eps^l to theta^{k+j} eps^{l+1-j}):
///   d_(-1,2): 1/2{{Psi_M,rho},rho}
///   d_(0,1):  -{S_M,rho} + {{Psi_M,pi},rho} + S_g
///   d_(1,0):  -{S_M,pi} + 1/2{{Psi_M,pi},pi} - {S_g*,rho}
///   d_(2,-1): 1/2{{Psi_g,rho},rho}
struct DifferentialBlocks {
    std::array<Polynomial, 4> gen;              // order: j = -1, 0, 1, 2
    static constexpr std::array<int, 4> js{-1, 0, 1, 2};

    Polynomial total() const { return gen[0] + gen[1] + gen[2] + gen[3]; }
};

inline DifferentialBlocks differential_blocks(const ActionSetup& s) {
    const Polynomial &rho = s.rho(), &pi = s.pi(), &sm = s.mu_m();
    Rat half(1, 2);
    DifferentialBlocks b{{
        half * ad_power(s.psi_m(), rho, 2),
        -big_bracket(sm, rho) + big_bracket(big_bracket(s.psi_m(), pi), rho) + s.s_g(),
        -big_bracket(sm, pi) + half * ad_power(s.psi_m(), pi, 2) -
            big_bracket(s.s_gstar(), rho),
        half * ad_power(s.psi_g(), rho, 2),
    }};
    return b;
}

struct TwistedDifferential {
    Polynomial total;                  // {gamma_sigma, a}
    std::array<Polynomial, 4> blocks;  // {gen_j, a} for j = -1, 0, 1, 2
};

inline TwistedDifferential twisted_differential(const ActionSetup& s, const Polynomial& a) {
    Polynomial g = gamma_sigma(s);
    DifferentialBlocks b = differential_blocks(s);
    TwistedDifferential out{big_bracket(g, a),
                            {big_bracket(b.gen[0], a), big_bracket(b.gen[1], a),
                             big_bracket(b.gen[2], a), big_bracket(b.gen[3], a)}};
    if (!(out.blocks[0] + out.blocks[1] + out.blocks[2] + out.blocks[3] == out.total))
        throw std::logic_error("differential blocks do not sum to the total (internal error)");
    return out;
}

// ---------------------------------------------------------------------------
// Coordinate calculus on the polynomial representation: sections of g are
// e-linear, of g* eps-linear, vector fields theta-linear, 1-forms xi-linear,
// all with base-polynomial coefficients. These are classical textbook
// formulas, independent of the big bracket.
// ---------------------------------------------------------------------------

/// d/dx_i on base-polynomial coefficients.
inline Polynomial partial_x(const Polynomial& p, GenId xi_gen) {
    Polynomial out = Polynomial::zero(p.table());
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t i = 0; i < m.even.size(); ++i) {
            if (m.even[i].first != xi_gen) continue;
            Monomial d = m;
            int e = d.even[i].second;
            if (e == 1) d.even.erase(d.even.begin() + static_cast<long>(i));
            else d.even[i].second -= 1;
            out.add_term(d, c * e);
        }
    }
    return out;
}

namespace coord {

inline std::vector<GenId> base_gens(const GeneratorTable& t) {
    return t.ids_of_kind(GenKind::base);
}

/// X.f for X = X^i theta_i.
inline Polynomial vf_apply(const Polynomial& x, const Polynomial& f) {
    const TablePtr& t = x.table();
    auto parts = odd_linear_split(x);
    Polynomial out = Polynomial::zero(t);
    for (auto& [g, coeff] : parts) {
        int idx = t->gen(g).index;  // theta_i acts along x_i
        GenId base = *t->find("x" + std::to_string(idx));
        out += coeff * partial_x(f, base);
    }
    return out;
}

/// [X,Y] = (X^i d_i Y^j - Y^i d_i X^j) theta_j.
inline Polynomial vf_bracket(const Polynomial& x, const Polynomial& y) {
    const TablePtr& t = x.table();
    Polynomial out = Polynomial::zero(t);
    auto xp = odd_linear_split(x), yp = odd_linear_split(y);
    for (auto& [gj, yj] : yp)
        out += vf_apply(x, yj) * Polynomial::generator(t, gj);
    for (auto& [gj, xj] : xp)
        out -= vf_apply(y, xj) * Polynomial::generator(t, gj);
    return out;
}

/// Lie derivative of a 1-form: (L_X a)_j = X^i d_i a_j + a_i d_j X^i.
inline Polynomial lie_derivative_form(const Polynomial& x, const Polynomial& alpha) {
    const TablePtr& t = x.table();
    Polynomial out = Polynomial::zero(t);
    auto ap = odd_linear_split(alpha);
    auto xp = odd_linear_split(x);
    for (auto& [gj, aj] : ap) out += vf_apply(x, aj) * Polynomial::generator(t, gj);
    for (auto& [gi, xi_coeff] : xp) {
        GenId xi_form = t->conjugate(gi);  // xi^i matching the theta_i component
        auto it = ap.find(xi_form);
        if (it == ap.end()) continue;
        for (GenId b : base_gens(*t)) {
            GenId xij = *t->find("xi" + std::to_string(t->gen(b).index));
            out += it->second * partial_x(xi_coeff, b) * Polynomial::generator(t, xij);
        }
    }
    return out;
}

/// Lie derivative of a section with scalar components (g- or g*-valued
/// functions): acts on the coefficients only.
inline Polynomial lie_derivative_scalar_section(const Polynomial& x, const Polynomial& u) {
    const TablePtr& t = x.table();
    Polynomial out = Polynomial::zero(t);
    for (auto& [g, coeff] : odd_linear_split(u))
        out += vf_apply(x, coeff) * Polynomial::generator(t, g);
    return out;
}

/// pi#(alpha) = alpha_i pi^{ij} theta_j for pi = 1/2 pi^{ij} theta_i theta_j.
inline Polynomial pi_sharp(const Polynomial& pi, const Polynomial& alpha) {
    const TablePtr& t = pi.table();
    Polynomial out = Polynomial::zero(t);
    auto ap = odd_linear_split(alpha);
    for (const auto& [m, c] : pi.terms()) {
        GenId ti = m.odd.at(0), tj = m.odd.at(1);  // i < j, coefficient pi^{ij}
        Monomial coeff_m;
        coeff_m.even = m.even;
        Polynomial coeff = Polynomial::zero(t);
        coeff.add_term(coeff_m, c);
        GenId xi_i = t->conjugate(ti), xi_j = t->conjugate(tj);
        if (auto it = ap.find(xi_i); it != ap.end())
            out += it->second * coeff * Polynomial::generator(t, tj);
        if (auto it = ap.find(xi_j); it != ap.end())
            out -= it->second * coeff * Polynomial::generator(t, ti);
    }
    return out;
}

/// The tensor components rho^i_A of rho = rho^i_A eps^A theta_i. Monomials
/// are stored in the canonical order theta (x) eps, so the stored coefficient
/// is minus the tensor component.
namespace rho_detail {
struct Component {
    GenId theta;
    GenId eps;
    Polynomial coeff;  // rho^i_A as a base polynomial
};

inline std::vector<Component> components(const Polynomial& rho) {
    const TablePtr& t = rho.table();
    std::vector<Component> out;
    for (const auto& [m, c] : rho.terms()) {
        GenId th = m.odd.at(0), ep = m.odd.at(1);
        if (t->gen(th).family != 0) std::swap(th, ep);
        Monomial coeff_m;
        coeff_m.even = m.even;
        Polynomial coeff = Polynomial::zero(t);
        coeff.add_term(coeff_m, -c);  // eps theta = -(theta eps)
        out.push_back({th, ep, std::move(coeff)});
    }
    return out;
}
}  // namespace rho_detail

/// rho(u) = u^A rho^i_A theta_i for u e-linear.
inline Polynomial rho_of(const Polynomial& rho, const Polynomial& u) {
    const TablePtr& t = rho.table();
    Polynomial out = Polynomial::zero(t);
    auto up = odd_linear_split(u);
    for (const auto& comp : rho_detail::components(rho)) {
        GenId e_gen = t->conjugate(comp.eps);
        if (auto it = up.find(e_gen); it != up.end())
            out += it->second * comp.coeff * Polynomial::generator(t, comp.theta);
    }
    return out;
}

/// rho*(alpha) = alpha_i rho^i_A eps^A.
inline Polynomial rho_star(const Polynomial& rho, const Polynomial& alpha) {
    const TablePtr& t = rho.table();
    Polynomial out = Polynomial::zero(t);
    auto ap = odd_linear_split(alpha);
    for (const auto& comp : rho_detail::components(rho)) {
        GenId xi_i = t->conjugate(comp.theta);
        if (auto it = ap.find(xi_i); it != ap.end())
            out += it->second * comp.coeff * Polynomial::generator(t, comp.eps);
    }
    return out;
}

/// d f = d_i f xi^i.
inline Polynomial de_rham_function(const Polynomial& f) {
    const TablePtr& t = f.table();
    Polynomial out = Polynomial::zero(t);
    for (GenId b : base_gens(*t)) {
        GenId xi = *t->find("xi" + std::to_string(t->gen(b).index));
        out += partial_x(f, b) * Polynomial::generator(t, xi);
    }
    return out;
}

/// pi(alpha, beta) = alpha_i pi^{ij} beta_j.
inline Polynomial pi_eval(const Polynomial& pi, const Polynomial& alpha,
                          const Polynomial& beta) {
    const TablePtr& t = pi.table();
    Polynomial out = Polynomial::zero(t);
    auto sharp = pi_sharp(pi, alpha);
    auto bp = odd_linear_split(beta);
    for (auto& [g, coeff] : odd_linear_split(sharp)) {
        auto it = bp.find(t->conjugate(g));
        if (it != bp.end()) out += coeff * it->second;
    }
    return out;
}

/// Koszul bracket of 1-forms: [a,b]_pi = L_{pi#a} b - L_{pi#b} a - d(pi(a,b)).
inline Polynomial koszul_bracket(const Polynomial& pi, const Polynomial& alpha,
                                 const Polynomial& beta) {
    return lie_derivative_form(pi_sharp(pi, alpha), beta) -
           lie_derivative_form(pi_sharp(pi, beta), alpha) -
           de_rham_function(pi_eval(pi, alpha, beta));
}

/// [u,v]_g = C^D_{AB} u^A v^B e_D from the structure constants.
inline Polynomial lie_bracket_g(const LieConstants& c, const Polynomial& u,
                                const Polynomial& v) {
    const TablePtr& t = u.table();
    Polynomial out = Polynomial::zero(t);
    auto up = odd_linear_split(u), vp = odd_linear_split(v);
    for (auto& [ga, ua] : up)
        for (auto& [gb, vb] : vp) {
            int a = t->gen(ga).index, b = t->gen(gb).index;
            for (int d = 1; d <= c.dim(); ++d)
                if (c(d, a, b) != 0)
                    out += c(d, a, b) * ua * vb *
                           Polynomial::generator(t, "e" + std::to_string(d));
        }
    return out;
}

/// ad*_zeta u relative to the cobracket: (ad*_zeta u)^B = Gamma^{AB}_C zeta_A u^C.
inline Polynomial ad_star(const LieConstants& cobracket, const Polynomial& zeta,
                          const Polynomial& u) {
    const TablePtr& t = u.table();
    Polynomial out = Polynomial::zero(t);
    auto zp = odd_linear_split(zeta), up = odd_linear_split(u);
    for (auto& [ga, za] : zp)
        for (auto& [gc, uc] : up) {
            int a = t->gen(ga).index, c = t->gen(gc).index;
            for (int b = 1; b <= cobracket.dim(); ++b) {
                const Rat& g = cobracket(c, a, b);  // Gamma^{ab}_c
                if (g != 0)
                    out += g * za * uc * Polynomial::generator(t, "e" + std::to_string(b));
            }
        }
    return out;
}

/// i_{zeta ^ eta} Psi_g = Psi^{ABC} zeta_A eta_B e_C for zeta, eta eps-linear.
inline Polynomial interior_two_psi_g(const AltTensor3& psi, const Polynomial& zeta,
                                     const Polynomial& eta) {
    const TablePtr& t = zeta.table();
    Polynomial out = Polynomial::zero(t);
    auto zp = odd_linear_split(zeta), ep = odd_linear_split(eta);
    for (auto& [ga, za] : zp)
        for (auto& [gb, eb] : ep) {
            int a = t->gen(ga).index, b = t->gen(gb).index;
            for (int c = 1; c <= psi.dim(); ++c) {
                Rat v = psi(a, b, c);
                if (v != 0)
                    out += v * za * eb * Polynomial::generator(t, "e" + std::to_string(c));
            }
        }
    return out;
}

}  // namespace coord

namespace detail {

/// Engine-to-coordinate slot signs for the named case brackets: each of the
/// building-block identities holds up to one sign translating between the
/// printed generator relations and the classical normalizations. The signs
/// are measured once on a generic fixture and cached; a non-uniform sign
/// would be an internal error.
struct CaseSlotSigns {
    int lie_g = 0;       // {{u, S_g}, v}                 vs  [u,v]_g
    int lie_rho = 0;     // {{u, -{S_M,rho}}, v}          vs  L_{rho(u)}v - L_{rho(v)}u
    int ad_star = 0;     // {{alpha, -{S_g*,rho}}, u}     vs  -ad*_{rho*(alpha)} u
    int lie_pi = 0;      // {{alpha, -{S_M,pi}}, u}       vs  L_{pi#(alpha)} u
    int lie_alpha = 0;   // {{alpha, -{S_M,rho}}, u}      vs  -L_{rho(u)} alpha
    int koszul = 0;      // {{alpha, -{S_M,pi}}, beta}    vs  [alpha,beta]_pi
    int psi_g_slot = 0;  // {{alpha, 1/2{{Psi_g,rho},rho}}, beta} vs i_{(w2 rho*)(a^b)}Psi_g
};

inline int match_sign(const Polynomial& engine, const Polynomial& classical) {
    if (classical.is_zero())
        throw std::logic_error("slot sign fixture degenerated (internal error)");
    if (engine == classical) return 1;
    if (engine == -classical) return -1;
    throw std::logic_error("case bracket slot has no uniform sign (internal error)");
}

inline CaseSlotSigns case_slot_signs() {
    static const CaseSlotSigns pinned = [] {
        // Generic fixture: M = R^2, g three-dimensional, x-dependent rho and
        // pi so every derivative term is exercised. The identities measured
        // here hold termwise for arbitrary coefficients.
        int m = 3;
        TablePtr t = action_table(2, m);
        auto gp = [&](const std::string& name) { return Polynomial::generator(t, name); };
        LieConstants c(m), cob(m);
        c.set(3, 1, 2, Rat(1));
        c.set(2, 1, 3, Rat(1));
        cob.set(1, 2, 3, Rat(1));
        cob.set(2, 1, 2, Rat(1));
        AltTensor3 psig(m);
        psig.set(1, 2, 3, Rat(1));
        Polynomial x1 = gp("x1"), x2 = gp("x2");
        Polynomial rho = x1 * gp("eps1") * gp("th1") + gp("eps2") * gp("th2") +
                         x2 * gp("eps3") * gp("th1");
        Polynomial pi = x2 * gp("th1") * gp("th2");
        Polynomial sm = gp("p1") * gp("xi1") + gp("p2") * gp("xi2");
        Polynomial sg = Polynomial::zero(t), sgstar = Polynomial::zero(t),
                   psig_poly = Polynomial::zero(t);
        Rat half(1, 2), sixth(1, 6);
        for (int d = 1; d <= m; ++d)
            for (int a = 1; a <= m; ++a)
                for (int b = 1; b <= m; ++b) {
                    if (c(d, a, b) != 0)
                        sg += half * c(d, a, b) *
                              (gp("eps" + std::to_string(a)) * gp("eps" + std::to_string(b)) *
                               gp("e" + std::to_string(d)));
                    if (cob(d, a, b) != 0)
                        sgstar += half * cob(d, a, b) *
                                  (gp("e" + std::to_string(a)) * gp("e" + std::to_string(b)) *
                                   gp("eps" + std::to_string(d)));
                    if (psig(d, a, b) != 0)
                        psig_poly += sixth * psig(d, a, b) *
                                     (gp("e" + std::to_string(d)) * gp("e" + std::to_string(a)) *
                                      gp("e" + std::to_string(b)));
                }
        Polynomial u = gp("e1"), v = (x1 + x2) * gp("e2");
        Polynomial alpha = x2 * gp("xi1"), beta = gp("xi2");
        CaseSlotSigns out;
        out.lie_g = match_sign(derived_bracket(sg, u, v), coord::lie_bracket_g(c, u, v));
        out.lie_rho = match_sign(
            derived_bracket(-big_bracket(sm, rho), u, v),
            coord::lie_derivative_scalar_section(coord::rho_of(rho, u), v) -
                coord::lie_derivative_scalar_section(coord::rho_of(rho, v), u));
        out.ad_star = match_sign(derived_bracket(-big_bracket(sgstar, rho), alpha, u),
                                 -coord::ad_star(cob, coord::rho_star(rho, alpha), u));
        out.lie_pi = match_sign(
            derived_bracket(-big_bracket(sm, pi), alpha, v),
            coord::lie_derivative_scalar_section(coord::pi_sharp(pi, alpha), v));
        out.lie_alpha = match_sign(derived_bracket(-big_bracket(sm, rho), alpha, u),
                                   -coord::lie_derivative_form(coord::rho_of(rho, u), alpha));
        out.koszul = match_sign(derived_bracket(-big_bracket(sm, pi), alpha, beta),
                                coord::koszul_bracket(pi, alpha, beta));
        out.psi_g_slot = match_sign(
            derived_bracket(half * ad_power(psig_poly, rho, 2), alpha, beta),
            coord::interior_two_psi_g(psig, coord::rho_star(rho, alpha),
                                      coord::rho_star(rho, beta)));
        return out;
    }();
    return pinned;
}

}  // namespace detail

/// Result of a named closed-form bracket on T*M x g sections.
struct CaseBracketReport {
    std::string case_name;        // "BCS", "BC", "Lu"
    Polynomial engine;            // {{s1, gamma_sigma}, s2}
    Polynomial closed_form;       // classical coordinate evaluation, sign-adjusted
    detail::CaseSlotSigns signs;  // recorded engine-to-coordinate orientation
    bool match = false;           // engine == closed_form, exactly
};

namespace detail {

inline Polynomial closed_form_case_bracket(const ActionSetup& s, const CaseSlotSigns& sg,
                                           const Polynomial& a, const Polynomial& b) {
    const TablePtr& t = s.table();
    auto split = [&](const Polynomial& w) {
        Polynomial alpha = Polynomial::zero(t), u = Polynomial::zero(t);
        for (const auto& [m, c] : w.terms()) {
            if (t->gen(m.odd.at(0)).family == 0) alpha.add_term(m, c);
            else u.add_term(m, c);
        }
        return std::pair{alpha, u};
    };
    auto [alpha, u] = split(a);
    auto [beta, v] = split(b);
    Polynomial out = Polynomial::zero(t);
    const Polynomial &rho = s.rho(), &pi = s.pi();
    // [u,v] = [u,v]_g + L_{rho(u)} v - L_{rho(v)} u
    out += Rat(sg.lie_g) * coord::lie_bracket_g(s.lie_constants(), u, v);
    out += Rat(sg.lie_rho) * (coord::lie_derivative_scalar_section(coord::rho_of(rho, u), v) -
                              coord::lie_derivative_scalar_section(coord::rho_of(rho, v), u));
    // [alpha, v] = L_{pi# alpha} v - L_{rho(v)} alpha - ad*_{rho* alpha} v
    out += Rat(sg.lie_pi) * coord::lie_derivative_scalar_section(coord::pi_sharp(pi, alpha), v);
    out -= Rat(sg.lie_alpha) * coord::lie_derivative_form(coord::rho_of(rho, v), alpha);
    out -= Rat(sg.ad_star) * coord::ad_star(s.cobracket_constants(),
                                            coord::rho_star(rho, alpha), v);
    // [u, beta] = -[beta, u]: the bracket is skew on Gamma(V*) sections.
    out -= Rat(sg.lie_pi) * coord::lie_derivative_scalar_section(coord::pi_sharp(pi, beta), u);
    out += Rat(sg.lie_alpha) * coord::lie_derivative_form(coord::rho_of(rho, u), beta);
    out += Rat(sg.ad_star) * coord::ad_star(s.cobracket_constants(),
                                            coord::rho_star(rho, beta), u);
    // [alpha,beta] = [alpha,beta]_pi + i_{(w2 rho*)(alpha^beta)} Psi_g
    out += Rat(sg.koszul) * coord::koszul_bracket(pi, alpha, beta);
    out += Rat(sg.psi_g_slot) * coord::interior_two_psi_g(s.psi_g_tensor(),
                                                          coord::rho_star(rho, alpha),
                                                          coord::rho_star(rho, beta));
    return out;
}

}  // namespace detail

/// Evaluates the named closed-form bracket of the Psi_M = 0 cases on a pair
/// of sections of T*M x g (xi-linear 1-form parts plus e-linear g parts) and
/// checks exact agreement with the derived bracket of gamma_sigma.
inline CaseBracketReport case_bracket(const ActionSetup& s, const Polynomial& s1,
                                      const Polynomial& s2) {
    if (!s.psi_m().is_zero())
        throw std::invalid_argument("case brackets require Psi_M = 0");
    bool has_form_part = false, has_varying_g_part = false;
    for (const Polynomial* p : {&s1, &s2})
        for (const auto& [m, c] : p->terms()) {
            if (m.odd.size() != 1 ||
                s.table()->gen(m.odd[0]).kind != GenKind::fiber)
                throw std::invalid_argument(
                    "case bracket arguments must be sections of T*M x g (xi/e-linear)");
            for (auto [g, e] : m.even)
                if (s.table()->gen(g).kind != GenKind::base)
                    throw std::invalid_argument("case bracket coefficients must be base functions");
            if (s.table()->gen(m.odd[0]).family == 0) has_form_part = true;
            else if (!m.even.empty()) has_varying_g_part = true;
        }
    // The mixed [alpha, u] display holds for constant g-sections only (the
    // Lie-derivative term is not module-linear in u); pure g-section pairs
    // may vary freely.
    if (has_form_part && has_varying_g_part)
        throw std::invalid_argument(
            "case brackets mixing 1-forms with g-sections need constant g-sections");
    CaseBracketReport rep;
    rep.case_name = s.psi_g().is_zero() ? "Lu" : s.s_gstar().is_zero() ? "BC" : "BCS";
    rep.signs = detail::case_slot_signs();
    rep.engine = derived_bracket(gamma_sigma(s), s1, s2);
    rep.closed_form = detail::closed_form_case_bracket(s, rep.signs, s1, s2);
    rep.match = rep.engine == rep.closed_form;
    if (!rep.match)
        throw std::logic_error("case bracket disagrees with gamma_sigma (internal error)");
    return rep;
}

}  // namespace bigbracket
