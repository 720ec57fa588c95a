#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bigbracket/generator_table.hpp"
#include "bigbracket/types.hpp"

namespace bigbracket {

/// Canonically ordered graded monomial key: even generators as a sparse
/// exponent vector, odd generators as a strictly increasing id list (odd
/// squares vanish). The coefficient lives in the enclosing Polynomial.
struct Monomial {
    std::vector<std::pair<GenId, int>> even;  // sorted by id, exponents > 0
    std::vector<GenId> odd;                   // strictly increasing

    bool is_constant() const { return even.empty() && odd.empty(); }
    int parity() const { return static_cast<int>(odd.size()) & 1; }

    int degree(const GeneratorTable& t) const {
        int d = 0;
        for (auto [g, e] : even) d += t.bidegree(g).total() * e;
        d += static_cast<int>(odd.size());
        return d;
    }

    Bidegree bidegree(const GeneratorTable& t) const {
        Bidegree b;
        for (auto [g, e] : even) {
            Bidegree gb = t.bidegree(g);
            b.k += gb.k * e;
            b.l += gb.l * e;
        }
        for (GenId g : odd) b = b + t.bidegree(g);
        return b;
    }

    int factor_count() const {
        int n = static_cast<int>(odd.size());
        for (auto [g, e] : even) n += e;
        return n;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.odd <=> b.odd; c != 0) return c;
        return a.even <=> b.even;
    }
};

/// Sparse exact-rational linear combination of canonical monomials; the
/// universal value type of the engine. Immutable in spirit: all operations
/// return new values.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(TablePtr t) : tab_(std::move(t)) {
        if (!tab_) throw std::invalid_argument("polynomial needs a generator table");
    }

    static Polynomial zero(TablePtr t) { return Polynomial(std::move(t)); }

    static Polynomial constant(TablePtr t, const Rat& c) {
        Polynomial p(std::move(t));
        if (c != 0) p.terms_.emplace(Monomial{}, c);
        return p;
    }

    static Polynomial generator(TablePtr t, GenId g) {
        Polynomial p(std::move(t));
        Monomial m;
        if (p.tab_->odd(g)) m.odd.push_back(g);
        else m.even.push_back({g, 1});
        p.terms_.emplace(std::move(m), Rat(1));
        return p;
    }

    static Polynomial generator(const TablePtr& t, std::string_view name) {
        return generator(t, t->require(name));
    }

    /// Normalizes a raw monomial: folds the Koszul sign of sorting the odd
    /// factors into the coefficient; a repeated odd factor gives zero.
    static Polynomial monomial(TablePtr t, Rat coeff, const std::vector<GenId>& factors) {
        Polynomial p(std::move(t));
        if (coeff == 0) return p;
        Monomial m;
        std::vector<GenId> odd;
        for (GenId g : factors) {
            if (g >= p.tab_->size()) throw std::invalid_argument("unknown generator id");
            if (p.tab_->odd(g)) odd.push_back(g);
            else {
                auto it = std::find_if(m.even.begin(), m.even.end(),
                                       [g](auto& pr) { return pr.first == g; });
                if (it == m.even.end()) m.even.push_back({g, 1});
                else ++it->second;
            }
        }
        std::sort(m.even.begin(), m.even.end());
        // Koszul sign: -1 per transposition of odd factors.
        long inversions = 0;
        for (std::size_t i = 0; i < odd.size(); ++i)
            for (std::size_t j = i + 1; j < odd.size(); ++j) {
                if (odd[i] == odd[j]) return p;  // odd square
                if (odd[i] > odd[j]) ++inversions;
            }
        if (inversions & 1) coeff = -coeff;
        std::sort(odd.begin(), odd.end());
        m.odd = std::move(odd);
        p.terms_.emplace(std::move(m), std::move(coeff));
        return p;
    }

    const TablePtr& table() const { return tab_; }
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rat coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }

    Polynomial operator-() const {
        if (!tab_) return {};
        Polynomial r(tab_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check_tables(a, b);
        if (!a.tab_) return b;
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        check_tables(a, b);
        if (!a.tab_) return -b;
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    friend Polynomial operator*(const Rat& c, const Polynomial& a) {
        if (!a.tab_) return {};
        Polynomial r(a.tab_);
        if (c == 0) return r;
        for (const auto& [m, k] : a.terms_) r.terms_.emplace(m, c * k);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Rat& c) { return c * a; }

    /// Supercommutative product: bilinear extension of the normalized
    /// monomial product, a*b = (-1)^{|a||b|} b*a on parity-homogeneous values.
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_tables(a, b);
        if (!a.tab_ || !b.tab_) return a.tab_ ? Polynomial(a.tab_) : b.tab_ ? Polynomial(b.tab_)
                                                                            : Polynomial{};
        Polynomial r(a.tab_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                auto [m, sign] = multiply_monomials(ma, mb);
                if (sign != 0) r.add_term(m, ca * cb * sign);
            }
        return r;
    }

    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }

    /// True when every term has the given bidegree (zero is vacuously
    /// homogeneous of any bidegree).
    bool homogeneous_of(Bidegree b) const {
        for (const auto& [m, c] : terms_)
            if (m.bidegree(*tab_) != b) return false;
        return true;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        Bidegree b = terms_.begin()->first.bidegree(*tab_);
        return homogeneous_of(b);
    }

    /// Bidegree of a nonzero homogeneous value.
    Bidegree bidegree() const {
        if (terms_.empty()) throw std::invalid_argument("bidegree of zero is undefined");
        Bidegree b = terms_.begin()->first.bidegree(*tab_);
        if (!homogeneous_of(b)) throw std::invalid_argument("value is not homogeneous");
        return b;
    }

    /// Parity-homogeneity; every engine operation preserves it termwise.
    bool parity_homogeneous() const {
        if (terms_.empty()) return true;
        int p = terms_.begin()->first.parity();
        for (const auto& [m, c] : terms_)
            if (m.parity() != p) return false;
        return true;
    }

    int parity() const {
        if (terms_.empty()) return 0;
        return terms_.begin()->first.parity();
    }

    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    static void check_tables(const Polynomial& a, const Polynomial& b) {
        if (a.tab_ && b.tab_ && !same_table(a.tab_, b.tab_))
            throw std::invalid_argument("mismatched generator tables");
    }

    /// Monomial product with Koszul sign; sign 0 flags an odd square.
    static std::pair<Monomial, int> multiply_monomials(const Monomial& a, const Monomial& b) {
        Monomial m;
        m.even.reserve(a.even.size() + b.even.size());
        std::size_t i = 0, j = 0;
        while (i < a.even.size() || j < b.even.size()) {
            if (j == b.even.size() || (i < a.even.size() && a.even[i].first < b.even[j].first))
                m.even.push_back(a.even[i++]);
            else if (i == a.even.size() || b.even[j].first < a.even[i].first)
                m.even.push_back(b.even[j++]);
            else {
                m.even.push_back({a.even[i].first, a.even[i].second + b.even[j].second});
                ++i, ++j;
            }
        }
        // Merge odd lists counting crossings: each b-element passed over a
        // remaining a-element is one transposition.
        m.odd.reserve(a.odd.size() + b.odd.size());
        long crossings = 0;
        i = 0, j = 0;
        while (i < a.odd.size() || j < b.odd.size()) {
            if (j == b.odd.size())
                m.odd.push_back(a.odd[i++]);
            else if (i == a.odd.size())
                m.odd.push_back(b.odd[j++]);
            else if (a.odd[i] < b.odd[j])
                m.odd.push_back(a.odd[i++]);
            else if (b.odd[j] < a.odd[i]) {
                crossings += static_cast<long>(a.odd.size() - i);
                m.odd.push_back(b.odd[j++]);
            } else
                return {Monomial{}, 0};
        }
        return {std::move(m), (crossings & 1) ? -1 : 1};
    }

private:
    TablePtr tab_;
    std::map<Monomial, Rat> terms_;
};

/// Sum of homogeneous parts, keyed by unshifted bidegree; empty iff zero.
inline std::map<Bidegree, Polynomial> bidegree_split(const Polynomial& a) {
    std::map<Bidegree, Polynomial> out;
    for (const auto& [m, c] : a.terms()) {
        Bidegree b = m.bidegree(*a.table());
        auto it = out.find(b);
        if (it == out.end()) it = out.emplace(b, Polynomial::zero(a.table())).first;
        it->second.add_term(m, c);
    }
    return out;
}

/// Component of the given bidegree (zero if absent).
inline Polynomial bidegree_component(const Polynomial& a, Bidegree b) {
    Polynomial out = Polynomial::zero(a.table());
    for (const auto& [m, c] : a.terms())
        if (m.bidegree(*a.table()) == b) out.add_term(m, c);
    return out;
}

inline Polynomial bidegree_component(const Polynomial& a, ShiftedBidegree s) {
    return bidegree_component(a, s.unshifted());
}

}  // namespace bigbracket
