#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bigbracket/types.hpp"

namespace bigbracket {

using GenId = std::uint32_t;

enum class GenKind : std::uint8_t {
    base,        // x_i, bidegree (0,0), even
    base_conj,   // p_i, bidegree (1,1), even
    fiber,       // xi_a / e_A, bidegree (0,1), odd
    fiber_conj,  // th_a / eps_A, bidegree (1,0), odd
};

inline Bidegree bidegree_of(GenKind k) {
    switch (k) {
        case GenKind::base: return {0, 0};
        case GenKind::base_conj: return {1, 1};
        case GenKind::fiber: return {0, 1};
        case GenKind::fiber_conj: return {1, 0};
    }
    return {0, 0};
}

struct Generator {
    std::string name;  // e.g. "x2", "p2", "xi1", "th1", "e3", "eps3"
    GenKind kind;
    int family;  // -1 for base, otherwise index into fiber family list
    int index;   // 1-based coordinate index within the family
    GenId conj;  // the unique conjugate partner
};

/// A fiber family declares a block of odd conjugate pairs, e.g. ("xi","th",2)
/// yields xi1,xi2 with conjugates th1,th2.
struct FiberFamily {
    std::string fiber_prefix;
    std::string conj_prefix;
    int dim = 0;
};

/// Declaration of the coordinate families of T*(parity-reversed V).
/// Canonical generator order: x block, p block, then per fiber family the
/// fiber block followed by the conjugate block. Odd monomial factors are
/// stored in this order.
class GeneratorTable {
public:
    static std::shared_ptr<const GeneratorTable> make(int base_dim,
                                                      std::vector<FiberFamily> families) {
        if (base_dim < 0) throw std::invalid_argument("base dimension must be >= 0");
        auto t = std::make_shared<GeneratorTable>();
        t->base_dim_ = base_dim;
        t->families_ = std::move(families);
        for (int i = 1; i <= base_dim; ++i)
            t->gens_.push_back({"x" + std::to_string(i), GenKind::base, -1, i, 0});
        for (int i = 1; i <= base_dim; ++i)
            t->gens_.push_back({"p" + std::to_string(i), GenKind::base_conj, -1, i, 0});
        for (int i = 0; i < base_dim; ++i) {
            t->gens_[i].conj = static_cast<GenId>(base_dim + i);
            t->gens_[base_dim + i].conj = static_cast<GenId>(i);
        }
        int fam = 0;
        for (const auto& f : t->families_) {
            if (f.dim < 0) throw std::invalid_argument("fiber dimension must be >= 0");
            if (f.fiber_prefix.empty() || f.conj_prefix.empty() ||
                f.fiber_prefix == f.conj_prefix)
                throw std::invalid_argument("fiber family needs two distinct name prefixes");
            GenId fib0 = static_cast<GenId>(t->gens_.size());
            for (int i = 1; i <= f.dim; ++i)
                t->gens_.push_back({f.fiber_prefix + std::to_string(i), GenKind::fiber, fam, i, 0});
            GenId con0 = static_cast<GenId>(t->gens_.size());
            for (int i = 1; i <= f.dim; ++i)
                t->gens_.push_back(
                    {f.conj_prefix + std::to_string(i), GenKind::fiber_conj, fam, i, 0});
            for (int i = 0; i < f.dim; ++i) {
                t->gens_[fib0 + i].conj = con0 + i;
                t->gens_[con0 + i].conj = fib0 + i;
            }
            ++fam;
        }
        for (GenId g = 0; g < t->gens_.size(); ++g)
            for (GenId h = static_cast<GenId>(g + 1); h < t->gens_.size(); ++h)
                if (t->gens_[g].name == t->gens_[h].name)
                    throw std::invalid_argument("duplicate generator name: " + t->gens_[g].name);
        return t;
    }

    std::size_t size() const { return gens_.size(); }
    int base_dim() const { return base_dim_; }
    const std::vector<FiberFamily>& families() const { return families_; }
    const Generator& gen(GenId g) const { return gens_.at(g); }

    Bidegree bidegree(GenId g) const { return bidegree_of(gens_[g].kind); }
    bool odd(GenId g) const {
        GenKind k = gens_[g].kind;
        return k == GenKind::fiber || k == GenKind::fiber_conj;
    }
    GenId conjugate(GenId g) const { return gens_[g].conj; }

    std::optional<GenId> find(std::string_view name) const {
        for (GenId g = 0; g < gens_.size(); ++g)
            if (gens_[g].name == name) return g;
        return std::nullopt;
    }

    GenId require(std::string_view name) const {
        if (auto g = find(name)) return *g;
        throw std::invalid_argument("unknown generator name: " + std::string(name));
    }

    /// Value of the bracket on a generator pair, per the relations
    /// {x_i, p_j} = delta = -{p_j, x_i} and {xi_a, th_b} = delta = {th_b, xi_a}
    /// (likewise for every extra fiber family). All other pairs vanish.
    int pair_bracket(GenId a, GenId b) const {
        if (gens_[a].conj != b) return 0;
        GenKind ka = gens_[a].kind;
        if (ka == GenKind::base) return 1;        // {x, p}
        if (ka == GenKind::base_conj) return -1;  // {p, x}
        return 1;                                 // odd conjugate pairs, both orders
    }

    std::vector<GenId> ids_of_kind(GenKind k) const {
        std::vector<GenId> out;
        for (GenId g = 0; g < gens_.size(); ++g)
            if (gens_[g].kind == k) out.push_back(g);
        return out;
    }

    /// Structural equality; two independently built identical tables interoperate.
    friend bool operator==(const GeneratorTable& a, const GeneratorTable& b) {
        if (a.base_dim_ != b.base_dim_ || a.families_.size() != b.families_.size()) return false;
        for (std::size_t i = 0; i < a.families_.size(); ++i) {
            const auto& fa = a.families_[i];
            const auto& fb = b.families_[i];
            if (fa.dim != fb.dim || fa.fiber_prefix != fb.fiber_prefix ||
                fa.conj_prefix != fb.conj_prefix)
                return false;
        }
        return true;
    }

private:
    int base_dim_ = 0;
    std::vector<FiberFamily> families_;
    std::vector<Generator> gens_;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

inline bool same_table(const TablePtr& a, const TablePtr& b) {
    return a == b || (a && b && *a == *b);
}

/// Standard table for V = TM over an n-dimensional base with rank-r fiber:
/// x/p, xi/th.
inline TablePtr standard_table(int base_dim, int fiber_dim) {
    return GeneratorTable::make(base_dim, {{"xi", "th", fiber_dim}});
}

/// Six-family table for V = TM x g*: x/p, xi/th (TM part), e/eps (g* part).
inline TablePtr action_table(int base_dim, int lie_dim) {
    return GeneratorTable::make(base_dim, {{"xi", "th", base_dim}, {"e", "eps", lie_dim}});
}

}  // namespace bigbracket
