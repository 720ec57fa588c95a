#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bigbracket/action.hpp"
#include "bigbracket/parse.hpp"

namespace bigbracket {

struct SetupError : std::runtime_error {
    SetupError(const std::string& msg, int line)
        : std::runtime_error("setup line " + std::to_string(line) + ": " + msg) {}
};

/// A loaded setup file:
///   [generators]  base = n; fiber xi = r; fiber e = m    (declaration order)
///   [define]      name = expression
///   [structure]   phi/gamma/mu/psi = 0 | name | expression
///   [twist]       sigma = ... | tau = ...
///   [action]      C[d,a,b] = q; Gamma[c,a,b] = q; PsiG[a,b,c] = q;
///                 PsiM/rho/pi = 0 | name | expression
/// '#' starts a comment; blank lines are ignored. Values may reference
/// [define] names or be written inline.
struct SetupFile {
    TablePtr table;
    std::map<std::string, Polynomial> defines;
    std::optional<Structure> structure;
    std::optional<TwistFunction> twist;
    std::optional<ActionSetup> action;
};

namespace detail {

inline std::string trim(std::string s) {
    auto sp = [](unsigned char c) { return std::isspace(c); };
    while (!s.empty() && sp(s.front())) s.erase(s.begin());
    while (!s.empty() && sp(s.back())) s.pop_back();
    return s;
}

struct SetupLine {
    int number;
    std::string text;
};

}  // namespace detail

inline SetupFile load_setup(std::istream& in) {
    using detail::trim;
    std::vector<detail::SetupLine> lines;
    {
        std::string raw;
        int n = 0;
        while (std::getline(in, raw)) {
            ++n;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            raw = trim(raw);
            if (!raw.empty()) lines.push_back({n, raw});
        }
    }

    SetupFile out;
    // Pass 1: generators.
    int base_dim = -1;
    std::vector<FiberFamily> families;
    std::string section;
    for (const auto& [num, text] : lines) {
        if (text.front() == '[') {
            if (text.back() != ']') throw SetupError("malformed section header", num);
            section = text.substr(1, text.size() - 2);
            continue;
        }
        if (section != "generators") continue;
        auto eq = text.find('=');
        if (eq == std::string::npos) throw SetupError("expected 'key = value'", num);
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        int dim = 0;
        try {
            dim = std::stoi(value);
        } catch (...) {
            throw SetupError("expected an integer dimension", num);
        }
        if (key == "base") {
            if (base_dim >= 0) throw SetupError("duplicate base declaration", num);
            base_dim = dim;
        } else if (key.rfind("fiber", 0) == 0) {
            std::string names = trim(key.substr(5));
            if (names.empty()) throw SetupError("fiber family needs a name", num);
            std::string fib = names, conj;
            if (auto slash = names.find('/'); slash != std::string::npos) {
                fib = trim(names.substr(0, slash));
                conj = trim(names.substr(slash + 1));
            } else if (names == "xi") {
                conj = "th";
            } else if (names == "e") {
                conj = "eps";
            } else {
                throw SetupError("fiber family '" + names + "' needs explicit names: fiber " +
                                     names + "/<conjugate>",
                                 num);
            }
            families.push_back({fib, conj, dim});
        } else {
            throw SetupError("unknown generators key '" + key + "'", num);
        }
    }
    if (base_dim < 0) base_dim = 0;
    out.table = GeneratorTable::make(base_dim, families);

    auto resolve = [&](const std::string& value, int num) -> Polynomial {
        if (auto it = out.defines.find(value); it != out.defines.end()) return it->second;
        try {
            return parse_expression(value, out.table);
        } catch (const ParseError& e) {
            throw SetupError(e.what(), num);
        }
    };

    // Pass 2: everything else, in file order.
    section.clear();
    std::map<std::string, std::pair<std::string, int>> structure_vals, twist_vals, action_vals;
    for (const auto& [num, text] : lines) {
        if (text.front() == '[') {
            section = text.substr(1, text.size() - 2);
            continue;
        }
        if (section == "generators") continue;
        auto eq = text.find('=');
        if (eq == std::string::npos) throw SetupError("expected 'key = value'", num);
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (section == "define") {
            if (out.defines.count(key)) throw SetupError("duplicate define '" + key + "'", num);
            out.defines.emplace(key, resolve(value, num));
        } else if (section == "structure") {
            structure_vals[key] = {value, num};
        } else if (section == "twist") {
            twist_vals[key] = {value, num};
        } else if (section == "action") {
            action_vals[key] = {value, num};
        } else if (section.empty()) {
            throw SetupError("content before any section", num);
        } else {
            throw SetupError("unknown section '" + section + "'", num);
        }
    }

    if (!structure_vals.empty()) {
        auto get = [&](const char* name) -> Polynomial {
            auto it = structure_vals.find(name);
            if (it == structure_vals.end()) return Polynomial::zero(out.table);
            Polynomial p = resolve(it->second.first, it->second.second);
            structure_vals.erase(it);
            return p;
        };
        Polynomial phi = get("phi"), gamma = get("gamma"), mu = get("mu"), psi = get("psi");
        if (!structure_vals.empty())
            throw SetupError("unknown structure key '" + structure_vals.begin()->first + "'",
                             structure_vals.begin()->second.second);
        try {
            out.structure = Structure(phi, gamma, mu, psi);
        } catch (const std::invalid_argument& e) {
            throw SetupError(e.what(), 0);
        }
    }

    if (!twist_vals.empty()) {
        if (twist_vals.size() != 1)
            throw SetupError("twist section takes exactly one of sigma/tau",
                             twist_vals.begin()->second.second);
        auto& [key, vn] = *twist_vals.begin();
        Polynomial body = resolve(vn.first, vn.second);
        try {
            if (key == "sigma") out.twist = TwistFunction::bivector(body);
            else if (key == "tau") out.twist = TwistFunction::two_form(body);
            else throw SetupError("unknown twist key '" + key + "'", vn.second);
        } catch (const std::invalid_argument& e) {
            throw SetupError(e.what(), vn.second);
        }
    }

    if (!action_vals.empty()) {
        if (out.table->families().size() < 2)
            throw SetupError("action section needs a second fiber family (e/eps)",
                             action_vals.begin()->second.second);
        int dim_g = out.table->families()[1].dim;
        LieConstants c(dim_g), cob(dim_g);
        AltTensor3 psig(dim_g);
        Polynomial psim = Polynomial::zero(out.table), rho = Polynomial::zero(out.table),
                   pi = Polynomial::zero(out.table);
        std::optional<Polynomial> mu_m;
        auto parse_indices = [&](const std::string& key, std::size_t open,
                                 int num) -> std::array<int, 3> {
            if (key.back() != ']') throw SetupError("malformed index triple", num);
            std::string inside = key.substr(open + 1, key.size() - open - 2);
            std::array<int, 3> idx{};
            std::istringstream is(inside);
            char comma;
            if (!(is >> idx[0] >> comma >> idx[1] >> comma >> idx[2]))
                throw SetupError("malformed index triple", num);
            return idx;
        };
        for (auto& [key, vn] : action_vals) {
            const auto& [value, num] = vn;
            auto open = key.find('[');
            std::string head = open == std::string::npos ? key : trim(key.substr(0, open));
            try {
                if (head == "C" || head == "Gamma" || head == "PsiG") {
                    auto idx = parse_indices(key, open, num);
                    Rat q = parse_expression(value, out.table).coefficient(Monomial{});
                    if (head == "C") c.set(idx[0], idx[1], idx[2], q);
                    else if (head == "Gamma") cob.set(idx[0], idx[1], idx[2], q);
                    else psig.set(idx[0], idx[1], idx[2], q);
                } else if (head == "PsiM") {
                    psim = resolve(value, num);
                } else if (head == "rho") {
                    rho = resolve(value, num);
                } else if (head == "pi") {
                    pi = resolve(value, num);
                } else if (head == "muM") {
                    mu_m = resolve(value, num);
                } else {
                    throw SetupError("unknown action key '" + key + "'", num);
                }
            } catch (const std::invalid_argument& e) {
                throw SetupError(e.what(), num);
            } catch (const ParseError& e) {
                throw SetupError(e.what(), num);
            }
        }
        try {
            out.action = ActionSetup::build(out.table->base_dim(), dim_g, c, cob, psig, psim,
                                            rho, pi, mu_m);
        } catch (const std::invalid_argument& e) {
            throw SetupError(e.what(), 0);
        }
    }

    return out;
}

inline SetupFile load_setup_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open setup file: " + path);
    return load_setup(f);
}

}  // namespace bigbracket
