#pragma once

#include <iostream>
#include <string>
#include <vector>

#include "bigbracket/setup.hpp"

namespace bigbracket {

/// Exit codes: 0 all checks pass, 1 a residual is nonzero (mathematical
/// verdict), 2 usage/parse/validation error.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int residual = 1;
inline constexpr int usage = 2;
}  // namespace exit_code

namespace detail {

struct CliArgs {
    std::string command;
    std::string setup_path;
    std::map<std::string, std::string> options;  // --name value
    std::vector<std::string> positional;
};

inline CliArgs parse_cli(const std::vector<std::string>& argv) {
    CliArgs args;
    if (argv.empty()) throw std::invalid_argument("missing subcommand");
    args.command = argv[0];
    for (std::size_t i = 1; i < argv.size(); ++i) {
        const std::string& a = argv[i];
        if (a.rfind("--", 0) == 0) {
            std::string name = a.substr(2);
            if (i + 1 >= argv.size()) throw std::invalid_argument("option --" + name + " needs a value");
            args.options[name] = argv[++i];
        } else {
            args.positional.push_back(a);
        }
    }
    if (auto it = args.options.find("setup"); it != args.options.end())
        args.setup_path = it->second;
    return args;
}

inline Polynomial resolve_arg(const SetupFile& s, const std::string& text) {
    if (auto it = s.defines.find(text); it != s.defines.end()) return it->second;
    return parse_expression(text, s.table);
}

inline const Structure& need_structure(const SetupFile& s) {
    if (!s.structure) throw std::invalid_argument("setup file has no [structure] section");
    return *s.structure;
}

inline std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

}  // namespace detail

/// Runs one subcommand and writes the report (one `label: value` line per
/// result) to `out`. Reports are byte-deterministic for identical inputs.
inline int run_command(const std::vector<std::string>& argv, std::ostream& out) {
    using namespace detail;
    try {
        CliArgs args = parse_cli(argv);
        const std::string& cmd = args.command;
        out << "orientation: " << (orientation_sign() > 0 ? "+1" : "-1") << "\n";

        if (cmd == "bracket") {
            if (args.setup_path.empty() || args.positional.size() != 2)
                throw std::invalid_argument("usage: bracket --setup <file> <exprA> <exprB>");
            SetupFile s = load_setup_file(args.setup_path);
            Polynomial a = resolve_arg(s, args.positional[0]);
            Polynomial b = resolve_arg(s, args.positional[1]);
            out << "bracket: " << format_poly(big_bracket(a, b)) << "\n";
            return exit_code::ok;
        }

        if (cmd == "diff") {
            if (args.setup_path.empty() || args.positional.size() != 1)
                throw std::invalid_argument("usage: diff --setup <file> <expr>");
            SetupFile s = load_setup_file(args.setup_path);
            const Structure& st = need_structure(s);
            Polynomial a = resolve_arg(s, args.positional[0]);
            out << "dS: " << format_poly(differential(st, a)) << "\n";
            return exit_code::ok;
        }

        if (cmd == "check-structure") {
            if (args.setup_path.empty())
                throw std::invalid_argument("usage: check-structure --setup <file>");
            SetupFile s = load_setup_file(args.setup_path);
            const Structure& st = need_structure(s);
            StructureResiduals r = structure_residuals(st);
            const char* labels[5] = {"1/2{mu,mu}+{gamma,psi}", "{mu,gamma}+{phi,psi}",
                                     "1/2{gamma,gamma}+{mu,phi}", "{mu,psi}", "{gamma,phi}"};
            for (int i = 0; i < 5; ++i)
                out << labels[i] << ": " << format_poly(r.eq[i]) << "\n";
            bool ok = r.all_zero();
            out << "structure: " << verdict(ok) << "\n";
            return ok ? exit_code::ok : exit_code::residual;
        }

        if (cmd == "classify") {
            if (args.setup_path.empty())
                throw std::invalid_argument("usage: classify --setup <file>");
            SetupFile s = load_setup_file(args.setup_path);
            const Structure& st = need_structure(s);
            if (!is_structure(st)) {
                out << "classify: UNDEFINED ({S,S} != 0)\n";
                return exit_code::residual;
            }
            out << "classify: " << to_string(classify(st)) << "\n";
            return exit_code::ok;
        }

        if (cmd == "twist") {
            if (args.setup_path.empty())
                throw std::invalid_argument("usage: twist --setup <file> (with [twist] section)");
            SetupFile s = load_setup_file(args.setup_path);
            const Structure& st = need_structure(s);
            if (!s.twist) throw std::invalid_argument("setup file has no [twist] section");
            Structure tw = twist_components(st, *s.twist);
            out << "phi_t: " << format_poly(tw.phi()) << "\n";
            out << "gamma_t: " << format_poly(tw.gamma()) << "\n";
            out << "mu_t: " << format_poly(tw.mu()) << "\n";
            out << "psi_t: " << format_poly(tw.psi()) << "\n";
            bool split_ok = tw.total() == exp_adjoint(-s.twist->body, st.total());
            out << "split-check: " << verdict(split_ok) << "\n";
            return split_ok ? exit_code::ok : exit_code::residual;
        }

        if (cmd == "check-poisson" || cmd == "check-presymplectic") {
            bool poisson = cmd == "check-poisson";
            if (args.setup_path.empty())
                throw std::invalid_argument("usage: " + cmd + " --setup <file> [--" +
                                            (poisson ? std::string("sigma") : std::string("tau")) +
                                            " <name|expr>]");
            SetupFile s = load_setup_file(args.setup_path);
            const Structure& st = need_structure(s);
            TwistFunction t = [&] {
                std::string key = poisson ? "sigma" : "tau";
                if (auto it = args.options.find(key); it != args.options.end()) {
                    Polynomial body = resolve_arg(s, it->second);
                    return poisson ? TwistFunction::bivector(body)
                                   : TwistFunction::two_form(body);
                }
                if (s.twist && (poisson ? s.twist->kind == TwistKind::bivector
                                        : s.twist->kind == TwistKind::two_form))
                    return *s.twist;
                throw std::invalid_argument("no twist function given (flag or [twist] section)");
            }();
            Polynomial res = poisson ? poisson_residual(st, t) : presymplectic_residual(st, t);
            out << "MC residual: " << format_poly(res) << "\n";
            for (const auto& rep : applicable_special_cases(st, t))
                out << rep.label << ": " << format_poly(rep.reduced) << "\n";
            return res.is_zero() ? exit_code::ok : exit_code::residual;
        }

        if (cmd == "invert") {
            if (args.setup_path.empty() || !args.options.count("bivector"))
                throw std::invalid_argument("usage: invert --setup <file> --bivector <name|expr>");
            SetupFile s = load_setup_file(args.setup_path);
            TwistFunction sigma = TwistFunction::bivector(resolve_arg(s, args.options.at("bivector")));
            InversePair pair = invert_bivector(sigma);
            out << "tau: " << format_poly(pair.tau.body) << "\n";
            bool ok = big_bracket(pair.sigma.body, pair.tau.body) == identity_section(s.table);
            out << "Id check: " << verdict(ok) << "\n";
            return ok ? exit_code::ok : exit_code::residual;
        }

        if (cmd == "courant-check") {
            if (args.setup_path.empty())
                throw std::invalid_argument("usage: courant-check --setup <file> [sections...]");
            SetupFile s = load_setup_file(args.setup_path);
            const Structure& st = need_structure(s);
            std::vector<Polynomial> sections = basis_sections(s.table);
            for (const auto& p : args.positional) sections.push_back(resolve_arg(s, p));
            CourantReport rep = courant_axioms_check(st, sections);
            std::size_t loday = 0, m1 = 0, m2 = 0;
            for (const auto& v : rep.violations) {
                if (v.which == "Loday") ++loday;
                else if (v.which == "metric-1") ++m1;
                else ++m2;
            }
            out << "triples: " << rep.triples_checked << "\n";
            out << "Loday: " << verdict(loday == 0) << "\n";
            out << "metric-1: " << verdict(m1 == 0) << "\n";
            out << "metric-2: " << verdict(m2 == 0) << "\n";
            return rep.ok() ? exit_code::ok : exit_code::residual;
        }

        if (cmd == "dirac-check") {
            if (args.setup_path.empty())
                throw std::invalid_argument("usage: dirac-check --setup <file> (with [twist])");
            SetupFile s = load_setup_file(args.setup_path);
            const Structure& st = need_structure(s);
            if (!s.twist) throw std::invalid_argument("setup file has no [twist] section");
            DiracReport rep = dirac_graph_check(st, *s.twist);
            out << "isotropy: " << verdict(rep.isotropic) << "\n";
            out << "closure: " << verdict(rep.closed) << "\n";
            out << "residual: " << format_poly(rep.residual) << "\n";
            out << "dirac: " << verdict(rep.dirac) << "\n";
            return rep.dirac ? exit_code::ok : exit_code::residual;
        }

        if (cmd == "action-check") {
            if (args.setup_path.empty())
                throw std::invalid_argument("usage: action-check --setup <file> (with [action])");
            SetupFile s = load_setup_file(args.setup_path);
            if (!s.action) throw std::invalid_argument("setup file has no [action] section");
            const ActionSetup& a = *s.action;
            ConditionDecomposition dec = condition_decomposition(a);
            out << "(A): " << format_poly(dec.conditions.a) << "\n";
            out << "(B): " << format_poly(dec.conditions.b) << "\n";
            out << "(C): " << format_poly(dec.conditions.c) << "\n";
            out << "(D): " << format_poly(dec.conditions.d) << "\n";
            out << "MC: " << format_poly(dec.general) << "\n";
            out << "decomposition: " << verdict(dec.exact) << "\n";
            bool all = dec.conditions.all_zero();
            if (all) {
                Polynomial g = gamma_sigma(a);
                out << "gamma-sigma-jacobi: " << format_poly(big_bracket(g, g)) << "\n";
            }
            out << "conditions: " << verdict(all) << "\n";
            return all && dec.exact ? exit_code::ok : exit_code::residual;
        }

        throw std::invalid_argument("unknown subcommand '" + cmd + "'");
    } catch (const std::invalid_argument& e) {
        out << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const ParseError& e) {
        out << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const SetupError& e) {
        out << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
        return exit_code::usage;
    }
}

}  // namespace bigbracket
