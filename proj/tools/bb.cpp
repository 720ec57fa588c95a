#include <iostream>
#include <string>
#include <vector>

#include "bigbracket/cli.hpp"

namespace {

const char* usage_text =
    "bb -- exact calculus for structures on V + V*\n"
    "\n"
    "usage: bb <subcommand> --setup <file> [options] [expressions]\n"
    "\n"
    "subcommands:\n"
    "  bracket <a> <b>            big bracket of two expressions\n"
    "  diff <a>                   differential d_S a for the [structure]\n"
    "  check-structure            the five component equations of {S,S} = 0\n"
    "  classify                   proto/Lie-quasi/quasi-Lie/Lie bialgebroid\n"
    "  twist                      components of e^{-t}S for the [twist]\n"
    "  check-poisson [--sigma x]  Maurer-Cartan residual of a bivector\n"
    "  check-presymplectic [--tau x]  dual residual of a 2-form\n"
    "  invert --bivector <sigma>  inverse 2-form with the Id_V check\n"
    "  courant-check [sections]   Loday and metric identities on the double\n"
    "  dirac-check                graph of the [twist] as a Dirac sub-bundle\n"
    "  action-check               conditions (A)-(D) for the [action] setup\n"
    "\n"
    "exit codes: 0 = all checks pass, 1 = nonzero residual, 2 = usage error\n";

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        std::cout << usage_text;
        return args.empty() ? bigbracket::exit_code::usage : bigbracket::exit_code::ok;
    }
    return bigbracket::run_command(args, std::cout);
}
