#pragma once

// Umbrella header: the full graded Poisson-superalgebra engine, its
// structure/twisting/duality/Courant/action layers, and the text frontend.

#include "bigbracket/types.hpp"
#include "bigbracket/generator_table.hpp"
#include "bigbracket/polynomial.hpp"
#include "bigbracket/bracket.hpp"
#include "bigbracket/structure.hpp"
#include "bigbracket/twisting.hpp"
#include "bigbracket/duality.hpp"
#include "bigbracket/courant.hpp"
#include "bigbracket/action.hpp"
#include "bigbracket/parse.hpp"
#include "bigbracket/setup.hpp"
#include "bigbracket/cli.hpp"
