#pragma once

// Convenience header pulling in the whole library.

#include "tdw/errors.hpp"
#include "tdw/rational.hpp"
#include "tdw/polynomial.hpp"
#include "tdw/parser.hpp"
#include "tdw/groebner.hpp"
#include "tdw/linalg.hpp"
#include "tdw/lattice.hpp"
#include "tdw/forms.hpp"
#include "tdw/cohomology.hpp"
#include "tdw/checks.hpp"
#include "tdw/report.hpp"
#include "tdw/cli.hpp"
