#pragma once

// Umbrella header.

#include "recseq/c2finite.hpp"
#include "recseq/cfinite.hpp"
#include "recseq/exponent_lattice.hpp"
#include "recseq/factor.hpp"
#include "recseq/interval.hpp"
#include "recseq/json_io.hpp"
#include "recseq/kernel.hpp"
#include "recseq/lattice.hpp"
#include "recseq/matrix.hpp"
#include "recseq/number_field.hpp"
#include "recseq/poly.hpp"
#include "recseq/rational.hpp"
#include "recseq/roots.hpp"
