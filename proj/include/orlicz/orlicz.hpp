#pragma once

#include "conjugacy.hpp"
#include "empirics.hpp"
#include "errors.hpp"
#include "extended_real.hpp"
#include "io.hpp"
#include "legendre.hpp"
#include "measures.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "phi.hpp"
#include "psi.hpp"
#include "rng.hpp"
#include "scenarios.hpp"
#include "tail_bounds.hpp"
#include "tensor.hpp"
