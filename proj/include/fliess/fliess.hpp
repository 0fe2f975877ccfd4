#ifndef FLIESS_FLIESS_HPP
#define FLIESS_FLIESS_HPP

// Umbrella header for the whole library.

#include "fliess/abel.hpp"
#include "fliess/cpoly.hpp"
#include "fliess/errors.hpp"
#include "fliess/faa_di_bruno.hpp"
#include "fliess/hopf.hpp"
#include "fliess/json_io.hpp"
#include "fliess/nc_series.hpp"
#include "fliess/numeric.hpp"
#include "fliess/rational.hpp"
#include "fliess/signal.hpp"
#include "fliess/toeplitz.hpp"
#include "fliess/upoly.hpp"
#include "fliess/word.hpp"

#endif
