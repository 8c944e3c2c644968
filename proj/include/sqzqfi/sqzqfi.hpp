#ifndef SQZQFI_SQZQFI_HPP
#define SQZQFI_SQZQFI_HPP

#include "sqzqfi/config.hpp"
#include "sqzqfi/csv.hpp"
#include "sqzqfi/dynamics.hpp"
#include "sqzqfi/metrology.hpp"
#include "sqzqfi/qubit_state.hpp"
#include "sqzqfi/reservoir.hpp"
#include "sqzqfi/sweep.hpp"
#include "sqzqfi/verify.hpp"

#endif
