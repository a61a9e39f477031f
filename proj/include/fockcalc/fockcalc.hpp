#pragma once

#include "fockcalc/analysis/decay.hpp"
#include "fockcalc/analysis/garding.hpp"
#include "fockcalc/bargmann.hpp"
#include "fockcalc/core/basis.hpp"
#include "fockcalc/core/expansion.hpp"
#include "fockcalc/core/multi_index.hpp"
#include "fockcalc/core/quadrature.hpp"
#include "fockcalc/hermite.hpp"
#include "fockcalc/symbols/bounds.hpp"
#include "fockcalc/symbols/operator_matrix.hpp"
#include "fockcalc/symbols/quantization.hpp"
#include "fockcalc/symbols/real_symbol.hpp"
#include "fockcalc/symbols/wick_symbol.hpp"
#include "fockcalc/version.hpp"
#include "fockcalc/wick_to_antiwick.hpp"
