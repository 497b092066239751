#pragma once

#include "lfed/bipoly.hpp"
#include "lfed/check.hpp"
#include "lfed/echelon.hpp"
#include "lfed/endo.hpp"
#include "lfed/error.hpp"
#include "lfed/field.hpp"
#include "lfed/newton.hpp"
#include "lfed/parse.hpp"
#include "lfed/quotient.hpp"
#include "lfed/random.hpp"
#include "lfed/subspace.hpp"
