#pragma once

// Umbrella header: the whole library.

#include "kcam/engine.hpp"
#include "kcam/error.hpp"
#include "kcam/expr.hpp"
#include "kcam/formula.hpp"
#include "kcam/literal.hpp"
#include "kcam/model.hpp"
#include "kcam/model_io.hpp"
#include "kcam/parser.hpp"
#include "kcam/principles.hpp"
#include "kcam/validate.hpp"
