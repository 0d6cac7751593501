#pragma once

#include "covkit/amz.hpp"
#include "covkit/autodiff.hpp"
#include "covkit/catalog.hpp"
#include "covkit/coderivative.hpp"
#include "covkit/covering.hpp"
#include "covkit/dual.hpp"
#include "covkit/errors.hpp"
#include "covkit/expr.hpp"
#include "covkit/linalg.hpp"
#include "covkit/mapping.hpp"
#include "covkit/sampling.hpp"
