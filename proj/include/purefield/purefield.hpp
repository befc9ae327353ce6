#pragma once

#include "purefield/arith.hpp"
#include "purefield/error.hpp"
#include "purefield/integer.hpp"
#include "purefield/newton_polygon.hpp"
#include "purefield/polynomial.hpp"
#include "purefield/pure_field.hpp"
#include "purefield/verify.hpp"
