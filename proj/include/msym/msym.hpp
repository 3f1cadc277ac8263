#pragma once

#include "msym/arith.hpp"
#include "msym/cubic.hpp"
#include "msym/eisenstein.hpp"
#include "msym/errors.hpp"
#include "msym/magnus.hpp"
#include "msym/milnor.hpp"
#include "msym/redei.hpp"
#include "msym/symbol.hpp"
