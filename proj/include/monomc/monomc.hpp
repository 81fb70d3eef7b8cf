#pragma once

#include "state_set.hpp"
#include "formulas.hpp"
#include "cover.hpp"
#include "parser.hpp"
#include "monotone.hpp"
#include "systems.hpp"
#include "abstract_ts.hpp"
#include "inference.hpp"
#include "benchmarks.hpp"
#include "io.hpp"
