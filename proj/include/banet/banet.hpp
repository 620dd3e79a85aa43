#pragma once

#include "circulant.hpp"
#include "configuration.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "io.hpp"
#include "network.hpp"
#include "parallel.hpp"
#include "sensitivity.hpp"
#include "truth_table.hpp"
