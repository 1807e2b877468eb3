#pragma once

#include "fuzzy/error.hpp"
#include "fuzzy/core.hpp"
#include "fuzzy/body2d.hpp"
#include "fuzzy/metrics.hpp"
#include "fuzzy/family.hpp"
#include "fuzzy/counterexample.hpp"
#include "fuzzy/io.hpp"
