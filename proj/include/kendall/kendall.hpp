#pragma once

#include "kendall/analysis.hpp"
#include "kendall/infotheory.hpp"
#include "kendall/integrate.hpp"
#include "kendall/ordinal.hpp"
#include "kendall/pair_scheme.hpp"
#include "kendall/random.hpp"
#include "kendall/sequence.hpp"
#include "kendall/simulate.hpp"
#include "kendall/transform.hpp"
