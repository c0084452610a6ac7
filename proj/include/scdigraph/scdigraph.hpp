#pragma once

#include "asymptotic_counts.hpp"
#include "digraph.hpp"
#include "error.hpp"
#include "exact_oracles.hpp"
#include "parallel.hpp"
#include "random_generation.hpp"
#include "rng.hpp"
#include "statistics.hpp"
#include "structure.hpp"
#include "truncated_poisson.hpp"
