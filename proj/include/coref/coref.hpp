// Umbrella header: the whole toolkit.
#pragma once

#include "coref/assignment.hpp"
#include "coref/conll.hpp"
#include "coref/errors.hpp"
#include "coref/experiments.hpp"
#include "coref/features.hpp"
#include "coref/lexicon.hpp"
#include "coref/mention.hpp"
#include "coref/metrics.hpp"
#include "coref/parallel.hpp"
#include "coref/sieve.hpp"
#include "coref/stats.hpp"
#include "coref/tree.hpp"
#include "coref/types.hpp"
#include "coref/util.hpp"
