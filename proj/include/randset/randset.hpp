#pragma once

#include "randset/convex_body.hpp"
#include "randset/distance.hpp"
#include "randset/errors.hpp"
#include "randset/experiment.hpp"
#include "randset/experiments.hpp"
#include "randset/face.hpp"
#include "randset/hull.hpp"
#include "randset/mean_process.hpp"
#include "randset/min_norm_point.hpp"
#include "randset/random_set.hpp"
#include "randset/rng.hpp"
#include "randset/shapley_folkman.hpp"
#include "randset/stats.hpp"
#include "randset/vector.hpp"
