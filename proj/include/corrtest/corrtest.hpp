#pragma once

#include "corrtest/errors.hpp"
#include "corrtest/graph.hpp"
#include "corrtest/rng.hpp"
#include "corrtest/io.hpp"
#include "corrtest/sampler.hpp"
#include "corrtest/union_find.hpp"
#include "corrtest/orbits.hpp"
#include "corrtest/detect.hpp"
#include "corrtest/parallel.hpp"
#include "corrtest/moments.hpp"
#include "corrtest/enumerate.hpp"
#include "corrtest/experiments.hpp"
