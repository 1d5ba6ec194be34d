#ifndef TSPKIT_TSPKIT_HPP
#define TSPKIT_TSPKIT_HPP

#include "tspkit/errors.hpp"
#include "tspkit/graph.hpp"
#include "tspkit/io.hpp"
#include "tspkit/lp2ecss.hpp"
#include "tspkit/matching.hpp"
#include "tspkit/mincut.hpp"
#include "tspkit/oracles.hpp"
#include "tspkit/pipeline.hpp"
#include "tspkit/sparsify.hpp"
#include "tspkit/tjoin.hpp"

#endif
