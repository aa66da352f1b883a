#pragma once

#include "cnbc/coloring.hpp"
#include "cnbc/coloring_io.hpp"
#include "cnbc/constructors.hpp"
#include "cnbc/diagnostics.hpp"
#include "cnbc/errors.hpp"
#include "cnbc/graph.hpp"
#include "cnbc/graph_io.hpp"
#include "cnbc/reduction.hpp"
#include "cnbc/serialize.hpp"
#include "cnbc/solver.hpp"
#include "cnbc/transfer.hpp"
