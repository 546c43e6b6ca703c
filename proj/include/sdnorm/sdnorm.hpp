#pragma once

#include "sdnorm/diagram.hpp"
#include "sdnorm/edge_graph.hpp"
#include "sdnorm/embedding.hpp"
#include "sdnorm/error.hpp"
#include "sdnorm/normalizer.hpp"
#include "sdnorm/planar_map.hpp"
#include "sdnorm/render.hpp"
#include "sdnorm/serialize.hpp"
#include "sdnorm/term.hpp"
#include "sdnorm/topology.hpp"
