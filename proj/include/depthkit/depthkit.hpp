#pragma once

#include "depthkit/datagen.hpp"
#include "depthkit/depth_approx.hpp"
#include "depthkit/depth_enum.hpp"
#include "depthkit/depth_exact.hpp"
#include "depthkit/depth_types.hpp"
#include "depthkit/errors.hpp"
#include "depthkit/feasibility.hpp"
#include "depthkit/gale.hpp"
#include "depthkit/geometry.hpp"
#include "depthkit/io.hpp"
#include "depthkit/predicates.hpp"
#include "depthkit/projection.hpp"
#include "depthkit/rng.hpp"
#include "depthkit/witness.hpp"
