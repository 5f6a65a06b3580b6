#pragma once

#include "normlab/catalog.hpp"
#include "normlab/core.hpp"
#include "normlab/derivatives.hpp"
#include "normlab/json_io.hpp"
#include "normlab/orthogonality.hpp"
#include "normlab/polytope.hpp"
#include "normlab/sampling.hpp"
#include "normlab/space.hpp"
#include "normlab/support.hpp"
#include "normlab/vec.hpp"
#include "normlab/verify.hpp"
