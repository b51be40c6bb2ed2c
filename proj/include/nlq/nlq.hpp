#pragma once

/// Umbrella header.

#include "nlq/rational.hpp"    // IWYU pragma: export
#include "nlq/qseries.hpp"     // IWYU pragma: export
#include "nlq/modforms.hpp"    // IWYU pragma: export
#include "nlq/lattice.hpp"     // IWYU pragma: export
#include "nlq/root_system.hpp" // IWYU pragma: export
#include "nlq/surface.hpp"     // IWYU pragma: export
#include "nlq/pipeline.hpp"    // IWYU pragma: export
