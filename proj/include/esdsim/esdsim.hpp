#pragma once

// Umbrella header for the whole library.

#include "matcore.hpp"        // IWYU pragma: export
#include "states.hpp"         // IWYU pragma: export
#include "channels.hpp"       // IWYU pragma: export
#include "entanglement.hpp"   // IWYU pragma: export
#include "esd.hpp"            // IWYU pragma: export
#include "scan.hpp"           // IWYU pragma: export
