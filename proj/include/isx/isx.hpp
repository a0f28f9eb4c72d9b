#pragma once

// Umbrella header: exact linear algebra over the rationals, graded chain
// machinery, tube and ambient validation, boundary approximations with
// their obstruction theory, intersection models, duality pairings,
// signatures, instance generation, and JSON serialization.

#include "isx/rational.hpp"
#include "isx/matrix.hpp"
#include "isx/subspace.hpp"
#include "isx/signature.hpp"
#include "isx/graded.hpp"
#include "isx/chain.hpp"
#include "isx/tube.hpp"
#include "isx/approximation.hpp"
#include "isx/global.hpp"
#include "isx/sections.hpp"
#include "isx/pairing.hpp"
#include "isx/generator.hpp"
#include "isx/fixtures.hpp"
#include "isx/json_io.hpp"
