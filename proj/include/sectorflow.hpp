#pragma once

// Umbrella header for the sector-flow toolkit.  The command-line layer
// (sectorflow/cli.hpp) is excluded because it pulls in the vendored
// CLI11/json headers; include it explicitly where needed.

#include "sectorflow/errors.hpp"
#include "sectorflow/quadrature.hpp"
#include "sectorflow/elliptic.hpp"
#include "sectorflow/cubic.hpp"
#include "sectorflow/integrals.hpp"
#include "sectorflow/solve.hpp"
#include "sectorflow/profile.hpp"
#include "sectorflow/verify.hpp"
