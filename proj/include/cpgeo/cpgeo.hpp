#pragma once

// Umbrella header: quantum probability computed from the Riemannian
// geometry of complex projective space, with Hilbert-space operator
// oracles for cross-checking. (The CLI front end lives in cpgeo/cli.hpp
// and is not pulled in here.)

#include "cpgeo/core.hpp"
#include "cpgeo/geodesic.hpp"
#include "cpgeo/harness.hpp"
#include "cpgeo/hilbert.hpp"
#include "cpgeo/probability.hpp"
#include "cpgeo/projective.hpp"
#include "cpgeo/subspace.hpp"
