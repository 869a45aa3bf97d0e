#pragma once

#include "error.hpp"
#include "quadrature.hpp"
#include "spectral_model.hpp"
#include "response.hpp"
#include "scattering.hpp"
#include "medium.hpp"
#include "screen_verifier.hpp"
#include "catalog_io.hpp"
