// gnt.hpp — umbrella header

#pragma once

#include "gnt/config.hpp"
#include "gnt/correlation.hpp"
#include "gnt/dephasing.hpp"
#include "gnt/errors.hpp"
#include "gnt/fock.hpp"
#include "gnt/geometry.hpp"
#include "gnt/output.hpp"
#include "gnt/quadrature.hpp"
#include "gnt/spectral.hpp"
#include "gnt/strength.hpp"
#include "gnt/svg_plot.hpp"
#include "gnt/threshold.hpp"
#include "gnt/verify.hpp"
#include "gnt/wick.hpp"
