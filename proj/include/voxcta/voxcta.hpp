#pragma once

// Umbrella header.

#include "voxcta/correct.hpp"
#include "voxcta/cta.hpp"
#include "voxcta/cubical.hpp"
#include "voxcta/errors.hpp"
#include "voxcta/grid.hpp"
#include "voxcta/io.hpp"
#include "voxcta/measure.hpp"
#include "voxcta/mmn.hpp"
#include "voxcta/morphology.hpp"
#include "voxcta/rational.hpp"
#include "voxcta/report_json.hpp"
#include "voxcta/slice.hpp"
