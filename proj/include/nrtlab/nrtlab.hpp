#pragma once

#include "nrtlab/analysis.hpp"
#include "nrtlab/errors.hpp"
#include "nrtlab/experiments.hpp"
#include "nrtlab/geometry.hpp"
#include "nrtlab/harmonic.hpp"
#include "nrtlab/indicator.hpp"
#include "nrtlab/io.hpp"
#include "nrtlab/svg.hpp"
