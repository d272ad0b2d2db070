#pragma once

#include "qmeur/bounds.hpp"
#include "qmeur/correlations.hpp"
#include "qmeur/entropy.hpp"
#include "qmeur/error.hpp"
#include "qmeur/linalg.hpp"
#include "qmeur/measurement.hpp"
#include "qmeur/states.hpp"
