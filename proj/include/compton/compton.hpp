#pragma once

#include "compton/amplitudes.hpp"
#include "compton/calibration.hpp"
#include "compton/conventions.hpp"
#include "compton/dirac.hpp"
#include "compton/entanglement.hpp"
#include "compton/error.hpp"
#include "compton/kinematics.hpp"
#include "compton/polarization.hpp"
#include "compton/report.hpp"
#include "compton/sampling.hpp"
#include "compton/scan.hpp"
#include "compton/tensor.hpp"
