#pragma once

#include "phasedist/analytic.hpp"
#include "phasedist/angles.hpp"
#include "phasedist/error.hpp"
#include "phasedist/experiments.hpp"
#include "phasedist/fft.hpp"
#include "phasedist/histogram.hpp"
#include "phasedist/quantizer.hpp"
#include "phasedist/raster.hpp"
#include "phasedist/sidelobe.hpp"
#include "phasedist/signal.hpp"
#include "phasedist/stft.hpp"
#include "phasedist/wav.hpp"
#include "phasedist/window.hpp"
