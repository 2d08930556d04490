#pragma once

#include "psdme/bands.hpp"
#include "psdme/berk_jones.hpp"
#include "psdme/calibrator.hpp"
#include "psdme/dataset.hpp"
#include "psdme/dataset_io.hpp"
#include "psdme/empirical_cdf.hpp"
#include "psdme/fcr.hpp"
#include "psdme/guaranteed_kpi.hpp"
#include "psdme/lambert_w.hpp"
#include "psdme/pipeline.hpp"
#include "psdme/rng.hpp"
#include "psdme/selection.hpp"
#include "psdme/split.hpp"
#include "psdme/synth.hpp"
#include "psdme/true_cdf.hpp"
#include "psdme/width_comparison.hpp"
