#pragma once

#include "wgcalc/rational.hpp"
#include "wgcalc/symgroup.hpp"
#include "wgcalc/matrix.hpp"
#include "wgcalc/charalg.hpp"
#include "wgcalc/weingarten.hpp"
#include "wgcalc/moments.hpp"
#include "wgcalc/philox.hpp"
#include "wgcalc/montecarlo.hpp"
#include "wgcalc/json_io.hpp"
