#pragma once

#include "rflab/arith.hpp"
#include "rflab/correlation.hpp"
#include "rflab/errors.hpp"
#include "rflab/glaisher.hpp"
#include "rflab/ramanujan.hpp"
#include "rflab/rota.hpp"
#include "rflab/singular.hpp"
#include "rflab/summation.hpp"

namespace rflab {
inline constexpr const char* version = "0.1.0";
}
