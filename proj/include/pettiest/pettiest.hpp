#pragma once

#include "pettiest/boxes.hpp"
#include "pettiest/core_stats.hpp"
#include "pettiest/error.hpp"
#include "pettiest/fastprim.hpp"
#include "pettiest/matrix.hpp"
#include "pettiest/prim.hpp"
#include "pettiest/report.hpp"
#include "pettiest/sampling.hpp"
#include "pettiest/simulation.hpp"
#include "pettiest/svg.hpp"

namespace pettiest {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pettiest
