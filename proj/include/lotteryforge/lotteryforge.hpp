#pragma once

// Umbrella header.

#include "lotteryforge/common.hpp"
#include "lotteryforge/construct.hpp"
#include "lotteryforge/io.hpp"
#include "lotteryforge/modular.hpp"
#include "lotteryforge/partite_layout.hpp"
#include "lotteryforge/set_system.hpp"
#include "lotteryforge/solve.hpp"
#include "lotteryforge/verify.hpp"
