#pragma once

#include "relage/exprlang.hpp"
#include "relage/numerics.hpp"
#include "relage/distcore.hpp"
#include "relage/transform.hpp"
#include "relage/shape.hpp"
#include "relage/orders.hpp"
#include "relage/ageing.hpp"
#include "relage/montecarlo.hpp"
#include "relage/report.hpp"
