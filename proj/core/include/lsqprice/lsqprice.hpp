#pragma once

#include "lsqprice/core.hpp"
#include "lsqprice/error.hpp"
#include "lsqprice/lsq.hpp"
#include "lsqprice/portfolio.hpp"
#include "lsqprice/pricer.hpp"
#include "lsqprice/simulate.hpp"
