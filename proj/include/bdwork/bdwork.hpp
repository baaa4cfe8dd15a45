#pragma once

#include "bdwork/accuracy.hpp"
#include "bdwork/bd_calculus.hpp"
#include "bdwork/errors.hpp"
#include "bdwork/format.hpp"
#include "bdwork/interpolators.hpp"
#include "bdwork/rd_model.hpp"
#include "bdwork/report.hpp"
#include "bdwork/svg_plot.hpp"
