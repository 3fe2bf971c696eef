#pragma once

#include "grnet/csv.hpp"
#include "grnet/dot.hpp"
#include "grnet/errors.hpp"
#include "grnet/expression.hpp"
#include "grnet/json_io.hpp"
#include "grnet/learners.hpp"
#include "grnet/network.hpp"
#include "grnet/numfmt.hpp"
#include "grnet/regression.hpp"
#include "grnet/report.hpp"
#include "grnet/selection.hpp"
