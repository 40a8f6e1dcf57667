#pragma once

#include "hyperlog/rational.hpp"
#include "hyperlog/criterion.hpp"
#include "hyperlog/bigreal.hpp"
#include "hyperlog/special.hpp"
#include "hyperlog/series.hpp"
#include "hyperlog/quadrature.hpp"
#include "hyperlog/hyper.hpp"
#include "hyperlog/pslq.hpp"
#include "hyperlog/expression.hpp"
#include "hyperlog/basis.hpp"
