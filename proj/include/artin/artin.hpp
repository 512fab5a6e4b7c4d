#pragma once

#include "artin/binomial.hpp"
#include "artin/bounds.hpp"
#include "artin/coeff.hpp"
#include "artin/decouple.hpp"
#include "artin/error.hpp"
#include "artin/experiments.hpp"
#include "artin/format.hpp"
#include "artin/multipoly.hpp"
#include "artin/order.hpp"
#include "artin/regularize.hpp"
#include "artin/roots.hpp"
#include "artin/series.hpp"
#include "artin/weierstrass.hpp"
