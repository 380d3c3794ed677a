#pragma once

#include "quadmod/accessory.hpp"
#include "quadmod/bisect.hpp"
#include "quadmod/duren_pfaltzgraff.hpp"
#include "quadmod/elliptic.hpp"
#include "quadmod/errors.hpp"
#include "quadmod/exterior_map.hpp"
#include "quadmod/golden_tables.hpp"
#include "quadmod/hypergeometric.hpp"
#include "quadmod/quadrature.hpp"
#include "quadmod/starlike.hpp"
#include "quadmod/trapezoid.hpp"
