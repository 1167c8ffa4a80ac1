#pragma once

#include "arith.hpp"
#include "congruence.hpp"
#include "cyclo_product.hpp"
#include "cyclotomic.hpp"
#include "hypergeom.hpp"
#include "identity.hpp"
#include "poly.hpp"
#include "qobjects.hpp"
#include "ratfunc.hpp"
#include "sweep.hpp"
