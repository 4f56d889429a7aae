#pragma once

#include "expocon/ansatz.hpp"
#include "expocon/conditions.hpp"
#include "expocon/error.hpp"
#include "expocon/expr.hpp"
#include "expocon/json_io.hpp"
#include "expocon/linalg.hpp"
#include "expocon/magnus.hpp"
#include "expocon/mpcomplex.hpp"
#include "expocon/parser.hpp"
#include "expocon/poly.hpp"
#include "expocon/rational.hpp"
#include "expocon/ring.hpp"
#include "expocon/series.hpp"
#include "expocon/solver.hpp"
#include "expocon/wcoeff.hpp"
#include "expocon/words.hpp"
