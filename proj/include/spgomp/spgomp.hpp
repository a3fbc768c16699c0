#pragma once

#include "spgomp/bench.hpp"
#include "spgomp/bounds.hpp"
#include "spgomp/csv.hpp"
#include "spgomp/errors.hpp"
#include "spgomp/flops.hpp"
#include "spgomp/jacobi.hpp"
#include "spgomp/matrix.hpp"
#include "spgomp/qr.hpp"
#include "spgomp/recovery.hpp"
#include "spgomp/rip.hpp"
#include "spgomp/rng.hpp"
#include "spgomp/sensing.hpp"
#include "spgomp/signal.hpp"
