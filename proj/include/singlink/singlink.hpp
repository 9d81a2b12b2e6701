#pragma once

#include "singlink/arith.hpp"
#include "singlink/candidate.hpp"
#include "singlink/catalog.hpp"
#include "singlink/divisor_ring.hpp"
#include "singlink/factorize.hpp"
#include "singlink/fano.hpp"
#include "singlink/invariants.hpp"
#include "singlink/report.hpp"
#include "singlink/search.hpp"
