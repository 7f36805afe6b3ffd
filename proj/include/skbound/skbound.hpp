#ifndef SKBOUND_SKBOUND_HPP
#define SKBOUND_SKBOUND_HPP

// Umbrella header for the secret-key bound toolkit.

#include "skbound/constructions.hpp"
#include "skbound/envelope.hpp"
#include "skbound/errors.hpp"
#include "skbound/function_table.hpp"
#include "skbound/grid.hpp"
#include "skbound/io.hpp"
#include "skbound/lp.hpp"
#include "skbound/prob.hpp"
#include "skbound/report.hpp"
#include "skbound/search.hpp"
#include "skbound/suites.hpp"
#include "skbound/tables.hpp"
#include "skbound/verifiers.hpp"

#endif
