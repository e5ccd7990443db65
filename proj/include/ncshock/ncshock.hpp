#ifndef NCSHOCK_NCSHOCK_HPP_
#define NCSHOCK_NCSHOCK_HPP_

#include "ncshock/model.hpp"
#include "ncshock/riemann.hpp"
#include "ncshock/scheme.hpp"
#include "ncshock/reference.hpp"
#include "ncshock/harness/config.hpp"
#include "ncshock/harness/run.hpp"
#include "ncshock/harness/analysis.hpp"
#include "ncshock/harness/histogram.hpp"

#endif  // NCSHOCK_NCSHOCK_HPP_
