/// Umbrella header.

#ifndef ATTAINKIT_ATTAINKIT_HPP
#define ATTAINKIT_ATTAINKIT_HPP

#include "attainkit/core.hpp"
#include "attainkit/eaf.hpp"
#include "attainkit/metrics.hpp"
#include "attainkit/compare.hpp"
#include "attainkit/io.hpp"
#include "attainkit/svg.hpp"

#endif  // ATTAINKIT_ATTAINKIT_HPP
