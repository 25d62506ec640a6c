#ifndef KTRELAX_KTRELAX_HPP
#define KTRELAX_KTRELAX_HPP

#include "ktrelax/core.hpp"
#include "ktrelax/models.hpp"
#include "ktrelax/riemann.hpp"
#include "ktrelax/reference.hpp"
#include "ktrelax/reconstruct.hpp"
#include "ktrelax/schemes.hpp"
#include "ktrelax/timeint.hpp"
#include "ktrelax/bench.hpp"
#include "ktrelax/csv.hpp"

#endif  // KTRELAX_KTRELAX_HPP
