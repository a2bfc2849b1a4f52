#pragma once

#include <cstdint>

#include "resolvent/instance.hpp"

namespace resolvent {

/// Seeded generators of valid instances for property tests.
///
/// `random_linear_instance`: g = the variables, A has random linear entries,
/// f = A g (quadrics). `random_power_instance`: g mixes squares of variables
/// with linear forms, A entries are random forms of the matching degree.
/// Both retry internally until validate_instance accepts the draw, so the
/// returned RawInstance always validates.
RawInstance random_linear_instance(std::uint64_t seed);
RawInstance random_power_instance(std::uint64_t seed);

}  // namespace resolvent
