#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ocmc {

// Counter values and bound parameters outgrow 64 bits quickly
// (thresholds contain LCM(1..k)^lud factors), so everything that can
// reach user-supplied or derived magnitudes is kept exact.
using BigInt = boost::multiprecision::cpp_int;

}  // namespace ocmc
